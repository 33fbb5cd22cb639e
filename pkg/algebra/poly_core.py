"""
Exact sparse multivariate polynomials over the rationals and prime fields.

Everything above this module (Gröbner bases, ideal constructions, residual
intersections, invariants) works on the types defined here:

- ``RationalField`` / ``PrimeField``: coefficient domains
- ``RingContext``: ordered variable names plus a domain
- ``Monomial``: exponent tuple, with helper functions in the style of
  sympy's groebnertools (``monomial_mul``, ``monomial_lcm``, ...)
- ``MonomialOrder``: lex, grevlex or a two-block elimination order
- ``Polynomial``: immutable term map ``{Monomial: nonzero coefficient}``

Text I/O follows a small grammar: terms joined by ``+``/``-``, each term a
``*``-separated product of coefficients (``3`` or ``3/2``), variables with
optional ``^`` powers and parenthesized sub-expressions.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import isprime

from algebra.errors import InputError, ParseError, RingMismatchError

Monomial = Tuple[int, ...]
Coefficient = Union[int, Fraction]
Scalar = Union[int, Fraction, str]


# ============================================================================
# Coefficient domains
# ============================================================================

@dataclass(frozen=True)
class RationalField:
    """The field ℚ with ``fractions.Fraction`` elements."""

    characteristic: int = field(default=0, init=False)

    def convert(self, value: Scalar) -> Fraction:
        return Fraction(value)

    def inv(self, value: Fraction) -> Fraction:
        if value == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(value)

    def signed(self, value: Fraction) -> Fraction:
        return value

    def format(self, value: Fraction) -> str:
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def describe(self) -> str:
        return "Q"


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p for an odd prime p; elements are ints in [0, p)."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, int) or p < 3 or not isprime(p):
            raise InputError(f"F_p needs an odd prime characteristic, got {p}")

    def convert(self, value: Scalar) -> int:
        p = self.characteristic
        if isinstance(value, int):
            return value % p
        value = Fraction(value)
        if value.denominator % p == 0:
            raise InputError(f"{value} has no image in F_{p}: denominator divisible by {p}")
        return value.numerator * pow(value.denominator, -1, p) % p

    def inv(self, value: int) -> int:
        if value % self.characteristic == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.characteristic}")
        return pow(value, -1, self.characteristic)

    def signed(self, value: int) -> int:
        """Symmetric representative in (-p/2, p/2]."""
        p = self.characteristic
        return value - p if value > p // 2 else value

    def format(self, value: int) -> str:
        return str(self.signed(value))

    def describe(self) -> str:
        return f"Fp {self.characteristic}"


Domain = Union[RationalField, PrimeField]
QQ = RationalField()


# ============================================================================
# Monomials and orders
# ============================================================================

def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """a / b, or None when b does not divide a."""
    quotient = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in quotient):
        return None
    return quotient


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_support(m: Monomial) -> frozenset:
    return frozenset(i for i, e in enumerate(m) if e)


def minimalize_monomials(monomials: Iterable[Monomial]) -> List[Monomial]:
    """Drop every monomial divisible by another one; keeps a sorted, duplicate-free list."""
    ordered = sorted(set(monomials), key=lambda m: (sum(m), m))
    minimal: List[Monomial] = []
    for m in ordered:
        if not any(monomial_divides(g, m) for g in minimal):
            minimal.append(m)
    return minimal


class OrderKind(str, Enum):
    LEX = "lex"
    GREVLEX = "grevlex"
    BLOCK = "block"


def _grevlex_tail(m: Sequence[int]) -> Tuple[int, ...]:
    return tuple(-e for e in reversed(m))


@dataclass(frozen=True)
class MonomialOrder:
    """
    A monomial order given by a sort key (larger key = larger monomial).

    BLOCK orders put the ``eliminated`` variables in a dominant block; both
    blocks are compared by grevlex.
    """

    kind: OrderKind
    eliminated: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind is OrderKind.BLOCK and not self.eliminated:
            raise InputError("block order needs at least one eliminated variable")
        object.__setattr__(self, "eliminated", tuple(sorted(set(self.eliminated))))

    def key(self, m: Monomial):
        if self.kind is OrderKind.LEX:
            return m
        if self.kind is OrderKind.GREVLEX:
            return (sum(m), _grevlex_tail(m))
        head = [m[i] for i in self.eliminated]
        tail = [e for i, e in enumerate(m) if i not in self.eliminated]
        return (sum(head), _grevlex_tail(head), sum(tail), _grevlex_tail(tail))

    def max_monomial(self, monomials: Iterable[Monomial]) -> Monomial:
        return max(monomials, key=self.key)

    def sort_descending(self, monomials: Iterable[Monomial]) -> List[Monomial]:
        return sorted(monomials, key=self.key, reverse=True)

    def less(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) < self.key(b)

    @classmethod
    def parse(cls, name: str) -> "MonomialOrder":
        try:
            kind = OrderKind(name.strip().lower())
        except ValueError:
            raise InputError(f"unknown monomial order '{name}' (use lex or grevlex)")
        if kind is OrderKind.BLOCK:
            raise InputError("block orders are built from an eliminated-variable set, not by name")
        return cls(kind)

    def __str__(self) -> str:
        if self.kind is OrderKind.BLOCK:
            return f"block{list(self.eliminated)}"
        return self.kind.value


LEX = MonomialOrder(OrderKind.LEX)
GREVLEX = MonomialOrder(OrderKind.GREVLEX)


def block_order(eliminated: Iterable[int]) -> MonomialOrder:
    return MonomialOrder(OrderKind.BLOCK, tuple(eliminated))


# ============================================================================
# Ring context
# ============================================================================

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class RingContext:
    """Polynomial ring k[variables] with a fixed variable order."""

    variables: Tuple[str, ...]
    domain: Domain = QQ

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise InputError("a ring needs at least one variable")
        for name in self.variables:
            if not _NAME.match(name):
                raise InputError(f"invalid variable name '{name}'")
        if len(set(self.variables)) != len(self.variables):
            raise InputError(f"duplicate variable names in {list(self.variables)}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: Union[str, int]) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.nvars:
                raise InputError(f"variable index {name} out of range for {self.nvars} variables")
            return name
        try:
            return self.variables.index(name)
        except ValueError:
            raise InputError(f"unknown variable '{name}' (ring has {', '.join(self.variables)})")

    def fresh_names(self, stem: str, count: Optional[int] = None) -> List[str]:
        """
        New variable names avoiding the ring's own: ``[stem]`` when count is None,
        else ``stem1..stemN``. Clashes are resolved by prefixing underscores.
        """
        prefix = ""
        while True:
            if count is None:
                names = [f"{prefix}{stem}"]
            else:
                names = [f"{prefix}{stem}{i}" for i in range(1, count + 1)]
            if not set(names) & set(self.variables):
                return names
            prefix += "_"

    def extend(self, names: Sequence[str]) -> "RingContext":
        return RingContext(self.variables + tuple(names), self.domain)

    def subring(self, names: Sequence[str]) -> "RingContext":
        for name in names:
            self.index(name)
        return RingContext(tuple(names), self.domain)

    def with_domain(self, domain: Domain) -> "RingContext":
        return RingContext(self.variables, domain)

    def zero(self) -> "Polynomial":
        return Polynomial._raw(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, value: Scalar) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: value})

    def var(self, name: Union[str, int]) -> "Polynomial":
        i = self.index(name)
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial._raw(self, {tuple(exps): self.domain.convert(1)})

    def gens(self) -> List["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exponents: Sequence[int], coefficient: Scalar = 1) -> "Polynomial":
        if len(exponents) != self.nvars or any(e < 0 for e in exponents):
            raise InputError(f"bad exponent vector {tuple(exponents)} for {self.nvars} variables")
        return Polynomial(self, {tuple(exponents): coefficient})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def describe(self) -> str:
        return f"{self.domain.describe()}[{', '.join(self.variables)}]"


# ============================================================================
# Polynomial
# ============================================================================

def _combine(a: Dict[Monomial, Coefficient], b: Dict[Monomial, Coefficient],
             scale: Coefficient, p: int) -> Dict[Monomial, Coefficient]:
    """a + scale*b as a fresh dict with zeros removed."""
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + scale * c
        if p:
            v %= p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


class Polynomial:
    """Immutable sparse polynomial. ``terms`` must be treated as read-only."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingContext, terms: Dict[Monomial, Scalar]):
        dom = ring.domain
        clean: Dict[Monomial, Coefficient] = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != ring.nvars:
                raise InputError(f"monomial {m} does not match {ring.nvars} variables")
            value = dom.convert(c)
            if value:
                clean[m] = clean.get(m, 0) + value
                if dom.characteristic:
                    clean[m] %= dom.characteristic
                if not clean[m]:
                    del clean[m]
        self.ring = ring
        self.terms = clean

    @classmethod
    def _raw(cls, ring: RingContext, terms: Dict[Monomial, Coefficient]) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def support(self) -> frozenset:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return frozenset(used)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(
                    f"ring mismatch: {self.ring.describe()} vs {other.ring.describe()}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.ring, _combine(self.terms, other.terms, 1,
                                                   self.ring.domain.characteristic))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.ring, _combine(self.terms, other.terms, -1,
                                                   self.ring.domain.characteristic))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.domain.characteristic
        out: Dict[Monomial, Coefficient] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                out[m] = v % p if p else v
        return Polynomial._raw(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InputError(f"polynomial powers need a nonnegative integer, got {k}")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> "Polynomial":
        dom = self.ring.domain
        c = dom.convert(c)
        if not c:
            return self.ring.zero()
        p = dom.characteristic
        return Polynomial._raw(self.ring, {m: (v * c) % p if p else v * c
                                           for m, v in self.terms.items()})

    def mul_term(self, monomial: Monomial, c: Coefficient) -> "Polynomial":
        p = self.ring.domain.characteristic
        return Polynomial._raw(self.ring, {
            tuple(a + b for a, b in zip(m, monomial)): (v * c) % p if p else v * c
            for m, v in self.terms.items()
        })

    # -- order-dependent accessors -------------------------------------------

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        if not self.terms:
            raise InputError("the zero polynomial has no leading monomial")
        return order.max_monomial(self.terms)

    def leading_coefficient(self, order: MonomialOrder) -> Coefficient:
        return self.terms[self.leading_monomial(order)]

    def leading_term(self, order: MonomialOrder) -> Tuple[Monomial, Coefficient]:
        m = self.leading_monomial(order)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        if not self.terms:
            return self
        dom = self.ring.domain
        return self.scale(dom.inv(self.leading_coefficient(order)))

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> List[Tuple[Monomial, Coefficient]]:
        return [(m, self.terms[m]) for m in order.sort_descending(self.terms)]

    # -- evaluation and transfer ---------------------------------------------

    def evaluate(self, point: Sequence[Scalar]) -> Coefficient:
        dom = self.ring.domain
        if len(point) != self.ring.nvars:
            raise InputError(f"point has {len(point)} coordinates, ring has {self.ring.nvars}")
        values = [dom.convert(v) for v in point]
        p = dom.characteristic
        total = dom.convert(0)
        for m, c in self.terms.items():
            term = c
            for v, e in zip(values, m):
                if e:
                    term = term * (pow(v, e, p) if p else v ** e)
            total = (total + term) % p if p else total + term
        return total

    def to_ring(self, target: RingContext) -> "Polynomial":
        """Move to another ring by variable name, converting coefficients if the domain changes."""
        if target == self.ring:
            return self
        src, dst = self.ring.domain, target.domain
        if src != dst and src.characteristic:
            raise RingMismatchError(
                f"cannot move coefficients from {src.describe()} to {dst.describe()}")
        positions = []
        for i, name in enumerate(self.ring.variables):
            if name in target.variables:
                positions.append((i, target.variables.index(name)))
            elif i in self.support():
                raise RingMismatchError(
                    f"variable '{name}' of {self} is missing from {target.describe()}")
        out: Dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            exps = [0] * target.nvars
            for i, j in positions:
                exps[j] = m[i]
            out[tuple(exps)] = c
        return Polynomial(target, out)

    # -- dunder plumbing ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r} in {self.ring.describe()})"


# ============================================================================
# Operations
# ============================================================================

def ring_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    """add / sub / mul on two polynomials of one ring."""
    if f.ring != g.ring:
        raise RingMismatchError(f"ring mismatch: {f.ring.describe()} vs {g.ring.describe()}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise InputError(f"unknown ring operation '{op}'")


def differentiate(f: Polynomial, var: Union[int, str]) -> Polynomial:
    i = f.ring.index(var)
    dom = f.ring.domain
    out: Dict[Monomial, Scalar] = {}
    for m, c in f.terms.items():
        if m[i]:
            lowered = list(m)
            lowered[i] -= 1
            out[tuple(lowered)] = c * m[i]
    return Polynomial(f.ring, out) if dom.characteristic else Polynomial._raw(f.ring, out)


def homogeneous_parts(f: Polynomial) -> List[Tuple[int, Polynomial]]:
    buckets: Dict[int, Dict[Monomial, Coefficient]] = {}
    for m, c in f.terms.items():
        buckets.setdefault(sum(m), {})[m] = c
    return [(d, Polynomial._raw(f.ring, buckets[d])) for d in sorted(buckets)]


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g when g divides f exactly; InputError otherwise."""
    if g.is_zero():
        raise InputError("division by the zero polynomial")
    if f.ring != g.ring:
        raise RingMismatchError("divide_exact needs a common ring")
    dom = f.ring.domain
    p = dom.characteristic
    g_lm, g_lc = g.leading_term(GREVLEX)
    g_inv = dom.inv(g_lc)
    remainder = dict(f.terms)
    quotient: Dict[Monomial, Coefficient] = {}
    while remainder:
        lm = GREVLEX.max_monomial(remainder)
        shift = monomial_div(lm, g_lm)
        if shift is None:
            raise InputError(f"{g} does not divide {f}")
        c = remainder[lm] * g_inv
        if p:
            c %= p
        quotient[shift] = c
        remainder = _combine(remainder, g.mul_term(shift, c).terms, -1, p)
    return Polynomial._raw(f.ring, quotient)


def format_polynomial(f: Polynomial) -> str:
    """Descending grevlex; coefficient 1 omitted; F_p printed in symmetric form."""
    if f.is_zero():
        return "0"
    dom = f.ring.domain
    names = f.ring.variables
    pieces: List[str] = []
    for m, c in f.sorted_terms(GREVLEX):
        value = dom.signed(c)
        negative = value < 0
        magnitude = -value if negative else value
        mono = "*".join(names[i] if e == 1 else f"{names[i]}^{e}"
                        for i, e in enumerate(m) if e)
        if not mono:
            body = dom.format(magnitude) if not dom.characteristic else str(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            coeff = dom.format(magnitude) if not dom.characteristic else str(magnitude)
            body = f"{coeff}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


# ============================================================================
# Parsing
# ============================================================================

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/()])|(?P<bad>\S))")


class _PolynomialParser:
    """Recursive-descent parser producing Polynomials in a fixed ring."""

    def __init__(self, text: str, ring: RingContext, line: int, column: int):
        self.ring = ring
        self.line = line
        self.end_column = column + len(text.rstrip())
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            match = _TOKEN.match(text, pos)
            if match is None:
                break
            kind = match.lastgroup
            col = column + match.start(kind)
            if kind == "bad":
                raise ParseError(f"unexpected character '{match.group(kind)}'", line, col)
            self.tokens.append((kind, match.group(kind), col))
            pos = match.end()
        self.pos = 0

    def _peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _error(self, message: str) -> ParseError:
        tok = self._peek()
        col = tok[2] if tok else self.end_column
        found = f"'{tok[1]}'" if tok else "end of input"
        return ParseError(f"{message}, found {found}", self.line, col)

    def _accept_op(self, *ops: str) -> Optional[str]:
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] in ops:
            self.pos += 1
            return tok[1]
        return None

    def _expect_number(self) -> int:
        tok = self._peek()
        if not tok or tok[0] != "num":
            raise self._error("expected an integer")
        self.pos += 1
        return int(tok[1])

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise self._error("expected a polynomial")
        result = self._sum()
        if self._peek() is not None:
            raise self._error("unexpected token")
        return result

    def _sum(self) -> Polynomial:
        sign = self._accept_op("+", "-") or "+"
        total = self._term()
        if sign == "-":
            total = -total
        while True:
            op = self._accept_op("+", "-")
            if op is None:
                return total
            term = self._term()
            total = total + term if op == "+" else total - term

    def _term(self) -> Polynomial:
        value = self._factor()
        while self._accept_op("*"):
            value = value * self._factor()
        return value

    def _factor(self) -> Polynomial:
        tok = self._peek()
        if tok is None or not (tok[0] in ("num", "name") or tok[1] == "("):
            raise self._error("expected a coefficient, variable or '('")
        self.pos += 1
        if tok[0] == "num":
            value: Scalar = int(tok[1])
            if self._accept_op("/"):
                denominator = self._expect_number()
                if denominator == 0:
                    raise ParseError("zero denominator", self.line, tok[2])
                value = Fraction(int(tok[1]), denominator)
            try:
                return self.ring.constant(value)
            except InputError as e:
                raise ParseError(str(e), self.line, tok[2])
        if tok[0] == "name":
            if tok[1] not in self.ring.variables:
                raise ParseError(f"unknown variable '{tok[1]}'", self.line, tok[2])
            base = self.ring.var(tok[1])
        else:
            base = self._sum()
            if not self._accept_op(")"):
                raise self._error("expected ')'")
        if self._accept_op("^"):
            base = base ** self._expect_number()
        return base


def parse_polynomial(text: str, ring: RingContext, line: int = 1, column: int = 1) -> Polynomial:
    """Parse ``text`` into a polynomial of ``ring``; errors carry line/column."""
    return _PolynomialParser(text, ring, line, column).parse()
