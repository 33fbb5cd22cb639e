"""
Gröbner basis engine and the decision procedures built on it.

Buchberger's algorithm with the product and chain criteria, a degree-ordered
pair queue and full reduction, finished into the unique reduced basis. All
ideal-level questions (membership, equality, dimension, homogeneity,
radical membership) go through ``IdealHandle``, which caches one reduced
basis per monomial order.
"""
import heapq
import logging
import threading
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from config import CONFIG
from algebra.errors import BudgetExceededError, ConsistencyError, InputError, RingMismatchError
from algebra.poly_core import (
    GREVLEX,
    Coefficient,
    Monomial,
    MonomialOrder,
    Polynomial,
    RingContext,
    homogeneous_parts,
    minimalize_monomials,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomial_support,
    parse_polynomial,
)

logger = logging.getLogger(__name__)

Terms = Dict[Monomial, Coefficient]
BasisElement = Tuple[Monomial, Terms]


class StepBudget:
    """Counts reduction steps; raises BudgetExceededError past the limit."""

    def __init__(self, limit: Optional[int] = None):
        self.limit = CONFIG.GB_STEP_BUDGET if limit is None else limit
        self.used = 0

    def charge(self, steps: int = 1) -> None:
        self.used += steps
        if self.used > self.limit:
            raise BudgetExceededError(
                f"Gröbner step budget of {self.limit} reduction steps exceeded", self.limit)


# ============================================================================
# Term-level kernels
# ============================================================================

def _reduce(terms: Terms, basis: Sequence[BasisElement], order: MonomialOrder,
            p: int, budget: StepBudget) -> Terms:
    """Full multivariate division of ``terms`` by a list of monic basis elements."""
    f = dict(terms)
    remainder: Terms = {}
    key = order.key
    while f:
        lm = max(f, key=key)
        c = f[lm]
        for g_lm, g_terms in basis:
            shift = monomial_div(lm, g_lm)
            if shift is None:
                continue
            budget.charge()
            for m, v in g_terms.items():
                mm = tuple(a + b for a, b in zip(m, shift))
                w = f.get(mm, 0) - c * v
                if p:
                    w %= p
                if w:
                    f[mm] = w
                else:
                    f.pop(mm, None)
            break
        else:
            remainder[lm] = c
            del f[lm]
    return remainder


def _monic(terms: Terms, order: MonomialOrder, ring: RingContext) -> BasisElement:
    lm = max(terms, key=order.key)
    dom = ring.domain
    inv = dom.inv(terms[lm])
    p = dom.characteristic
    return lm, {m: (c * inv) % p if p else c * inv for m, c in terms.items()}


def _s_polynomial(a: BasisElement, b: BasisElement, p: int) -> Terms:
    lcm = monomial_lcm(a[0], b[0])
    sa = monomial_div(lcm, a[0])
    sb = monomial_div(lcm, b[0])
    out: Terms = {}
    for m, c in a[1].items():
        out[monomial_mul(m, sa)] = c
    for m, c in b[1].items():
        mm = monomial_mul(m, sb)
        w = out.get(mm, 0) - c
        if p:
            w %= p
        if w:
            out[mm] = w
        else:
            out.pop(mm, None)
    return out


def _is_constant(terms: Terms) -> bool:
    return len(terms) == 1 and not any(next(iter(terms)))


def _finish(elements: List[BasisElement], order: MonomialOrder, ring: RingContext,
            budget: StepBudget) -> List[BasisElement]:
    """Minimalize, interreduce and sort a Gröbner basis of monic elements."""
    minimal: List[BasisElement] = []
    for i, (lm, terms) in enumerate(elements):
        dominated = any(
            monomial_divides(other_lm, lm) and (other_lm != lm or j < i)
            for j, (other_lm, _) in enumerate(elements) if j != i
        )
        if not dominated:
            minimal.append((lm, terms))
    p = ring.domain.characteristic
    reduced = []
    for i, (lm, terms) in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        reduced.append((lm, _reduce(terms, others, order, p, budget)))
    reduced.sort(key=lambda e: order.key(e[0]), reverse=True)
    return reduced


def _unit_basis(ring: RingContext) -> List[BasisElement]:
    one = (0,) * ring.nvars
    return [(one, {one: ring.domain.convert(1)})]


def _buchberger(generators: Sequence[Polynomial], ring: RingContext, order: MonomialOrder,
                budget: StepBudget) -> List[BasisElement]:
    p = ring.domain.characteristic
    basis: List[BasisElement] = []
    queue: List[Tuple[int, Monomial, int, int]] = []
    pending = set()

    def add(element: BasisElement) -> None:
        k = len(basis)
        basis.append(element)
        for i in range(k):
            lcm = monomial_lcm(basis[i][0], element[0])
            heapq.heappush(queue, (sum(lcm), lcm, i, k))
            pending.add((i, k))

    for g in generators:
        r = _reduce(g.terms, basis, order, p, budget)
        if r:
            if _is_constant(r):
                return _unit_basis(ring)
            add(_monic(r, order, ring))

    processed = 0
    while queue:
        _, lcm, i, j = heapq.heappop(queue)
        pending.discard((i, j))
        budget.charge()
        lm_i, lm_j = basis[i][0], basis[j][0]
        if lcm == monomial_mul(lm_i, lm_j):
            continue
        if any(
            k != i and k != j
            and monomial_divides(basis[k][0], lcm)
            and (min(i, k), max(i, k)) not in pending
            and (min(j, k), max(j, k)) not in pending
            for k in range(len(basis))
        ):
            continue
        processed += 1
        r = _reduce(_s_polynomial(basis[i], basis[j], p), basis, order, p, budget)
        if r:
            if _is_constant(r):
                return _unit_basis(ring)
            add(_monic(r, order, ring))
    logger.debug(f"Buchberger: {processed} S-pairs reduced, {len(basis)} elements, "
                 f"{budget.used} steps")
    return basis


# ============================================================================
# Gröbner bases
# ============================================================================

@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis: monic elements sorted by decreasing leading monomial."""

    ring: RingContext
    order: MonomialOrder
    polynomials: Tuple[Polynomial, ...]
    reduced: bool = True

    @cached_property
    def _elements(self) -> List[BasisElement]:
        return [(g.leading_monomial(self.order), g.terms) for g in self.polynomials]

    def leading_monomials(self) -> List[Monomial]:
        return [lm for lm, _ in self._elements]

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.polynomials)

    def is_zero_ideal(self) -> bool:
        return not self.polynomials

    def normal_form(self, f: Polynomial, budget: Optional[StepBudget] = None) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f} is not in {self.ring.describe()}")
        budget = budget or StepBudget()
        r = _reduce(f.terms, self._elements, self.order, self.ring.domain.characteristic, budget)
        return Polynomial._raw(self.ring, r)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def __len__(self) -> int:
        return len(self.polynomials)

    def __iter__(self):
        return iter(self.polynomials)


def _wrap(elements: List[BasisElement], ring: RingContext, order: MonomialOrder) -> GroebnerBasis:
    return GroebnerBasis(ring, order, tuple(Polynomial._raw(ring, t) for _, t in elements))


def compute_groebner_basis(generators: Iterable[Polynomial], ring: RingContext,
                           order: MonomialOrder = GREVLEX,
                           budget: Optional[StepBudget] = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``generators``."""
    gens = [g for g in generators if not g.is_zero()]
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError(f"generator {g} is not in {ring.describe()}")
    budget = budget or StepBudget()
    elements = _buchberger(gens, ring, order, budget)
    gb = _wrap(_finish(elements, order, ring, budget), ring, order)
    if CONFIG.GB_SELF_CHECK and not verify_certificate(gb):
        raise ConsistencyError(f"Buchberger certificate failed for basis under {order}")
    return gb


def naive_buchberger(generators: Iterable[Polynomial], ring: RingContext,
                     order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Criterion-free Buchberger: every pair is reduced until a pass adds nothing."""
    p = ring.domain.characteristic
    budget = StepBudget()
    basis: List[BasisElement] = [_monic(dict(g.terms), order, ring)
                                 for g in generators if not g.is_zero()]
    checked = set()
    grew = True
    while grew:
        grew = False
        for i, j in combinations(range(len(basis)), 2):
            if (i, j) in checked:
                continue
            checked.add((i, j))
            r = _reduce(_s_polynomial(basis[i], basis[j], p), basis, order, p, budget)
            if r:
                basis.append(_monic(r, order, ring))
                grew = True
    if any(_is_constant(t) for _, t in basis):
        return _wrap(_unit_basis(ring), ring, order)
    return _wrap(_finish(basis, order, ring, budget), ring, order)


def verify_certificate(gb: GroebnerBasis) -> bool:
    """True when every S-polynomial of the basis reduces to zero."""
    p = gb.ring.domain.characteristic
    budget = StepBudget()
    elements = gb._elements
    for a, b in combinations(elements, 2):
        if _reduce(_s_polynomial(a, b, p), elements, gb.order, p, budget):
            return False
    return True


# ============================================================================
# Dimension
# ============================================================================

def _min_hitting_set(sets: List[frozenset]) -> int:
    best = [len(sets) + 1]

    def search(chosen: int, remaining: List[frozenset]) -> None:
        if chosen >= best[0]:
            return
        if not remaining:
            best[0] = chosen
            return
        pivot = min(remaining, key=lambda s: (len(s), sorted(s)))
        for v in sorted(pivot):
            search(chosen + 1, [s for s in remaining if v not in s])

    search(0, sets)
    return best[0]


def dimension_from_leading_monomials(lms: Iterable[Monomial], nvars: int) -> Optional[int]:
    """
    Krull dimension of R/I from the leading monomials of a Gröbner basis.

    A variable set S is independent when no leading monomial lives purely in
    S; the largest such S is the complement of a smallest set of variables
    meeting every leading-monomial support. Returns None for the unit ideal.
    """
    supports = {monomial_support(m) for m in lms}
    if frozenset() in supports:
        return None
    minimal = [s for s in supports if not any(t < s for t in supports)]
    return nvars - _min_hitting_set(sorted(minimal, key=lambda s: (len(s), sorted(s))))


# ============================================================================
# Ideal handle
# ============================================================================

class IdealHandle:
    """Generators of an ideal plus cached reduced Gröbner bases, one per order."""

    def __init__(self, ring: RingContext, generators: Iterable[Polynomial] = ()):
        gens: List[Polynomial] = []
        seen = set()
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} is not in {ring.describe()}")
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.ring = ring
        self.generators: Tuple[Polynomial, ...] = tuple(gens)
        self._bases: Dict[MonomialOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()

    @classmethod
    def parse(cls, ring: RingContext, texts: Iterable[str]) -> "IdealHandle":
        return cls(ring, [parse_polynomial(t, ring) for t in texts])

    @classmethod
    def unit(cls, ring: RingContext) -> "IdealHandle":
        return cls(ring, [ring.one()])

    def groebner(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        with self._lock:
            gb = self._bases.get(order)
            if gb is None:
                gb = compute_groebner_basis(self.generators, self.ring, order)
                self._bases[order] = gb
            return gb

    def normal_form(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        return self.groebner(order).normal_form(f)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        if any(g.is_constant() for g in self.generators):
            return True
        return self.groebner().is_unit()

    def contains(self, f: Polynomial) -> bool:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f} is not in {self.ring.describe()}")
        if f.is_zero():
            return True
        if self.is_zero():
            return False
        return self.groebner().contains(f)

    def contains_ideal(self, other: "IdealHandle") -> bool:
        self._check_ring(other)
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "IdealHandle") -> bool:
        """Ideal equality by comparing reduced grevlex bases."""
        self._check_ring(other)
        return self.groebner().polynomials == other.groebner().polynomials

    def dimension(self) -> Optional[int]:
        """Krull dimension of R/I, or None when I is the unit ideal."""
        if self.is_zero():
            return self.ring.nvars
        return dimension_from_leading_monomials(self.groebner().leading_monomials(),
                                                self.ring.nvars)

    def codimension(self) -> Optional[int]:
        dim = self.dimension()
        return None if dim is None else self.ring.nvars - dim

    def to_ring(self, target: RingContext) -> "IdealHandle":
        return IdealHandle(target, [g.to_ring(target) for g in self.generators])

    def __add__(self, other: "IdealHandle") -> "IdealHandle":
        self._check_ring(other)
        return IdealHandle(self.ring, self.generators + other.generators)

    def __mul__(self, other: "IdealHandle") -> "IdealHandle":
        self._check_ring(other)
        return IdealHandle(self.ring, [f * g for f in self.generators for g in other.generators])

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "0"
        return f"IdealHandle(<{gens}> in {self.ring.describe()})"

    def _check_ring(self, other: "IdealHandle") -> None:
        if other.ring != self.ring:
            raise RingMismatchError(
                f"ring mismatch: {self.ring.describe()} vs {other.ring.describe()}")


# ============================================================================
# Decision procedures
# ============================================================================

def groebner_basis(ideal: IdealHandle, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    return ideal.groebner(order)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(f)


def ideal_dimension(ideal: IdealHandle) -> Optional[int]:
    return ideal.dimension()


def is_homogeneous_ideal(ideal: IdealHandle) -> bool:
    """True iff every homogeneous part of every generator lies in the ideal."""
    for g in ideal.generators:
        parts = homogeneous_parts(g)
        if len(parts) > 1 and not all(ideal.contains(part) for _, part in parts):
            return False
    return True


def radical_membership(f: Polynomial, ideal: IdealHandle) -> bool:
    """f ∈ √I, decided by 1 ∈ I + ⟨1 − z·f⟩ in a ring with one extra variable z."""
    if f.ring != ideal.ring:
        raise RingMismatchError(f"{f} is not in {ideal.ring.describe()}")
    if f.is_zero():
        return True
    if ideal.is_zero():
        return False
    ring = ideal.ring
    extended = ring.extend(ring.fresh_names("z"))
    z = extended.var(extended.nvars - 1)
    gens = [g.to_ring(extended) for g in ideal.generators]
    gens.append(extended.one() - z * f.to_ring(extended))
    return IdealHandle(extended, gens).is_unit()


def monomial_exponents(ideal: IdealHandle) -> Optional[List[Monomial]]:
    """Minimal exponent vectors when the ideal is monomial, else None."""
    if all(g.is_monomial() for g in ideal.generators):
        return minimalize_monomials(next(iter(g.terms)) for g in ideal.generators)
    gb = ideal.groebner()
    if all(g.is_monomial() for g in gb.polynomials):
        return minimalize_monomials(gb.leading_monomials())
    return None
