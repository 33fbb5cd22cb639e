"""
Singularity invariants of monomial ideals.

All values are exact rationals computed from the Newton polyhedron
P(a) = conv(exponents) + ℝⁿ≥0 and from monomial (toric) valuations
v(a) = min over exponents u of ⟨v, u⟩:

- lct(a) = max{c : 𝟙 ∈ c·P(a)} = min over facets w of ⟨w, 𝟙⟩
- glct(aX, aZ, λ) = min over facet normals w of ⟨w, 𝟙⟩ + λ·w(aZ)
- mld at the origin = inf over v ∈ ℤⁿ≥1 of Σv − Σ mᵢ·v(aᵢ), or -inf
- multiplier ideals by Howald's lattice-point description

An ideal counts as monomial when its reduced Gröbner basis consists of
monomials, so ideals built from general sections can qualify too.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import floor, lcm
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Matrix, Rational

from config import CONFIG
from algebra.errors import BudgetExceededError, ConsistencyError, InputError, NotMonomialError
from algebra.groebner import IdealHandle, monomial_exponents
from algebra.ideal_ops import ideal_power
from algebra.poly_core import Monomial, RingContext, minimalize_monomials

logger = logging.getLogger(__name__)

MINUS_INFINITY = float("-inf")
MldValue = Union[Fraction, float]

# glct certificate box; the exact value comes from facet normals
_GLCT_CERTIFICATE_BOX = 6


def monomial_ideal(ring: RingContext, exponents: Sequence[Monomial]) -> IdealHandle:
    return IdealHandle(ring, [ring.monomial(u) for u in exponents])


def require_monomial(ideal: IdealHandle, what: str = "ideal") -> List[Monomial]:
    """Minimal exponents of a proper, nonzero monomial ideal."""
    exps = monomial_exponents(ideal)
    if exps is None:
        raise NotMonomialError(f"{what} {ideal} is not a monomial ideal")
    if not exps:
        raise InputError(f"{what} must be nonzero")
    if any(not any(u) for u in exps):
        raise InputError(f"{what} must be a proper ideal, got the unit ideal")
    return exps


def _dot(w: Sequence[Fraction], u: Sequence[int]) -> Fraction:
    return sum((wi * ui for wi, ui in zip(w, u)), Fraction(0))


# ============================================================================
# Newton polyhedron
# ============================================================================

@dataclass(frozen=True)
class NewtonPolyhedron:
    """Facets ⟨w, u⟩ ≥ 1 (w ≥ 0) plus coordinate facets u_j ≥ 0."""

    dimension: int
    points: Tuple[Monomial, ...]
    facets: Tuple[Tuple[Fraction, ...], ...]
    coordinate_facets: Tuple[int, ...]

    def contains(self, u: Sequence[Fraction]) -> bool:
        return all(x >= 0 for x in u) and all(_dot(w, u) >= 1 for w in self.facets)

    def interior_contains(self, u: Sequence[Fraction], scale: Fraction = Fraction(1)) -> bool:
        """Strict interiority of u in scale·P."""
        if any(u[j] <= 0 for j in self.coordinate_facets):
            return False
        return all(_dot(w, u) > scale for w in self.facets)


def newton_polyhedron(ideal: IdealHandle) -> NewtonPolyhedron:
    """
    Facets by enumerating candidate normals: k tight generating points and
    n − k vanishing weights determine w; keep it when w ≥ 0 and every
    generating point satisfies ⟨w, u⟩ ≥ 1.
    """
    exps = require_monomial(ideal)
    n = ideal.ring.nvars
    if n > CONFIG.NEWTON_MAX_DIMENSION:
        raise BudgetExceededError(
            f"Newton polyhedra are limited to {CONFIG.NEWTON_MAX_DIMENSION} variables, got {n}",
            CONFIG.NEWTON_MAX_DIMENSION)
    found = set()
    for k in range(1, n + 1):
        for tight in combinations(exps, k):
            for zeros in combinations(range(n), n - k):
                rows = [list(u) for u in tight]
                rows += [[1 if j == z else 0 for j in range(n)] for z in zeros]
                system = Matrix(rows)
                if system.det() == 0:
                    continue
                solution = system.LUsolve(Matrix([1] * k + [0] * (n - k)))
                w = tuple(Fraction(int(Rational(x).p), int(Rational(x).q)) for x in solution)
                if any(x < 0 for x in w):
                    continue
                if all(_dot(w, u) >= 1 for u in exps):
                    found.add(w)
    coordinate = tuple(j for j in range(n) if any(u[j] == 0 for u in exps))
    facets = tuple(sorted(found))
    logger.debug(f"newton_polyhedron: {len(exps)} points, {len(facets)} facets, "
                 f"coordinate facets {coordinate}")
    return NewtonPolyhedron(n, tuple(exps), facets, coordinate)


# ============================================================================
# Thresholds
# ============================================================================

def lct_monomial(ideal: IdealHandle) -> Fraction:
    poly = newton_polyhedron(ideal)
    return min(sum(w, Fraction(0)) for w in poly.facets)


def _valuation(v: Sequence, exps: Sequence[Monomial]):
    return min(sum(a * b for a, b in zip(v, u)) for u in exps)


def _box_points(n: int, bound: int) -> np.ndarray:
    axes = [np.arange(1, bound + 1, dtype=np.int64)] * n
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)


def _box_valuation(points: np.ndarray, exps: Sequence[Monomial]) -> np.ndarray:
    return (points @ np.array(exps, dtype=np.int64).T).min(axis=1)


def glct_monomial(ideal_x: IdealHandle, ideal_z: Optional[IdealHandle],
                  lam: Union[Fraction, int, str]) -> Fraction:
    """
    min over monomial valuations v of (Σv + λ·v(aZ)) / v(aX).

    The objective is scale invariant and concave on {v ≥ 0 : v(aX) ≥ 1}, so
    the minimum sits at a vertex of that region, i.e. at a facet normal of
    P(aX). A small box of strictly positive integer valuations is searched
    as a certificate that nothing beats the facet value.
    """
    lam = Fraction(lam)
    if lam < 0:
        raise InputError(f"λ must be nonnegative, got {lam}")
    poly = newton_polyhedron(ideal_x)
    z_exps: List[Monomial] = []
    if lam > 0:
        if ideal_z is None:
            raise InputError("λ > 0 needs the auxiliary ideal aZ")
        if ideal_z.ring != ideal_x.ring:
            raise InputError("aX and aZ must share a ring")
        z_exps = require_monomial(ideal_z, "aZ")
    value = min(sum(w, Fraction(0)) + (lam * _valuation(w, z_exps) if z_exps else 0)
                for w in poly.facets)

    n = poly.dimension
    bound = max(1, min(_GLCT_CERTIFICATE_BOX, int(CONFIG.MLD_SEARCH_POINT_CAP ** (1 / n))))
    points = _box_points(n, bound)
    numer = points.sum(axis=1).astype(object)
    if z_exps:
        numer = numer + lam * _box_valuation(points, z_exps).astype(object)
    denom = _box_valuation(points, poly.points).astype(object)
    box_best = min(Fraction(a) / int(b) for a, b in zip(numer, denom))
    if box_best < value:
        raise ConsistencyError(f"glct box search found {box_best} below the facet value {value}")
    return value


# ============================================================================
# Minimal log discrepancies
# ============================================================================

@dataclass(frozen=True)
class FormalProduct:
    """ã^m = ã₁^{m₁}⋯ã_k^{m_k}: monomial ideals with exact exponents ≥ 0."""

    ring: RingContext
    factors: Tuple[Tuple[IdealHandle, Fraction], ...] = ()

    def __post_init__(self):
        clean = []
        for ideal, exponent in self.factors:
            exponent = Fraction(exponent)
            if exponent < 0:
                raise InputError(f"formal-product exponents must be ≥ 0, got {exponent}")
            if ideal.ring != self.ring:
                raise InputError("formal-product factors must share the ring")
            require_monomial(ideal, "formal-product factor")
            clean.append((ideal, exponent))
        object.__setattr__(self, "factors", tuple(clean))

    def times(self, ideal: IdealHandle, exponent: Union[Fraction, int, str]) -> "FormalProduct":
        return FormalProduct(self.ring, self.factors + ((ideal, Fraction(exponent)),))

    def exponent_data(self) -> List[Tuple[List[Monomial], Fraction]]:
        return [(require_monomial(ideal), m) for ideal, m in self.factors if m]


@dataclass(frozen=True)
class MldResult:
    value: MldValue
    minimizer: Tuple[int, ...]
    box_bound: int
    verified: bool

    @property
    def is_minus_infinity(self) -> bool:
        return self.value == MINUS_INFINITY


def mld_monomial_origin(formal: FormalProduct) -> MldResult:
    """
    inf over v ∈ ℤⁿ≥1 of g(v) = Σv − Σ mᵢ·v(aᵢ) by a box search on [1, B]ⁿ.

    g is 1-homogeneous, so one negative value certifies -inf. The minimum is
    reported as verified when the half box [1, B/2]ⁿ already attains it.
    """
    n = formal.ring.nvars
    data = formal.exponent_data()
    max_degree = max((sum(u) for exps, _ in data for u in exps), default=0)
    bound = 4 * (n + max_degree)
    if bound ** n > CONFIG.MLD_SEARCH_POINT_CAP:
        reduced = max(2, int(CONFIG.MLD_SEARCH_POINT_CAP ** (1 / n)))
        logger.warning(f"mld box [1,{bound}]^{n} exceeds the point cap; searching [1,{reduced}]^{n}")
        bound = reduced
    scale = lcm(*[m.denominator for _, m in data]) if data else 1

    points = _box_points(n, bound)
    values = scale * points.sum(axis=1)
    for exps, m in data:
        values = values - int(m * scale) * _box_valuation(points, exps)
    if (values < 0).any():
        idx = int(np.argmax(values < 0))
        logger.info(f"mld: negative discrepancy at v={tuple(points[idx])}, value is -inf")
        return MldResult(MINUS_INFINITY, tuple(int(x) for x in points[idx]), bound, True)

    idx = int(np.argmin(values))
    best = Fraction(int(values[idx]), scale)
    half = points.max(axis=1) <= bound // 2
    verified = bool(half.any()) and int(values[half].min()) == int(values[idx])
    if not verified:
        logger.warning(f"mld: minimum {best} not confirmed by the half box; "
                       f"reporting an unverified global minimum")
    return MldResult(best, tuple(int(x) for x in points[idx]), bound, verified)


def mldmj_origin_monomial(ideal_x: IdealHandle,
                          formal: Optional[FormalProduct] = None) -> MldResult:
    """MJ-minimal log discrepancy of X at 0 via mld(0; A, I_X^c · ã^m), c = codim X."""
    require_monomial(ideal_x, "I_X")
    c = ideal_x.codimension()
    formal = formal or FormalProduct(ideal_x.ring)
    if formal.ring != ideal_x.ring:
        raise InputError("I_X and the formal product must share a ring")
    return mld_monomial_origin(formal.times(ideal_x, c))


# ============================================================================
# Multiplier ideals
# ============================================================================

def multiplier_ideal_monomial(ideal: IdealHandle, c: Union[Fraction, int, str]) -> IdealHandle:
    """Ideal of monomials x^m with m + 𝟙 strictly inside c·P(a)."""
    c = Fraction(c)
    if c < 0:
        raise InputError(f"multiplier ideals need c ≥ 0, got {c}")
    poly = newton_polyhedron(ideal)
    ring = ideal.ring
    if c == 0:
        return IdealHandle.unit(ring)
    bounds = []
    for j in range(poly.dimension):
        positive = [w[j] for w in poly.facets if w[j] > 0]
        bounds.append(floor(c / min(positive)) if positive else 0)
    members = [
        m for m in product(*(range(b + 1) for b in bounds))
        if all(_dot(w, [e + 1 for e in m]) > c for w in poly.facets)
    ]
    return monomial_ideal(ring, minimalize_monomials(members))


@dataclass(frozen=True)
class GrIdealReport:
    ideal: IdealHandle
    nonsingular: bool
    expected_power: int
    matches_power: Optional[bool]


def gr_multiplier_ideal(ideal_x: IdealHandle, t: int) -> GrIdealReport:
    """
    𝓘(A, I_X^t) for monomial I_X; when X is a coordinate subspace of
    codimension c it is compared with I_X^(t−c+1).
    """
    exps = require_monomial(ideal_x, "I_X")
    c = ideal_x.codimension()
    if t < c:
        raise InputError(f"t={t} is below codim X={c}")
    ideal = multiplier_ideal_monomial(ideal_x, t)
    nonsingular = all(sum(u) == 1 for u in exps)
    matches = None
    if nonsingular:
        expected = ideal_power(monomial_ideal(ideal_x.ring, exps), t - c + 1)
        matches = ideal.equals(expected)
    return GrIdealReport(ideal, nonsingular, t - c + 1, matches)
