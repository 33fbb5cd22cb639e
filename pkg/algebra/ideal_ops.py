"""
Ideal-level constructions: elimination, intersection, colon, saturation,
powers, Jacobian minors and implicitization of polynomial maps.

Every construction returns a fresh ``IdealHandle``; inputs are never
modified. Auxiliary variables (``t`` for intersections, ``z`` for the
auxiliary-variable saturation, ``u1..ur`` for image coordinates) get
underscore prefixes when they would clash with a ring variable.
"""
import logging
import operator
from dataclasses import dataclass
from functools import reduce
from itertools import combinations, combinations_with_replacement
from typing import List, NamedTuple, Optional, Sequence, Union

import numpy as np
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from config import CONFIG
from algebra.errors import BudgetExceededError, ConsistencyError, InputError, RingMismatchError
from algebra.groebner import IdealHandle, is_homogeneous_ideal
from algebra.poly_core import (
    Polynomial,
    PrimeField,
    RingContext,
    block_order,
    differentiate,
    divide_exact,
)

logger = logging.getLogger(__name__)


def _same_ring(a: IdealHandle, b: IdealHandle) -> RingContext:
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring.describe()} vs {b.ring.describe()}")
    return a.ring


def eliminate(ideal: IdealHandle, keep: Sequence[Union[str, int]]) -> IdealHandle:
    """I ∩ k[keep], returned in the subring of the kept variables (original order)."""
    ring = ideal.ring
    keep_idx = sorted({ring.index(k) for k in keep})
    if not keep_idx:
        raise InputError("eliminate needs at least one variable to keep")
    drop = [i for i in range(ring.nvars) if i not in keep_idx]
    if not drop:
        return ideal
    kept_ring = RingContext(tuple(ring.variables[i] for i in keep_idx), ring.domain)
    gb = ideal.groebner(block_order(drop))
    dropped = set(drop)
    survivors = [g for g in gb.polynomials if not g.support() & dropped]
    logger.debug(f"eliminate: {len(survivors)}/{len(gb)} basis elements free of "
                 f"{[ring.variables[i] for i in drop]}")
    return IdealHandle(kept_ring, [g.to_ring(kept_ring) for g in survivors])


def intersect(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    """I ∩ J by eliminating t from t·I + (1 − t)·J."""
    ring = _same_ring(a, b)
    if a.is_zero() or b.is_zero():
        return IdealHandle(ring)
    if a.is_unit():
        return b
    if b.is_unit():
        return a
    extended = ring.extend(ring.fresh_names("t"))
    t = extended.var(extended.nvars - 1)
    gens = [t * g.to_ring(extended) for g in a.generators]
    gens += [(1 - t) * g.to_ring(extended) for g in b.generators]
    return eliminate(IdealHandle(extended, gens), ring.variables)


def colon(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    """(I : J) as the intersection over generators g of J of (I ∩ ⟨g⟩)/g."""
    ring = _same_ring(a, b)
    if b.is_zero():
        raise InputError("colon by the zero ideal")
    result: Optional[IdealHandle] = None
    for g in b.generators:
        if a.contains(g):
            continue
        meet = intersect(a, IdealHandle(ring, [g]))
        quotient = IdealHandle(ring, [divide_exact(h, g) for h in meet.generators])
        result = quotient if result is None else intersect(result, quotient)
    return IdealHandle.unit(ring) if result is None else result


class SaturationResult(NamedTuple):
    ideal: IdealHandle
    exponent: int


def saturate(a: IdealHandle, b: IdealHandle, cross_check: Optional[bool] = None) -> SaturationResult:
    """
    (I : J^∞) by iterated colons, plus the first s with (I : J^s) = (I : J^(s+1)).

    With ``cross_check`` (default CONFIG.SATURATION_CROSS_CHECK) the result is
    compared against the auxiliary-variable method and a disagreement raises
    ConsistencyError.
    """
    _same_ring(a, b)
    if b.is_zero():
        raise InputError("saturation by the zero ideal")
    current = a
    steps = 0
    while not current.is_unit():
        following = colon(current, b)
        if following.equals(current):
            break
        current = following
        steps += 1
        logger.debug(f"saturate: colon step {steps}, {len(current)} generators")
        if steps > CONFIG.SATURATION_MAX_STEPS:
            raise BudgetExceededError(
                f"saturation did not stabilize within {CONFIG.SATURATION_MAX_STEPS} colon steps",
                CONFIG.SATURATION_MAX_STEPS)
    if CONFIG.SATURATION_CROSS_CHECK if cross_check is None else cross_check:
        other = saturate_by_rabinowitsch(a, b)
        if not other.equals(current):
            raise ConsistencyError("iterated-colon and auxiliary-variable saturations disagree")
        logger.debug("saturate: auxiliary-variable cross-check agrees")
    return SaturationResult(current, steps)


def saturate_by_rabinowitsch(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    """(I : J^∞) = ∩_g (I : g^∞), each factor from I + ⟨1 − z·g⟩ with z eliminated."""
    ring = _same_ring(a, b)
    if b.is_zero():
        raise InputError("saturation by the zero ideal")
    extended = ring.extend(ring.fresh_names("z"))
    z = extended.var(extended.nvars - 1)
    lifted = [g.to_ring(extended) for g in a.generators]
    result: Optional[IdealHandle] = None
    for g in b.generators:
        factor = eliminate(IdealHandle(extended, lifted + [1 - z * g.to_ring(extended)]),
                           ring.variables)
        if factor.is_unit():
            continue
        result = factor if result is None else intersect(result, factor)
    return IdealHandle.unit(ring) if result is None else result


def ideal_power(ideal: IdealHandle, k: int) -> IdealHandle:
    if not isinstance(k, int) or k < 1:
        raise InputError(f"ideal powers need a positive integer exponent, got {k}")
    products = [reduce(operator.mul, combo)
                for combo in combinations_with_replacement(ideal.generators, k)]
    return IdealHandle(ideal.ring, products)


def jacobian_matrix(polys: Sequence[Polynomial]) -> List[List[Polynomial]]:
    if not polys:
        return []
    n = polys[0].ring.nvars
    return [[differentiate(f, j) for j in range(n)] for f in polys]


def _determinant(rows: List[List[Polynomial]]) -> Polynomial:
    if len(rows) == 1:
        return rows[0][0]
    total = rows[0][0].ring.zero()
    for j, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = entry * _determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def jacobian_minors(ideal: IdealHandle, size: int) -> IdealHandle:
    """All size×size minors of (∂g_i/∂x_j) over the ideal's generators."""
    gens = ideal.generators
    n = ideal.ring.nvars
    if not 1 <= size <= min(len(gens), n):
        raise InputError(
            f"minor size {size} out of range 1..{min(len(gens), n)} "
            f"({len(gens)} generators, {n} variables)")
    matrix = jacobian_matrix(gens)
    minors = [
        _determinant([[matrix[r][c] for c in cols] for r in rows])
        for rows in combinations(range(len(gens)), size)
        for cols in combinations(range(n), size)
    ]
    return IdealHandle(ideal.ring, minors)


@dataclass(frozen=True)
class ImplicitizationResult:
    """Closure of the image of x ↦ (f_1(x), …, f_r(x)) in u-space."""

    ring: RingContext
    ideal: IdealHandle
    dimension: int
    cone: bool


def implicitize(fs: Sequence[Polynomial]) -> ImplicitizationResult:
    """Eliminate the source variables from ⟨u_i − f_i⟩."""
    if not fs:
        raise InputError("implicitize needs at least one polynomial")
    ring = fs[0].ring
    for f in fs:
        if f.ring != ring:
            raise RingMismatchError("implicitize needs polynomials from one ring")
    names = ring.fresh_names("u", len(fs))
    extended = ring.extend(names)
    gens = [extended.var(name) - f.to_ring(extended) for name, f in zip(names, fs)]
    image = eliminate(IdealHandle(extended, gens), names)
    dimension = image.dimension()
    cone = is_homogeneous_ideal(image)
    logger.info(f"implicitize: image of {len(fs)} polynomials has dimension {dimension}, "
                f"cone={cone}")
    return ImplicitizationResult(image.ring, image, dimension, cone)


def jacobian_rank(fs: Sequence[Polynomial], seed: int = 0, prime: Optional[int] = None) -> int:
    """
    Rank of the Jacobian of (f_1, …, f_r) at a random F_p point.

    In characteristic zero this is the transcendence degree of k[f_1, …, f_r]
    (hence the dimension of the image closure) for a generic point.
    """
    if not fs:
        raise InputError("jacobian_rank needs at least one polynomial")
    ring = fs[0].ring
    p = ring.domain.characteristic or prime or CONFIG.JET_PRIME
    target = ring.with_domain(PrimeField(p))
    reduced = [f.to_ring(target) for f in fs]
    rng = np.random.default_rng(seed)
    point = [int(v) for v in rng.integers(0, p, size=ring.nvars)]
    field = GF(p)
    rows = [[field(int(differentiate(f, j).evaluate(point))) for j in range(ring.nvars)]
            for f in reduced]
    return int(DomainMatrix(rows, (len(rows), ring.nvars), field).rank())
