"""
Jet schemes and the jet-codimension estimate of the log canonical threshold.

The level-m jet ideal substitutes x_i(ε) = Σ_j x_i_j·ε^j into every generator
and keeps the coefficients of ε^0..ε^m. lct(I) = min over m of
codim(Jet_m V(I)) / (m + 1); truncating at a finite level gives an upper
bound that is exact once the minimizing level is reached.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from config import CONFIG
from algebra.errors import BudgetExceededError, InputError
from algebra.groebner import IdealHandle
from algebra.poly_core import Polynomial, PrimeField, RingContext

logger = logging.getLogger(__name__)

Series = List[Polynomial]


@dataclass(frozen=True)
class JetLevelReport:
    level: int
    variable_count: int
    dimension: int
    normalized_codimension: Fraction


@dataclass(frozen=True)
class JetEstimate:
    estimate: Optional[Fraction]
    levels: Tuple[JetLevelReport, ...]
    minimizing_level: Optional[int]
    complete: bool
    failure: Optional[str] = None


def jet_ring(ring: RingContext, level: int) -> RingContext:
    """Variables ``{name}_{j}`` for j = 0..level, grouped by level."""
    if level < 0:
        raise InputError(f"jet level must be ≥ 0, got {level}")
    count = ring.nvars * (level + 1)
    if count > CONFIG.JET_VARIABLE_CAP:
        raise BudgetExceededError(
            f"level-{level} jet ring needs {count} variables, cap is {CONFIG.JET_VARIABLE_CAP}",
            CONFIG.JET_VARIABLE_CAP)
    names = tuple(f"{name}_{j}" for j in range(level + 1) for name in ring.variables)
    return RingContext(names, ring.domain)


def _series_mul(a: Series, b: Series) -> Series:
    out = []
    for k in range(len(a)):
        total = a[0].ring.zero()
        for i in range(k + 1):
            if a[i] and b[k - i]:
                total = total + a[i] * b[k - i]
        out.append(total)
    return out


def jet_ideal(ideal: IdealHandle, level: int) -> IdealHandle:
    ring = ideal.ring
    target = jet_ring(ring, level)
    n = ring.nvars
    series = [[target.var(j * n + i) for j in range(level + 1)] for i in range(n)]
    one: Series = [target.one()] + [target.zero()] * level
    powers: Dict[Tuple[int, int], Series] = {}

    def power(i: int, e: int) -> Series:
        if (i, e) not in powers:
            powers[(i, e)] = series[i] if e == 1 else _series_mul(power(i, e - 1), series[i])
        return powers[(i, e)]

    gens: List[Polynomial] = []
    for g in ideal.generators:
        total = [target.zero()] * (level + 1)
        for mono, coeff in g.terms.items():
            term = one
            for i, e in enumerate(mono):
                if e:
                    term = _series_mul(term, power(i, e))
            total = [t + s.scale(coeff) for t, s in zip(total, term)]
        gens.extend(total)
    return IdealHandle(target, gens)


def _level_report(ideal: IdealHandle, level: int) -> JetLevelReport:
    jets = jet_ideal(ideal, level)
    dim = jets.dimension()
    if dim is None:
        raise InputError("jet scheme of a proper ideal came out empty")
    count = jets.ring.nvars
    report = JetLevelReport(level, count, dim, Fraction(count - dim, level + 1))
    logger.debug(f"jets: level {level}, {count} variables, dim {dim}, "
                 f"c_m = {report.normalized_codimension}")
    return report


def lct_jet_estimate(ideal: IdealHandle, max_level: int,
                     over_prime_field: Optional[bool] = None) -> JetEstimate:
    """Minimum of normalized jet codimensions over levels 0..max_level, run concurrently."""
    if max_level < 0:
        raise InputError(f"max level must be ≥ 0, got {max_level}")
    if ideal.is_zero() or ideal.is_unit():
        raise InputError("lct estimates need a proper nonzero ideal")
    use_prime = CONFIG.JETS_OVER_PRIME_FIELD if over_prime_field is None else over_prime_field
    if use_prime and not ideal.ring.domain.characteristic:
        ideal = ideal.to_ring(ideal.ring.with_domain(PrimeField(CONFIG.JET_PRIME)))

    with ThreadPoolExecutor(max_workers=CONFIG.MAX_WORKERS) as pool:
        futures = [pool.submit(_level_report, ideal, m) for m in range(max_level + 1)]
        levels: List[JetLevelReport] = []
        failure = None
        for m, future in enumerate(futures):
            try:
                levels.append(future.result())
            except BudgetExceededError as e:
                failure = f"level {m}: {e}"
                logger.warning(f"jets: stopping at {failure}")
                for rest in futures[m + 1:]:
                    rest.cancel()
                break

    if not levels:
        return JetEstimate(None, (), None, False, failure)
    estimate = min(r.normalized_codimension for r in levels)
    minimizing = next(r.level for r in levels if r.normalized_codimension == estimate)
    return JetEstimate(estimate, tuple(levels), minimizing, failure is None, failure)
