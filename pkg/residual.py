"""
General residual intersections and links.

Given generators f = (f_1, …, f_r) of I_X and t ≥ codim X, a seeded t×r
coefficient matrix gives general sections a_i = Σ_j c_ij f_j, the ideals
I_M = ⟨a_1, …, a_t⟩ and I_H = ⟨a_1⋯a_t⟩, and the residual
I_Y = (I_M : I_X^∞). "General" is approximated by random coefficients
plus agreement across extra derived seeds.

Also here:
- the image-dimension emptiness predictor
- generator augmentation by x_i·f_1
- comparison with the plain colon (I_M : I_X)
- the Jacobian singular-locus check on Y
- sweeps over t and desk checks of thresholds under linkage
"""
import logging
import operator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config import CONFIG
from algebra.errors import ConsistencyError, InputError, RingMismatchError
from algebra.groebner import IdealHandle, monomial_exponents, radical_membership
from algebra.ideal_ops import (
    ImplicitizationResult,
    SaturationResult,
    colon,
    implicitize,
    jacobian_minors,
    jacobian_rank,
    saturate,
)
from algebra.invariants import FormalProduct, MldResult, lct_monomial, mld_monomial_origin
from algebra.jets import JetEstimate, lct_jet_estimate
from algebra.poly_core import Coefficient, Domain, Polynomial, Scalar
from safeguards import validate_residual_order, validate_trials
from schema import StabilityReport, TrialOutcome

logger = logging.getLogger(__name__)


# ============================================================================
# Inputs
# ============================================================================

class GeneratorSystem:
    """Ordered generators f_1..f_r of I_X, with I_X and c = codim X cached."""

    def __init__(self, generators: Sequence[Polynomial], name: str = "f"):
        gens = tuple(generators)
        if not gens:
            raise InputError("a generator system needs at least one polynomial")
        ring = gens[0].ring
        if any(g.ring != ring for g in gens):
            raise RingMismatchError("generators must share one ring")
        self.ring = ring
        self.generators = gens
        self.name = name
        self.ideal = IdealHandle(ring, gens)
        if self.ideal.is_zero():
            raise InputError(f"system '{name}' generates the zero ideal; X would be all of A")
        if self.ideal.is_unit():
            raise InputError(f"system '{name}' generates the unit ideal; X would be empty")
        self.codimension: int = self.ideal.codimension()

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f"GeneratorSystem({self.name}: {', '.join(str(g) for g in self.generators)})"


@dataclass(frozen=True)
class CoefficientMatrix:
    rows: Tuple[Tuple[Coefficient, ...], ...]
    seed: Optional[int]
    bound: Optional[int]
    forced: bool = False

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def as_strings(self, domain: Domain) -> List[List[str]]:
        return [[domain.format(c) for c in row] for row in self.rows]


def _seed_entropy(seed: int, *path: int) -> List[int]:
    return [abs(seed), 1 if seed < 0 else 0, *path]


def sample_coefficients(t: int, r: int, seed: int, domain: Domain,
                        bound: Optional[int] = None) -> CoefficientMatrix:
    """
    Seeded t×r matrix from numpy's PCG64: integers in [-B, B] over Q,
    uniform residues over F_p.
    """
    rng = np.random.default_rng(np.random.SeedSequence(_seed_entropy(seed)))
    if domain.characteristic:
        raw = rng.integers(0, domain.characteristic, size=(t, r))
        bound = None
    else:
        bound = bound or CONFIG.SAMPLING_BOUND
        raw = rng.integers(-bound, bound, size=(t, r), endpoint=True)
    rows = tuple(tuple(domain.convert(int(x)) for x in row) for row in raw)
    return CoefficientMatrix(rows, seed, bound)


def derive_trial_seeds(seed: int, trials: int) -> List[int]:
    return [int(np.random.SeedSequence(_seed_entropy(seed, k)).generate_state(1)[0])
            for k in range(1, trials + 1)]


def forced_matrix(rows: Sequence[Sequence[Scalar]], t: int, r: int,
                  domain: Domain) -> CoefficientMatrix:
    """Explicit coefficients, bypassing sampling (degenerate-case tests)."""
    if len(rows) != t or any(len(row) != r for row in rows):
        raise InputError(f"forced matrix must be {t}×{r}")
    return CoefficientMatrix(tuple(tuple(domain.convert(c) for c in row) for row in rows),
                             None, None, forced=True)


# ============================================================================
# Constructions
# ============================================================================

@dataclass(frozen=True)
class GeneralSections:
    matrix: CoefficientMatrix
    sections: Tuple[Polynomial, ...]
    ideal_m: IdealHandle
    ideal_h: IdealHandle


def build_general_sections(fs: GeneratorSystem, t: int, seed: int = 0,
                           matrix: Optional[Sequence[Sequence[Scalar]]] = None) -> GeneralSections:
    """a_i = Σ_j c_ij f_j, I_M = ⟨a_1..a_t⟩, I_H = ⟨a_1⋯a_t⟩."""
    validate_residual_order(t, fs.codimension, fs.ring.nvars)
    domain = fs.ring.domain
    if matrix is None:
        coeffs = sample_coefficients(t, len(fs), seed, domain)
    else:
        coeffs = forced_matrix(matrix, t, len(fs), domain)
    sections = []
    for row in coeffs.rows:
        total = fs.ring.zero()
        for c, f in zip(row, fs.generators):
            total = total + f.scale(c)
        sections.append(total)
    product = reduce(operator.mul, sections)
    return GeneralSections(coeffs, tuple(sections), IdealHandle(fs.ring, sections),
                           IdealHandle(fs.ring, [product]))


def _closure(ideal_m: IdealHandle, ideal_x: IdealHandle,
             cross_check: Optional[bool] = None) -> SaturationResult:
    if not ideal_x.contains_ideal(ideal_m):
        raise InputError("I_M must be contained in I_X")
    return saturate(ideal_m, ideal_x, cross_check=cross_check)


def residual_closure(ideal_m: IdealHandle, ideal_x: IdealHandle) -> IdealHandle:
    """I_Y = (I_M : I_X^∞), the closure of M ∖ X."""
    return _closure(ideal_m, ideal_x).ideal


@dataclass(frozen=True)
class HuComparison:
    colon_ideal: IdealHandle
    colon_codimension: Optional[int]
    ht_ok: bool
    agrees_with_saturation: bool


def hu_colon_residual(ideal_m: IdealHandle, ideal_x: IdealHandle, t: Optional[int] = None,
                      ideal_y: Optional[IdealHandle] = None) -> HuComparison:
    """
    J = (I_M : I_X) with ht J ≥ t ≥ ht I_X, compared set-theoretically with I_Y
    by mutual radical membership. t defaults to the number of generators of I_M.

    J ⊆ I_Y always holds and the two agree off X, so any extra component of
    V(J) lies inside X. Equality needs X to be Cohen-Macaulay (and G_t); two
    planes meeting at a point fail this at the point, and there the colon
    keeps it as an isolated component while the saturation does not.
    """
    if not ideal_x.contains_ideal(ideal_m):
        raise InputError("I_M must be contained in I_X")
    t = len(ideal_m) if t is None else t
    j = colon(ideal_m, ideal_x)
    codim_j = j.codimension()
    ht_ok = (codim_j is None or codim_j >= t) and t >= ideal_x.codimension()
    if ideal_y is None:
        ideal_y = residual_closure(ideal_m, ideal_x)
    agrees = (all(radical_membership(g, ideal_y) for g in j.generators)
              and all(radical_membership(g, j) for g in ideal_y.generators))
    if not agrees:
        logger.warning("colon residual and saturation residual differ set-theoretically; "
                       "V(I_M : I_X) has components inside X")
    return HuComparison(j, codim_j, ht_ok, agrees)


@dataclass(frozen=True)
class ResidualRun:
    system: GeneratorSystem
    t: int
    seed: int
    sections: GeneralSections
    ideal_y: IdealHandle
    saturation_exponent: int
    empty: bool
    dim_y: Optional[int]
    codim_y: Optional[int]
    valid: bool
    stability: StabilityReport
    hu: Optional[HuComparison]

    @property
    def ideal_m(self) -> IdealHandle:
        return self.sections.ideal_m

    @property
    def ideal_h(self) -> IdealHandle:
        return self.sections.ideal_h

    @property
    def stable(self) -> bool:
        return self.stability.stable


def _trial_outcome(fs: GeneratorSystem, t: int, seed: int) -> TrialOutcome:
    sections = build_general_sections(fs, t, seed)
    ideal_y = _closure(sections.ideal_m, fs.ideal, cross_check=False).ideal
    empty = ideal_y.is_unit()
    return TrialOutcome(seed=seed, empty=empty, dim_y=ideal_y.dimension(),
                        codim_y=ideal_y.codimension())


def general_residual(fs: GeneratorSystem, t: int, seed: int = 0, trials: Optional[int] = None,
                     matrix: Optional[Sequence[Sequence[Scalar]]] = None,
                     compare_hu: bool = True) -> ResidualRun:
    """
    Residual run for one seed plus a stability report over ``trials`` derived
    seeds. valid is true when Y is empty or codim Y = t.
    """
    trials = CONFIG.DEFAULT_TRIALS if trials is None else trials
    validate_trials(trials)
    sections = build_general_sections(fs, t, seed, matrix)
    saturation = _closure(sections.ideal_m, fs.ideal)
    ideal_y = saturation.ideal
    empty = ideal_y.is_unit()
    dim_y = ideal_y.dimension()
    codim_y = ideal_y.codimension()
    valid = empty or codim_y == t
    if not valid:
        logger.warning(f"residual: codim Y = {codim_y} differs from t = {t}; run is not valid")

    primary = TrialOutcome(seed=seed, empty=empty, dim_y=dim_y, codim_y=codim_y)
    trial_seeds = derive_trial_seeds(seed, trials)
    with ThreadPoolExecutor(max_workers=min(CONFIG.MAX_WORKERS, len(trial_seeds))) as pool:
        outcomes = list(pool.map(lambda s: _trial_outcome(fs, t, s), trial_seeds))
    stability = StabilityReport.from_outcomes(primary, outcomes)
    if not stability.stable:
        logger.warning(f"residual: trial seeds disagree for t={t}: "
                       f"{[o.signature() for o in outcomes]} vs {primary.signature()}")

    hu = hu_colon_residual(sections.ideal_m, fs.ideal, t, ideal_y) if compare_hu else None
    logger.info(f"residual: t={t} seed={seed} empty={empty} dim_y={dim_y} "
                f"codim_y={codim_y} valid={valid} stable={stability.stable}")
    return ResidualRun(fs, t, seed, sections, ideal_y, saturation.exponent, empty, dim_y,
                       codim_y, valid, stability, hu)


# ============================================================================
# Emptiness predictor and augmentation
# ============================================================================

@dataclass(frozen=True)
class Prediction:
    nonempty: bool
    dim_v: int
    cone: bool
    image: ImplicitizationResult
    jacobian_dim: int


def _predicts_nonempty(dim_v: int, cone: bool, t: int) -> bool:
    return dim_v > t if cone else dim_v >= t


def predict_nonempty(fs: GeneratorSystem, t: int,
                     image: Optional[ImplicitizationResult] = None) -> Prediction:
    """
    Nonempty general t-residual iff dim k[f] ≥ t (V not a cone) or > t (V a cone),
    with V the closure of the image of x ↦ f(x).
    """
    if t < 1:
        raise InputError(f"t must be ≥ 1, got {t}")
    image = image or implicitize(fs.generators)
    rank = jacobian_rank(fs.generators)
    if rank != image.dimension:
        logger.warning(f"predict: Jacobian rank {rank} differs from image dimension "
                       f"{image.dimension}")
    return Prediction(_predicts_nonempty(image.dimension, image.cone, t), image.dimension,
                      image.cone, image, rank)


def augment_generators(fs: GeneratorSystem) -> GeneratorSystem:
    """Append x_i·f_1 for every ring variable x_i; the ideal does not change."""
    first = fs.generators[0]
    extra = [x * first for x in fs.ring.gens()]
    augmented = GeneratorSystem(fs.generators + tuple(extra), name=f"{fs.name}_aug")
    if not augmented.ideal.equals(fs.ideal):
        raise ConsistencyError("augmentation changed the generated ideal")
    return augmented


# ============================================================================
# Singular locus
# ============================================================================

@dataclass(frozen=True)
class SingularLocusReport:
    dim_sing: Optional[int]
    codim_in_y: Optional[int]
    bound: int
    bound_ok: bool
    equidimensional_assumed: bool = True

    @property
    def empty(self) -> bool:
        return self.dim_sing is None


def singular_locus_check(run: ResidualRun) -> SingularLocusReport:
    """
    Sing(Y) = V(I_Y + minors of size codim Y of the Jacobian of I_Y's basis);
    checks codim_Y Sing(Y) ≥ t − c + 4, an empty locus counting as +∞.
    Y is assumed equidimensional.
    """
    if run.empty or not run.valid:
        raise InputError("singular_locus_check needs a nonempty valid run")
    ring = run.ideal_y.ring
    basis = IdealHandle(ring, run.ideal_y.groebner().polynomials)
    minors = jacobian_minors(basis, run.codim_y)
    sing = run.ideal_y + minors
    dim_sing = sing.dimension()
    codim_in_y = None if dim_sing is None else run.dim_y - dim_sing
    bound = run.t - run.system.codimension + 4
    bound_ok = codim_in_y is None or codim_in_y >= bound
    logger.info(f"sing-check: dim Sing(Y) = {dim_sing}, bound {bound}, ok={bound_ok}")
    return SingularLocusReport(dim_sing, codim_in_y, bound, bound_ok)


# ============================================================================
# Sweeps and desk checks
# ============================================================================

@dataclass(frozen=True)
class SweepEntry:
    t: int
    predicted_nonempty: bool
    residual_empty: Optional[bool] = None
    dim_y: Optional[int] = None
    codim_y: Optional[int] = None

    @property
    def confirmed(self) -> Optional[bool]:
        if self.residual_empty is None:
            return None
        return self.residual_empty != self.predicted_nonempty


@dataclass(frozen=True)
class SweepReport:
    system: GeneratorSystem
    dim_v: int
    cone: bool
    entries: Tuple[SweepEntry, ...]

    @property
    def all_predicted_nonempty(self) -> bool:
        return all(e.predicted_nonempty for e in self.entries)

    @property
    def all_confirmed(self) -> bool:
        return all(e.confirmed is not False for e in self.entries)


def nonemptiness_sweep(fs: GeneratorSystem, seed: int = 0, augment: bool = True,
                       residual_ts: Optional[Sequence[int]] = None) -> SweepReport:
    """
    Predictor for every codim X ≤ t ≤ N−1 after augmentation; residual runs
    confirm at ``residual_ts`` (default: t = codim X and t = N−1).
    """
    system = augment_generators(fs) if augment else fs
    c, n = system.codimension, system.ring.nvars
    ts = list(range(c, n))
    confirm = set(residual_ts) if residual_ts is not None else {c, n - 1}
    image = implicitize(system.generators)
    entries = []
    for t in ts:
        predicted = _predicts_nonempty(image.dimension, image.cone, t)
        if t in confirm:
            run = general_residual(system, t, seed, trials=1, compare_hu=False)
            entry = SweepEntry(t, predicted, run.empty, run.dim_y, run.codim_y)
            if entry.confirmed is False:
                logger.warning(f"sweep: predictor says nonempty={predicted} at t={t} "
                               f"but the residual run says empty={run.empty}")
            entries.append(entry)
        else:
            entries.append(SweepEntry(t, predicted))
    return SweepReport(system, image.dimension, image.cone, tuple(entries))


@dataclass(frozen=True)
class ThresholdReport:
    level: Optional[int]
    estimate_x: JetEstimate
    estimate_m: JetEstimate
    estimate_h: Optional[JetEstimate]
    x_at_level: Optional[Fraction]
    m_at_level: Optional[Fraction]
    lct_agree: Optional[bool]
    hypersurface_ratio_ok: Optional[bool]
    lct_x: Optional[Fraction]
    lct_x_exact: bool
    glct_value: Optional[Fraction]
    glct_bound_ok: Optional[bool]
    mld_x: Optional[MldResult] = None
    mld_m: Optional[MldResult] = None
    mld_h: Optional[MldResult] = None

    @property
    def mld_agree(self) -> Optional[bool]:
        if self.mld_x is None:
            return None
        return self.mld_x.value == self.mld_m.value == self.mld_h.value


def _at_level(estimate: JetEstimate, level: Optional[int]) -> Optional[Fraction]:
    for report in estimate.levels:
        if report.level == level:
            return report.normalized_codimension
    return None


def _proper_monomial(ideal: IdealHandle) -> bool:
    exps = monomial_exponents(ideal)
    return bool(exps) and all(any(u) for u in exps)


def threshold_check(run: ResidualRun, max_level: int = 2) -> ThresholdReport:
    """
    Desk checks of thresholds under general residuals:

    - jet lct estimates of I_X and I_M agree at the level minimizing I_X's sequence
    - the estimate for I_H equals the estimate for I_X divided by t
    - lct(X) + (t − c) ≤ t, from the exact monomial lct when I_X is monomial
    - mld(I_X^c) = mld(I_M^t) = mld(I_H^(c/t)) when all three are monomial
    """
    fs, t, c = run.system, run.t, run.system.codimension
    est_x = lct_jet_estimate(fs.ideal, max_level)
    est_m = lct_jet_estimate(run.ideal_m, max_level)
    est_h = None if run.ideal_h.is_zero() else lct_jet_estimate(run.ideal_h, max_level)

    level = est_x.minimizing_level
    x_at, m_at = _at_level(est_x, level), _at_level(est_m, level)
    lct_agree = None if x_at is None or m_at is None else x_at == m_at
    ratio_ok = None
    if est_h is not None and est_h.estimate is not None and est_x.estimate is not None:
        ratio_ok = est_h.estimate == est_x.estimate / t

    exact = _proper_monomial(fs.ideal)
    lct_x = lct_monomial(fs.ideal) if exact else est_x.estimate
    glct_value = None if lct_x is None else lct_x + (t - c)
    glct_ok = None if glct_value is None else glct_value <= t

    mld_x = mld_m = mld_h = None
    if exact and _proper_monomial(run.ideal_m) and _proper_monomial(run.ideal_h):
        ring = fs.ring
        mld_x = mld_monomial_origin(FormalProduct(ring, ((fs.ideal, Fraction(c)),)))
        mld_m = mld_monomial_origin(FormalProduct(ring, ((run.ideal_m, Fraction(t)),)))
        mld_h = mld_monomial_origin(FormalProduct(ring, ((run.ideal_h, Fraction(c, t)),)))

    report = ThresholdReport(level, est_x, est_m, est_h, x_at, m_at, lct_agree, ratio_ok,
                             lct_x, exact, glct_value, glct_ok, mld_x, mld_m, mld_h)
    logger.info(f"threshold-check: level {level}, X {x_at} vs M {m_at}, "
                f"glct {glct_value} ≤ {t}: {glct_ok}")
    return report
