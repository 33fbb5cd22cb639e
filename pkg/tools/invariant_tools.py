"""Singularity-invariant commands for monomial ideals, plus the jet lct estimate."""
from fractions import Fraction
from typing import Any, Dict

from algebra.invariants import (
    FormalProduct,
    MldResult,
    glct_monomial,
    gr_multiplier_ideal,
    lct_monomial,
    mld_monomial_origin,
    mldmj_origin_monomial,
    multiplier_ideal_monomial,
)
from algebra.jets import lct_jet_estimate
from schema import ideal_to_strings, rational_to_str
from tools.context import CommandContext


LCT_MONOMIAL_COMMAND = {
    "name": "lct-monomial",
    "description": "Exact log canonical threshold of a monomial ideal from its Newton polyhedron.",
    "options": {"ideal": "monomial ideal"},
}

GLCT_MONOMIAL_COMMAND = {
    "name": "glct-monomial",
    "description": "Generalized lct min (Σv + λ·v(aZ)) / v(aX) over monomial valuations.",
    "options": {"ideal": "aX", "by": "aZ", "lam": "λ ≥ 0"},
}

MLD_MONOMIAL_COMMAND = {
    "name": "mld-monomial",
    "description": "Minimal log discrepancy at the origin of a^m (times b^c with --by).",
    "options": {"ideal": "a", "exponent": "m (default 1)", "by": "optional second factor"},
}

MLDMJ_MONOMIAL_COMMAND = {
    "name": "mldmj-monomial",
    "description": "MJ-minimal log discrepancy of X at the origin as mld(0; A, I_X^c).",
    "options": {"ideal": "I_X", "by": "optional factor", "exponent": "its exponent"},
}

MULT_IDEAL_COMMAND = {
    "name": "mult-ideal",
    "description": "Multiplier ideal of a monomial ideal at coefficient c.",
    "options": {"ideal": "monomial ideal", "exponent": "c ≥ 0"},
}

GR_IDEAL_COMMAND = {
    "name": "gr-ideal",
    "description": "Multiplier ideal of I_X^t, compared with I_X^(t−c+1) for coordinate X.",
    "options": {"ideal": "I_X", "t": "t ≥ codim X"},
}

LCT_JETS_COMMAND = {
    "name": "lct-jets",
    "description": "Upper bound on lct from normalized jet-scheme codimensions up to a level.",
    "options": {"ideal": "ideal name", "level": "max level (default 2)",
                "jet_field": "fp | input"},
}


def _mld_outputs(result: MldResult) -> Dict[str, Any]:
    return {
        "minimizer": list(result.minimizer),
        "box_bound": result.box_bound,
        "verified": result.verified,
        "minus_infinity": result.is_minus_infinity,
    }


def execute_lct_monomial(ctx: CommandContext) -> Dict[str, Any]:
    return {"lct": rational_to_str(lct_monomial(ctx.ideal()))}


def execute_glct_monomial(ctx: CommandContext) -> Dict[str, Any]:
    lam = ctx.rational('lam', Fraction(0))
    value = glct_monomial(ctx.ideal(), ctx.second_ideal(required=lam > 0), lam)
    return {"glct": rational_to_str(value), "lambda": rational_to_str(lam)}


def execute_mld_monomial(ctx: CommandContext) -> Dict[str, Any]:
    ideal = ctx.ideal()
    formal = FormalProduct(ideal.ring).times(ideal, ctx.rational('exponent', Fraction(1)))
    second = ctx.second_ideal(required=False)
    if second is not None:
        formal = formal.times(second, Fraction(1))
    result = mld_monomial_origin(formal)
    return {"mld": rational_to_str(result.value), **_mld_outputs(result)}


def execute_mldmj_monomial(ctx: CommandContext) -> Dict[str, Any]:
    ideal_x = ctx.ideal()
    formal = FormalProduct(ideal_x.ring)
    second = ctx.second_ideal(required=False)
    if second is not None:
        formal = formal.times(second, ctx.rational('exponent', Fraction(1)))
    result = mldmj_origin_monomial(ideal_x, formal)
    return {
        "mldmj": rational_to_str(result.value),
        "codim_x": ideal_x.codimension(),
        **_mld_outputs(result),
    }


def execute_mult_ideal(ctx: CommandContext) -> Dict[str, Any]:
    c = ctx.rational('exponent')
    ideal = multiplier_ideal_monomial(ctx.ideal(), c)
    return {"c": rational_to_str(c), "ideal": ideal_to_strings(ideal), "trivial": ideal.is_unit()}


def execute_gr_ideal(ctx: CommandContext) -> Dict[str, Any]:
    ideal_x = ctx.ideal()
    t = ctx.t(ideal_x.codimension())
    report = gr_multiplier_ideal(ideal_x, t)
    return {
        "t": t,
        "ideal": ideal_to_strings(report.ideal),
        "nonsingular": report.nonsingular,
        "expected_power": report.expected_power,
        "matches_power": report.matches_power,
    }


def execute_lct_jets(ctx: CommandContext) -> Dict[str, Any]:
    estimate = lct_jet_estimate(ctx.ideal(), ctx.level(2), ctx.over_prime_field)
    return {
        "estimate": rational_to_str(estimate.estimate),
        "upper_bound": True,
        "minimizing_level": estimate.minimizing_level,
        "complete": estimate.complete,
        "failure": estimate.failure,
        "levels": [
            {
                "level": r.level,
                "variables": r.variable_count,
                "dimension": r.dimension,
                "c_m": rational_to_str(r.normalized_codimension),
            }
            for r in estimate.levels
        ],
    }
