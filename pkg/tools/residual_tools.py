"""Residual-intersection commands."""
from typing import Any, Dict, Optional

from residual import (
    GeneratorSystem,
    HuComparison,
    ResidualRun,
    augment_generators,
    general_residual,
    nonemptiness_sweep,
    predict_nonempty,
    singular_locus_check,
    threshold_check,
)
from schema import ideal_to_strings, rational_to_str
from tools.context import CommandContext


RESIDUAL_COMMAND = {
    "name": "residual",
    "description": "General t-residual intersection Y from a seeded coefficient matrix, "
                   "with validity, stability over trial seeds and the colon comparison.",
    "options": {"system": "f", "t": "residual order", "seed": "seed", "trials": "extra seeds",
                "augment": "append x_i*f_1 first"},
}

LINK_COMMAND = {
    "name": "link",
    "description": "General link: the residual run with t = codim X.",
    "options": {"system": "f", "seed": "seed", "trials": "extra seeds"},
}

PREDICT_COMMAND = {
    "name": "predict",
    "description": "Emptiness predictor from the dimension and cone flag of the image of f.",
    "options": {"system": "f", "t": "residual order", "augment": "append x_i*f_1 first"},
}

AUGMENT_COMMAND = {
    "name": "augment",
    "description": "Append x_i*f_1 for every variable; the ideal is unchanged.",
    "options": {"system": "f"},
}

HU_COMPARE_COMMAND = {
    "name": "hu-compare",
    "description": "Colon residual (I_M : I_X) against the saturation residual.",
    "options": {"system": "f", "t": "residual order", "seed": "seed"},
}

SING_CHECK_COMMAND = {
    "name": "sing-check",
    "description": "Singular locus of Y by Jacobian minors and the bound codim_Y Sing(Y) ≥ t−c+4.",
    "options": {"system": "f", "t": "residual order", "seed": "seed",
                "augment": "append x_i*f_1 first"},
}

SWEEP_COMMAND = {
    "name": "sweep",
    "description": "Predictor for codim X ≤ t ≤ N−1 after augmentation, confirmed by "
                   "residual runs at t = codim X and t = N−1.",
    "options": {"system": "f", "seed": "seed"},
}

THRESHOLD_CHECK_COMMAND = {
    "name": "threshold-check",
    "description": "Jet lct estimates of I_X, I_M, I_H and the glct/mld identities of a run.",
    "options": {"system": "f", "t": "residual order", "seed": "seed", "level": "max jet level"},
}


def _system(ctx: CommandContext) -> GeneratorSystem:
    system = ctx.system()
    return augment_generators(system) if ctx.augment else system


def _hu_outputs(hu: Optional[HuComparison]) -> Optional[Dict[str, Any]]:
    if hu is None:
        return None
    return {
        "colon_codim": hu.colon_codimension,
        "colon_unit": hu.colon_ideal.is_unit(),
        "ht_ok": hu.ht_ok,
        "agrees": hu.agrees_with_saturation,
    }


def run_outputs(run: ResidualRun) -> Dict[str, Any]:
    domain = run.system.ring.domain
    return {
        "system": run.system.name,
        "generators": len(run.system),
        "codim_x": run.system.codimension,
        "t": run.t,
        "matrix": run.sections.matrix.as_strings(domain),
        "empty": run.empty,
        "dim_y": run.dim_y,
        "codim_y": run.codim_y,
        "valid": run.valid,
        "stable": run.stable,
        "saturation_exponent": run.saturation_exponent,
        "ideal_y": ideal_to_strings(run.ideal_y),
        "trials": [o.model_dump() for o in run.stability.trials],
        "hu": _hu_outputs(run.hu),
    }


def execute_residual(ctx: CommandContext) -> Dict[str, Any]:
    system = _system(ctx)
    run = general_residual(system, ctx.t(), ctx.seed, ctx.trials)
    return run_outputs(run)


def execute_link(ctx: CommandContext) -> Dict[str, Any]:
    system = _system(ctx)
    run = general_residual(system, ctx.t(system.codimension), ctx.seed, ctx.trials)
    return run_outputs(run)


def execute_predict(ctx: CommandContext) -> Dict[str, Any]:
    system = _system(ctx)
    prediction = predict_nonempty(system, ctx.t())
    return {
        "system": system.name,
        "t": ctx.t(),
        "nonempty": prediction.nonempty,
        "dimV": prediction.dim_v,
        "cone": prediction.cone,
        "jacobian_rank": prediction.jacobian_dim,
    }


def execute_augment(ctx: CommandContext) -> Dict[str, Any]:
    augmented = augment_generators(ctx.system())
    return {
        "system": augmented.name,
        "count": len(augmented),
        "generators": [str(g) for g in augmented.generators],
        "same_ideal": True,
    }


def execute_hu_compare(ctx: CommandContext) -> Dict[str, Any]:
    system = _system(ctx)
    run = general_residual(system, ctx.t(system.codimension), ctx.seed, trials=1)
    outputs = _hu_outputs(run.hu)
    outputs.update({"t": run.t, "empty": run.empty, "codim_y": run.codim_y})
    return outputs


def execute_sing_check(ctx: CommandContext) -> Dict[str, Any]:
    system = _system(ctx)
    run = general_residual(system, ctx.t(), ctx.seed, trials=1, compare_hu=False)
    report = singular_locus_check(run)
    return {
        "t": run.t,
        "codim_x": system.codimension,
        "dim_y": run.dim_y,
        "dim_sing": report.dim_sing,
        "sing_empty": report.empty,
        "codim_in_y": report.codim_in_y,
        "bound": report.bound,
        "bound_ok": report.bound_ok,
        "equidimensional_assumed": report.equidimensional_assumed,
    }


def execute_sweep(ctx: CommandContext) -> Dict[str, Any]:
    report = nonemptiness_sweep(ctx.system(), ctx.seed)
    return {
        "system": report.system.name,
        "codim_x": report.system.codimension,
        "dimV": report.dim_v,
        "cone": report.cone,
        "entries": [
            {
                "t": e.t,
                "predicted_nonempty": e.predicted_nonempty,
                "residual_empty": e.residual_empty,
                "dim_y": e.dim_y,
                "codim_y": e.codim_y,
            }
            for e in report.entries
        ],
        "all_predicted_nonempty": report.all_predicted_nonempty,
        "all_confirmed": report.all_confirmed,
    }


def execute_threshold_check(ctx: CommandContext) -> Dict[str, Any]:
    system = _system(ctx)
    run = general_residual(system, ctx.t(system.codimension), ctx.seed, trials=1,
                           compare_hu=False)
    report = threshold_check(run, ctx.level(2))
    mld = None
    if report.mld_x is not None:
        mld = {
            "x": rational_to_str(report.mld_x.value),
            "m": rational_to_str(report.mld_m.value),
            "h": rational_to_str(report.mld_h.value),
            "agree": report.mld_agree,
        }
    return {
        "t": run.t,
        "level": report.level,
        "estimate_x": rational_to_str(report.estimate_x.estimate),
        "estimate_m": rational_to_str(report.estimate_m.estimate),
        "estimate_h": rational_to_str(report.estimate_h.estimate) if report.estimate_h else None,
        "x_at_level": rational_to_str(report.x_at_level),
        "m_at_level": rational_to_str(report.m_at_level),
        "lct_agree": report.lct_agree,
        "hypersurface_ratio_ok": report.hypersurface_ratio_ok,
        "lct_x": rational_to_str(report.lct_x),
        "lct_x_exact": report.lct_x_exact,
        "glct": rational_to_str(report.glct_value),
        "glct_bound_ok": report.glct_bound_ok,
        "mld": mld,
    }
