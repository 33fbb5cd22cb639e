"""Ideal commands: Gröbner bases, dimension, colon, saturation, elimination, images, jets."""
from typing import Any, Dict

from algebra.ideal_ops import colon, eliminate, implicitize, jacobian_rank, saturate
from algebra.jets import jet_ideal
from algebra.poly_core import MonomialOrder
from schema import ideal_to_strings
from tools.context import CommandContext


GB_COMMAND = {
    "name": "gb",
    "description": "Reduced Gröbner basis of an ideal under lex or grevlex.",
    "options": {"ideal": "ideal name", "order": "lex | grevlex"},
}

DIM_COMMAND = {
    "name": "dim",
    "description": "Krull dimension and codimension of R/I; the unit ideal reports empty.",
    "options": {"ideal": "ideal name"},
}

COLON_COMMAND = {
    "name": "colon",
    "description": "Colon ideal (I : J).",
    "options": {"ideal": "I", "by": "J"},
}

SATURATE_COMMAND = {
    "name": "saturate",
    "description": "Saturation (I : J^∞) with the stabilizing exponent.",
    "options": {"ideal": "I", "by": "J"},
}

ELIMINATE_COMMAND = {
    "name": "eliminate",
    "description": "Elimination ideal I ∩ k[keep].",
    "options": {"ideal": "I", "keep": "kept variables"},
}

IMPLICITIZE_COMMAND = {
    "name": "implicitize",
    "description": "Closure of the image of x ↦ f(x): ideal, dimension, cone flag.",
    "options": {"system": "generator system"},
}

JETS_COMMAND = {
    "name": "jets",
    "description": "Level-m jet ideal, its dimension and normalized codimension.",
    "options": {"ideal": "ideal name", "level": "jet level m"},
}


def execute_gb(ctx: CommandContext) -> Dict[str, Any]:
    ideal = ctx.ideal()
    order = MonomialOrder.parse(ctx.options.order)
    gb = ideal.groebner(order)
    return {
        "order": ctx.options.order,
        "basis": [str(g) for g in gb.polynomials],
        "unit": gb.is_unit(),
        "zero": gb.is_zero_ideal(),
    }


def execute_dim(ctx: CommandContext) -> Dict[str, Any]:
    ideal = ctx.ideal()
    dim = ideal.dimension()
    return {
        "dimension": dim,
        "codimension": ideal.codimension(),
        "empty": dim is None,
        "nvars": ideal.ring.nvars,
    }


def execute_colon(ctx: CommandContext) -> Dict[str, Any]:
    result = colon(ctx.ideal(), ctx.second_ideal())
    return {"ideal": ideal_to_strings(result), "unit": result.is_unit()}


def execute_saturate(ctx: CommandContext) -> Dict[str, Any]:
    result = saturate(ctx.ideal(), ctx.second_ideal())
    return {
        "ideal": ideal_to_strings(result.ideal),
        "exponent": result.exponent,
        "unit": result.ideal.is_unit(),
    }


def execute_eliminate(ctx: CommandContext) -> Dict[str, Any]:
    keep = ctx.keep
    result = eliminate(ctx.ideal(), keep)
    return {"keep": keep, "ideal": ideal_to_strings(result)}


def execute_implicitize(ctx: CommandContext) -> Dict[str, Any]:
    system = ctx.system()
    image = implicitize(system.generators)
    return {
        "system": system.name,
        "variables": list(image.ring.variables),
        "ideal": ideal_to_strings(image.ideal),
        "dimV": image.dimension,
        "cone": image.cone,
        "jacobian_rank": jacobian_rank(system.generators, seed=ctx.seed),
    }


def execute_jets(ctx: CommandContext) -> Dict[str, Any]:
    level = ctx.level(1)
    jets = jet_ideal(ctx.ideal(), level)
    dim = jets.dimension()
    return {
        "level": level,
        "variables": list(jets.ring.variables),
        "generators": [str(g) for g in jets.generators],
        "dimension": dim,
        "codimension": jets.codimension(),
    }
