"""Command registry: definitions and executors for every algebra command."""
from typing import Any, Callable, Dict, List, Sequence
import logging
from datetime import datetime

from .ideal_tools import (
    GB_COMMAND,
    DIM_COMMAND,
    COLON_COMMAND,
    SATURATE_COMMAND,
    ELIMINATE_COMMAND,
    IMPLICITIZE_COMMAND,
    JETS_COMMAND,
    execute_gb,
    execute_dim,
    execute_colon,
    execute_saturate,
    execute_eliminate,
    execute_implicitize,
    execute_jets,
)
from .residual_tools import (
    RESIDUAL_COMMAND,
    LINK_COMMAND,
    PREDICT_COMMAND,
    AUGMENT_COMMAND,
    HU_COMPARE_COMMAND,
    SING_CHECK_COMMAND,
    SWEEP_COMMAND,
    THRESHOLD_CHECK_COMMAND,
    execute_residual,
    execute_link,
    execute_predict,
    execute_augment,
    execute_hu_compare,
    execute_sing_check,
    execute_sweep,
    execute_threshold_check,
)
from .invariant_tools import (
    LCT_MONOMIAL_COMMAND,
    GLCT_MONOMIAL_COMMAND,
    MLD_MONOMIAL_COMMAND,
    MLDMJ_MONOMIAL_COMMAND,
    MULT_IDEAL_COMMAND,
    GR_IDEAL_COMMAND,
    LCT_JETS_COMMAND,
    execute_lct_monomial,
    execute_glct_monomial,
    execute_mld_monomial,
    execute_mldmj_monomial,
    execute_mult_ideal,
    execute_gr_ideal,
    execute_lct_jets,
)
from .context import CommandContext, add_command_options, options_from_argv, options_from_namespace

from algebra.errors import InputError
from problem_source import ProblemSource
from schema import CommandOptions, Report, compute_digest

logger = logging.getLogger(__name__)


# Command Registry: Maps command names to their definitions
COMMAND_REGISTRY: Dict[str, Dict[str, Any]] = {
    "gb": GB_COMMAND,
    "dim": DIM_COMMAND,
    "colon": COLON_COMMAND,
    "saturate": SATURATE_COMMAND,
    "eliminate": ELIMINATE_COMMAND,
    "implicitize": IMPLICITIZE_COMMAND,
    "jets": JETS_COMMAND,
    "residual": RESIDUAL_COMMAND,
    "link": LINK_COMMAND,
    "predict": PREDICT_COMMAND,
    "augment": AUGMENT_COMMAND,
    "hu-compare": HU_COMPARE_COMMAND,
    "sing-check": SING_CHECK_COMMAND,
    "sweep": SWEEP_COMMAND,
    "threshold-check": THRESHOLD_CHECK_COMMAND,
    "lct-monomial": LCT_MONOMIAL_COMMAND,
    "glct-monomial": GLCT_MONOMIAL_COMMAND,
    "mld-monomial": MLD_MONOMIAL_COMMAND,
    "mldmj-monomial": MLDMJ_MONOMIAL_COMMAND,
    "mult-ideal": MULT_IDEAL_COMMAND,
    "gr-ideal": GR_IDEAL_COMMAND,
    "lct-jets": LCT_JETS_COMMAND,
}


# Command Executors: Maps command names to their executor functions
COMMAND_EXECUTORS: Dict[str, Callable[[CommandContext], Dict[str, Any]]] = {
    "gb": execute_gb,
    "dim": execute_dim,
    "colon": execute_colon,
    "saturate": execute_saturate,
    "eliminate": execute_eliminate,
    "implicitize": execute_implicitize,
    "jets": execute_jets,
    "residual": execute_residual,
    "link": execute_link,
    "predict": execute_predict,
    "augment": execute_augment,
    "hu-compare": execute_hu_compare,
    "sing-check": execute_sing_check,
    "sweep": execute_sweep,
    "threshold-check": execute_threshold_check,
    "lct-monomial": execute_lct_monomial,
    "glct-monomial": execute_glct_monomial,
    "mld-monomial": execute_mld_monomial,
    "mldmj-monomial": execute_mldmj_monomial,
    "mult-ideal": execute_mult_ideal,
    "gr-ideal": execute_gr_ideal,
    "lct-jets": execute_lct_jets,
}


def execute_command(command: str, source: ProblemSource, options: CommandOptions,
                    argv: Sequence[str] = ()) -> Report:
    """
    Execute a command by name against a parsed problem source.

    Dispatches to the registered executor, times it and wraps the outputs in
    a Report. Errors propagate to the caller after being logged.

    Raises:
        InputError: If the command is not registered, or the executor rejects its inputs
    """
    logger.info(f"Executing command: {command}")
    logger.debug(f"Command options: {options.model_dump(exclude_none=True)}")

    if command not in COMMAND_EXECUTORS:
        raise InputError(f"Unknown command: {command}. Available commands: {get_command_names()}")

    start_time = datetime.now()
    ctx = CommandContext(source, options)
    try:
        outputs = COMMAND_EXECUTORS[command](ctx)
    except Exception as e:
        execution_time = (datetime.now() - start_time).total_seconds()
        logger.error(f"Command '{command}' failed after {execution_time:.2f}s: {e}")
        raise

    execution_time = (datetime.now() - start_time).total_seconds()
    logger.info(f"Command '{command}' executed in {execution_time:.2f}s")

    return Report(
        command=command,
        argv=list(argv),
        inputs_digest=compute_digest(source.text, command, list(argv)),
        outputs=outputs,
        timing_seconds=round(execution_time, 3),
        seed=ctx.seed,
    )


def get_command_names() -> List[str]:
    return list(COMMAND_REGISTRY.keys())


def get_command_definition(command: str) -> Dict[str, Any]:
    """
    Raises:
        KeyError: If command is not registered
    """
    return COMMAND_REGISTRY[command]


# Commands by category, for help output
IDEAL_COMMANDS = ["gb", "dim", "colon", "saturate", "eliminate", "implicitize", "jets"]
RESIDUAL_COMMANDS = ["residual", "link", "predict", "augment", "hu-compare", "sing-check",
                     "sweep", "threshold-check"]
INVARIANT_COMMANDS = ["lct-monomial", "glct-monomial", "mld-monomial", "mldmj-monomial",
                      "mult-ideal", "gr-ideal", "lct-jets"]


def get_commands_by_category(category: str) -> List[Dict[str, Any]]:
    """
    Command definitions for one category ("ideal", "residual" or "invariant").

    Raises:
        ValueError: If category is unknown
    """
    category_map = {
        "ideal": IDEAL_COMMANDS,
        "residual": RESIDUAL_COMMANDS,
        "invariant": INVARIANT_COMMANDS,
    }

    if category not in category_map:
        raise ValueError(
            f"Unknown category: {category}. "
            f"Available: {list(category_map.keys())}"
        )

    return [COMMAND_REGISTRY[name] for name in category_map[category]]


__all__ = [
    'COMMAND_REGISTRY',
    'COMMAND_EXECUTORS',
    'IDEAL_COMMANDS',
    'RESIDUAL_COMMANDS',
    'INVARIANT_COMMANDS',
    'CommandContext',
    'add_command_options',
    'options_from_argv',
    'options_from_namespace',
    'execute_command',
    'get_command_names',
    'get_command_definition',
    'get_commands_by_category',
]
