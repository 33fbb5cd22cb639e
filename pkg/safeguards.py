"""Shared safeguard checks for command inputs and construction parameters."""
from pathlib import Path
from typing import List

from algebra.errors import InputError

SOURCE_SUFFIX = ".ri"
EXPECTED_SUFFIX = ".expected.json"


def validate_source_path(path: Path) -> tuple[bool, str]:
    """
    Validate a problem-source path before reading it.

    Returns:
        (is_valid, message)
    """
    if not path.exists():
        return False, f"source file not found: {path}"
    if not path.is_file():
        return False, f"source path is not a file: {path}"
    if path.suffix != SOURCE_SUFFIX:
        return False, f"expected a {SOURCE_SUFFIX} file, got {path.name}"
    return True, "ok"


def validate_residual_order(t: int, codim_x: int, nvars: int) -> None:
    """
    General sections exist for codim X ≤ t, and codim Y = t needs t ≤ N.

    Raises:
        InputError: if t is outside [codim X, N].
    """
    if t < codim_x:
        raise InputError(
            f"t={t} is below codim X={codim_x}; general t-residual intersections "
            f"are only constructed for t ≥ codim X"
        )
    if t > nvars:
        raise InputError(f"t={t} exceeds the ring dimension {nvars}; codim Y = t is impossible")


def validate_trials(trials: int) -> None:
    if trials < 1:
        raise InputError(f"trials must be ≥ 1, got {trials}")


def discover_corpus_cases(corpus_dir: Path) -> List[Path]:
    """
    Source files of a golden corpus, sorted by case name.

    Raises:
        InputError: if the directory is missing, holds no cases, or a case
            has no committed expectation.
    """
    if not corpus_dir.is_dir():
        raise InputError(f"corpus directory not found: {corpus_dir}")
    sources = sorted(corpus_dir.glob(f"*{SOURCE_SUFFIX}"), key=lambda p: p.stem)
    if not sources:
        raise InputError(f"corpus directory {corpus_dir} holds no {SOURCE_SUFFIX} cases")
    missing = [p.name for p in sources if not expected_path(p).exists()]
    if missing:
        raise InputError(f"cases without {EXPECTED_SUFFIX} files: {', '.join(missing)}")
    return sources


def expected_path(source: Path) -> Path:
    return source.with_name(source.stem + EXPECTED_SUFFIX)
