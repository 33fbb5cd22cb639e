"""Pydantic models for command options, run diagnostics and JSON reports."""
import hashlib
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, field_validator

from algebra.groebner import IdealHandle
from algebra.poly_core import GREVLEX, Polynomial

VERSION = "0.1.0"


# ============================================================================
# Serialization helpers
# ============================================================================

def rational_to_str(value: Union[Fraction, int, float, None]) -> Optional[str]:
    """Exact rationals as "p/q" (denominator always present); -∞ as "-inf"."""
    if value is None:
        return None
    if isinstance(value, float):
        if value == float("-inf"):
            return "-inf"
        raise ValueError(f"refusing to serialize float {value} as an exact rational")
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact rational: {text!r}")


def polynomial_sort_key(f: Polynomial):
    lm = f.leading_monomial(GREVLEX)
    return (sum(lm), tuple(-e for e in lm), str(f))


def ideal_to_strings(ideal: IdealHandle) -> List[str]:
    """Reduced grevlex basis, sorted by (degree, lex) of leading monomials."""
    gens = ideal.groebner(GREVLEX).polynomials
    return [str(g) for g in sorted(gens, key=polynomial_sort_key)]


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


def compute_digest(source_text: str, command: str, argv: List[str]) -> str:
    payload = canonical_json({"source": source_text, "command": command, "argv": list(argv)})
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


# ============================================================================
# Command options
# ============================================================================

class CommandOptions(BaseModel):
    """Flags shared by every command; unset values fall back to the source file or CONFIG."""

    t: Optional[int] = Field(None, description="Residual order t")
    seed: Optional[int] = Field(None, description="Primary seed for coefficient sampling")
    trials: Optional[int] = Field(None, description="Extra seeds for the stability report")
    level: Optional[int] = Field(None, description="Jet level (or max level for estimates)")
    lam: Optional[str] = Field(None, description="λ for glct, as an exact rational")
    exponent: Optional[str] = Field(None, description="Exponent (c for multiplier ideals, m for mld)")
    budget: Optional[int] = Field(None, description="Gröbner step budget override")
    ideal: Optional[str] = Field(None, description="Name of the primary ideal")
    by: Optional[str] = Field(None, description="Name of the second ideal (colon, saturate, aZ)")
    system: Optional[str] = Field(None, description="Name of the generator system")
    keep: Optional[List[str]] = Field(None, description="Variables kept by eliminate")
    order: str = Field("grevlex", description="Monomial order for gb")
    jet_field: Optional[str] = Field(None, description="'fp' or 'input' coefficient field for jets")
    augment: bool = Field(False, description="Append x_i*f_1 to the generator system first")

    @field_validator('t')
    @classmethod
    def validate_t(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError(f"--t must be ≥ 1, got {v}")
        return v

    @field_validator('trials', 'budget')
    @classmethod
    def validate_positive(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError(f"must be ≥ 1, got {v}")
        return v

    @field_validator('level')
    @classmethod
    def validate_level(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 0:
            raise ValueError(f"--level must be ≥ 0, got {v}")
        return v

    @field_validator('lam', 'exponent')
    @classmethod
    def validate_rational(cls, v: Optional[str]) -> Optional[str]:
        if v is None:
            return v
        value = parse_rational(v)
        if value < 0:
            raise ValueError(f"must be nonnegative, got {v}")
        return v

    @field_validator('order')
    @classmethod
    def validate_order(cls, v: str) -> str:
        if v not in ("lex", "grevlex"):
            raise ValueError(f"--order must be lex or grevlex, got {v}")
        return v

    @field_validator('jet_field')
    @classmethod
    def validate_jet_field(cls, v: Optional[str]) -> Optional[str]:
        if v is not None and v not in ("fp", "input"):
            raise ValueError(f"--jet-field must be fp or input, got {v}")
        return v


# ============================================================================
# Residual diagnostics
# ============================================================================

class TrialOutcome(BaseModel):
    """Seed-dependent summary of one residual computation."""

    seed: int
    empty: bool
    dim_y: Optional[int] = None
    codim_y: Optional[int] = None

    def signature(self) -> tuple:
        return (self.empty, self.dim_y, self.codim_y)


class StabilityReport(BaseModel):
    primary: TrialOutcome
    trials: List[TrialOutcome] = Field(default_factory=list)
    stable: bool = True

    @classmethod
    def from_outcomes(cls, primary: TrialOutcome, trials: List[TrialOutcome]) -> "StabilityReport":
        stable = all(t.signature() == primary.signature() for t in trials)
        return cls(primary=primary, trials=trials, stable=stable)


# ============================================================================
# Reports
# ============================================================================

class Report(BaseModel):
    """JSON report printed by every command."""

    command: str
    argv: List[str] = Field(default_factory=list)
    inputs_digest: str
    outputs: Dict[str, Any]
    timing_seconds: float = 0.0
    seed: Optional[int] = None
    version: str = VERSION

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = self.model_dump(mode='json')
        if not include_timing:
            data.pop('timing_seconds', None)
        return data

    def to_json(self, include_timing: bool = True) -> str:
        return canonical_json(self.to_dict(include_timing))


class CorpusCaseResult(BaseModel):
    name: str
    command: str
    passed: bool
    diff: Optional[str] = None
    error: Optional[str] = None
    timing_seconds: float = 0.0


class CorpusSummary(BaseModel):
    total: int
    passed: int
    failed: int
    cases: List[CorpusCaseResult]

    @property
    def success(self) -> bool:
        return self.failed == 0

    def to_outputs(self) -> Dict[str, Any]:
        return {
            "total": self.total,
            "passed": self.passed,
            "failed": self.failed,
            "cases": [{"name": c.name, "passed": c.passed} for c in self.cases],
        }
