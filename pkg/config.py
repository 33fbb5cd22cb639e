"""Configuration management for the residual-intersection toolkit."""
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings
from sympy import isprime


class Config(BaseSettings):
    """Application configuration using Pydantic BaseSettings."""

    LOG_LEVEL: str = Field("INFO", description="Logging level")

    # Gröbner engine
    GB_STEP_BUDGET: int = Field(
        10_000_000,
        description="Reduction steps allowed per Gröbner basis before a budget error"
    )
    GB_SELF_CHECK: bool = Field(
        False,
        description="Verify that every S-polynomial reduces to zero after each basis"
    )

    # Ideal constructions
    SATURATION_MAX_STEPS: int = Field(50, description="Colon iterations before saturation gives up")
    SATURATION_CROSS_CHECK: bool = Field(
        True,
        description="Compare iterated-colon saturation with the auxiliary-variable method"
    )

    # Residual intersections
    SAMPLING_BOUND: int = Field(100, description="Coefficients over Q are drawn from [-B, B]")
    DEFAULT_TRIALS: int = Field(3, description="Extra seeds used by the stability report")

    # Jets and invariants
    JET_PRIME: int = Field(32003, description="Prime used for jet-scheme computations")
    JETS_OVER_PRIME_FIELD: bool = Field(
        True,
        description="Run jet computations over F_p (False keeps the input field)"
    )
    JET_VARIABLE_CAP: int = Field(40, description="Largest jet ring, in variables")
    NEWTON_MAX_DIMENSION: int = Field(6, description="Largest ambient dimension for Newton polyhedra")
    MLD_SEARCH_POINT_CAP: int = Field(
        2_000_000,
        description="Most lattice points visited by the mld box search"
    )

    # Execution
    MAX_WORKERS: int = Field(4, description="Worker cap for trial seeds, jet levels and corpus cases")
    CORPUS_DIR: str = Field("corpus", description="Directory holding the golden corpus")

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "case_sensitive": True,
    }

    @field_validator(
        'GB_STEP_BUDGET', 'SATURATION_MAX_STEPS', 'SAMPLING_BOUND', 'DEFAULT_TRIALS',
        'JET_VARIABLE_CAP', 'NEWTON_MAX_DIMENSION', 'MLD_SEARCH_POINT_CAP', 'MAX_WORKERS'
    )
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Budgets, caps and counts must be positive."""
        if v < 1:
            raise ValueError(f"must be a positive integer, got {v}")
        return v

    @field_validator('JET_PRIME')
    @classmethod
    def validate_prime(cls, v: int) -> int:
        """The jet field must be F_p for an odd prime p."""
        if v < 3 or not isprime(v):
            raise ValueError(f"JET_PRIME must be an odd prime, got {v}")
        return v


# Global configuration instance
CONFIG = Config()
