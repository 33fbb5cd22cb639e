"""Exact commutative-algebra kernels: polynomials, Gröbner bases, ideal constructions, invariants."""
from algebra.errors import (
    AlgebraError,
    BudgetExceededError,
    ConsistencyError,
    InputError,
    NotMonomialError,
    ParseError,
    RingMismatchError,
)
from algebra.poly_core import (
    GREVLEX,
    LEX,
    QQ,
    MonomialOrder,
    Polynomial,
    PrimeField,
    RationalField,
    RingContext,
)
from algebra.groebner import GroebnerBasis, IdealHandle

__all__ = [
    "AlgebraError",
    "BudgetExceededError",
    "ConsistencyError",
    "InputError",
    "NotMonomialError",
    "ParseError",
    "RingMismatchError",
    "GREVLEX",
    "LEX",
    "QQ",
    "MonomialOrder",
    "Polynomial",
    "PrimeField",
    "RationalField",
    "RingContext",
    "GroebnerBasis",
    "IdealHandle",
]
