"""Exception hierarchy shared by the algebra package, the residual module and the CLI."""
from typing import Optional


class AlgebraError(Exception):
    """Base class for every error raised by this project."""


class InputError(AlgebraError, ValueError):
    """The caller broke a contract: bad parameter, malformed text, wrong ring."""


class RingMismatchError(InputError):
    """Two objects that must share a ring context do not."""


class NotMonomialError(InputError):
    """A monomial ideal was required but the ideal is not monomial."""


class ParseError(InputError):
    """Syntax or name error in polynomial or problem-source text."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class BudgetExceededError(AlgebraError):
    """A configured resource limit (step budget, saturation cap, variable cap) was hit."""

    def __init__(self, message: str, limit: Optional[int] = None):
        self.limit = limit
        super().__init__(message)


class ConsistencyError(AlgebraError):
    """Two independent methods disagreed on a result that must be unique."""
