"""Exception types shared across the package."""


class MatchEnergyError(Exception):
    """Base class for all package errors."""


class DomainError(MatchEnergyError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NotFoundError(MatchEnergyError, KeyError):
    """A referenced object (edge, vertex) does not exist."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class CapacityError(MatchEnergyError):
    """Input is larger than a configured engine cap."""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class ResourceError(MatchEnergyError):
    """A memo, time or enumeration budget was exhausted."""


class NumericError(MatchEnergyError, ArithmeticError):
    """Floating-point root extraction failed its consistency check."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class ParseError(MatchEnergyError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
