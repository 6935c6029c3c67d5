"""Exception hierarchy.

Everything raised on purpose by the package derives from :class:`FracvarError`.
The CLI maps :class:`CapacityError` to exit code 2 and every other subclass
to exit code 1.
"""

from __future__ import annotations


class FracvarError(Exception):
    """Base class for all package errors."""


class DomainError(FracvarError, ValueError):
    """An argument lies outside the domain of the operation."""


class ContractError(FracvarError, ValueError):
    """A precondition tying several arguments together is violated."""


class CapacityError(FracvarError):
    """The requested grid or enumeration exceeds the configured budget."""


class ShapeError(FracvarError, ValueError):
    """A sample vector does not have length ``b**n + 1``."""


class FormatError(FracvarError, ValueError):
    """An input file could not be parsed."""


class InvalidWaveError(FracvarError, ValueError):
    pass


class UnsupportedSpecError(FracvarError, ValueError):
    """The weight violates ``0 < psi(1/b) < 1``."""


class UnsupportedSignError(FracvarError, ValueError):
    """The operation is only defined for constant sign sequences."""


class HypothesisError(FracvarError, ValueError):
    """A hypothesis required by a certificate does not hold."""


class NoBracketError(FracvarError):
    """No sign change of the variation slope was found on the p grid."""

    def __init__(self, message: str, table: list[tuple[float, float]]):
        super().__init__(message)
        self.table = table
