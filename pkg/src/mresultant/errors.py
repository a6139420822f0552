"""Exception types raised across the package."""


class ResultantError(Exception):
    """Base class for all package-specific errors."""


class ContextMismatch(ResultantError, ValueError):
    pass


class DivisionByZero(ResultantError, ZeroDivisionError):
    pass


class ArityMismatch(ResultantError, ValueError):
    pass


class VariableCollision(ResultantError, ValueError):
    pass


class NotHomogeneous(ResultantError, ValueError):
    pass


class IndexOutOfRange(ResultantError, IndexError):
    pass


class DegreeMismatch(ResultantError, ValueError):
    pass


class DimensionGuardExceeded(ResultantError):
    pass


class NotSquare(ResultantError, ValueError):
    pass


class NotBivariate(ResultantError, ValueError):
    pass


class SearchSpaceGuardExceeded(ResultantError):
    pass


class InsufficientFieldPoints(ResultantError):
    pass


class WrongShape(ResultantError, ValueError):
    pass


class NotPrimeField(ResultantError, ValueError):
    pass


class InvalidAssignment(ResultantError, ValueError):
    pass


class FieldTooSmall(ResultantError, ValueError):
    pass


class ModulusGuardExceeded(ResultantError):
    pass


class OutDegreeViolation(ResultantError, ValueError):
    pass


class SpaceGuardExceeded(ResultantError):
    pass


class NondeterministicMachine(ResultantError, ValueError):
    pass


class GuardExceeded(ResultantError):
    pass


class MissingProvenance(ResultantError, ValueError):
    pass


class FormatError(ResultantError, ValueError):
    """Malformed text input; carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
