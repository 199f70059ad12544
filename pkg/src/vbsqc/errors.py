"""Exception hierarchy shared by all modules."""


class VbsqcError(Exception):
    """Base class for every error raised by this package."""


class InvalidEdge(VbsqcError, ValueError):
    pass


class VertexOutOfRange(VbsqcError, IndexError):
    pass


class InvalidDimension(VbsqcError, ValueError):
    pass


class ParseError(VbsqcError, ValueError):
    """Malformed text input. ``line`` is 1-based, or None when not line-specific."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotUnitary(VbsqcError, ValueError):
    pass


class QubitOutOfRange(VbsqcError, IndexError):
    pass


class TooLarge(VbsqcError, ValueError):
    pass


class BadBasis(VbsqcError, ValueError):
    pass


class ZeroProbabilityBranch(VbsqcError, ValueError):
    pass


class DimensionMismatch(VbsqcError, ValueError):
    pass


class InvalidSubset(VbsqcError, ValueError):
    pass


class BadPhase(VbsqcError, ValueError):
    pass


class NoPath(VbsqcError, ValueError):
    pass


class InvalidArity(VbsqcError, ValueError):
    pass


class CannotAbsorb(VbsqcError, ValueError):
    pass


class DegenerateProjection(VbsqcError, RuntimeError):
    pass


class CannotPush(VbsqcError, ValueError):
    pass


class NotClifford(VbsqcError, ValueError):
    pass


class BadForcedOutcomes(VbsqcError, ValueError):
    pass


class InvalidPattern(VbsqcError, ValueError):
    pass


class InvalidCircuit(VbsqcError, ValueError):
    pass
