"""Exception taxonomy shared across the package."""


class PtpolarError(ValueError):
    """Base class for all domain errors."""


class ShapeError(PtpolarError):
    """Operand lengths are incompatible."""


class ParameterError(PtpolarError):
    """A parameter is out of its documented range."""


class TriangularityError(ParameterError):
    """A transform entry would fall on or below the diagonal."""


class CapacityError(PtpolarError):
    """The requested computation exceeds a configured size cap."""


class PreconditionError(PtpolarError):
    """A theorem's distance-gap precondition does not hold.

    Carries the measured distances so callers can report the gap.
    """

    def __init__(self, message, d_min=None, second_least=None):
        super().__init__(message)
        self.d_min = d_min
        self.second_least = second_least


class DesignInfeasibleError(PtpolarError):
    """No candidate information index / column combination exists."""


class ConsistencyError(PtpolarError):
    """An internal invariant failed; signals a bug, not bad input."""
