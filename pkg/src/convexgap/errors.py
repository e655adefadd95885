"""Exception hierarchy.

Input and precondition failures derive from ``ConvexGapError`` (a
``ValueError``); numerical failures that are not the caller's fault derive
from ``NumericalError`` (a ``RuntimeError``).
"""


class ConvexGapError(ValueError):
    """Base class for invalid inputs."""


class DomainError(ConvexGapError):
    """A point lies outside the function's interval, or the interval is bad."""


class LengthMismatch(ConvexGapError):
    pass


class OrderError(ConvexGapError):
    """Points were required to be strictly increasing."""


class ConstraintError(ConvexGapError):
    pass


class ToleranceError(ConvexGapError):
    pass


class ParameterError(ConvexGapError):
    pass


class RangeError(ConvexGapError):
    pass


class DomainMismatch(ConvexGapError):
    """Function and kernel live on different intervals."""


class NotConvexError(ConvexGapError):
    """Samples do not pass the nondecreasing-slope certificate."""


class NumericalError(RuntimeError):
    pass


class ConvergenceError(NumericalError):
    pass


class NonFiniteError(NumericalError):
    pass


class CrossCheckError(NumericalError):
    """Two independent routes to the same quantity disagree."""


class PropertyViolation(AssertionError):
    """An inequality that must hold for convex inputs failed."""
