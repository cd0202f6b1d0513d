"""
Module dedicated to error handling.

Every exception carries the exit code used by the command line interface.
"""


class BesselZerosError(Exception):
    """
    Exception raised by functions of bessel_zeros.
    """

    exit_code = 5


class ConfigurationError(BesselZerosError):
    """Invalid solver or output settings."""

    exit_code = 2


class DegreeTooLargeError(BesselZerosError):
    """The explicit coefficients of y_n do not fit in the floating point range."""


class SingularDegreeError(BesselZerosError):
    """The closed-form fit coefficients are undefined for this degree."""

    exit_code = 3


class VanishingDenominatorError(SingularDegreeError):
    """A denominator of the rational power-sum expressions is zero."""


class InvalidDegreeError(BesselZerosError, ValueError):
    """A polynomial degree that is not a non-negative integer."""

    exit_code = 2


class IndexOutOfRangeError(BesselZerosError, ValueError):
    """A zero index k outside 1..n."""

    exit_code = 2


class UnsupportedOrderError(BesselZerosError, ValueError):
    """A power-sum order outside {1, 2, 3}."""

    exit_code = 2


class NoConvergenceError(BesselZerosError):
    """An iterative solver exhausted its iterations or its damping range."""

    exit_code = 4


class SingularJacobianError(NoConvergenceError):
    """The linear solve of a Newton step failed."""


class CoincidentPointsError(BesselZerosError):
    """Two charges share the same position."""


class ZeroArgumentError(BesselZerosError):
    """A charge sits on the origin, where the external field is singular."""


class PoleError(BesselZerosError):
    """Evaluation at a pole of a logarithmic derivative or Aberth correction."""


class SingularArgumentError(BesselZerosError):
    """W(z) is undefined at the given argument."""


class ConsistencyError(BesselZerosError):
    """A computed zero set violates a structural property of y_n."""
