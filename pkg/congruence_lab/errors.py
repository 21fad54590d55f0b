#exception hierarchy shared by every congruence_lab module
"""
Errors raised by the exact-arithmetic kernels and the check registry.

The registry turns any CongruenceLabError raised while evaluating a check
into a failed record, so library code raises freely and never prints.
"""


class CongruenceLabError(Exception):
    """Base class for all congruence_lab errors."""


class NonIntegral(CongruenceLabError):
    """A value with p in its denominator was reduced or digit-extracted."""


class PrecisionExceeded(CongruenceLabError):
    """A digit or reduction was requested beyond the available precision."""


class NotAUnit(CongruenceLabError):
    """An inverse was requested for a residue divisible by p."""


class KummerViolation(CongruenceLabError):
    """A difference expected to vanish mod p by Kummer's congruence did not."""


class BaseOutOfRange(CongruenceLabError):
    """A Fermat quotient base outside [1, p-1]."""


class HypothesisOutOfRange(CongruenceLabError):
    """Parameters outside the window where a congruence is stated."""


class WindowInvalid(CongruenceLabError):
    """A convolution window that does not match its family's definition."""


class NotSimpleRoot(CongruenceLabError):
    """Hensel lifting started from a root whose derivative is not a unit."""
