"""Exception types shared across the package."""


class CavityError(Exception):
    """Base class for all package-specific errors."""


class PoleError(CavityError):
    """Raised when a susceptibility is evaluated at (or too close to) a true pole.

    Attributes
    ----------
    omega : float
        The offending angular frequency.
    resonance_index : int
        Integer m such that the pole sits at omega = m*pi/tau.
    """

    def __init__(self, omega, resonance_index, message=None):
        self.omega = omega
        self.resonance_index = resonance_index
        if message is None:
            message = (f"susceptibility pole at omega={omega!r} "
                       f"(resonance index m={resonance_index})")
        super().__init__(message)


class UnsupportedModelError(CavityError):
    """Raised when an operation does not support the given mirror model."""


class RangeError(CavityError):
    """Raised when a tabulated model is evaluated outside its grid span."""


class QuadratureError(CavityError):
    """Raised when a quadrature fails to reach the requested tolerance.

    Carries the achieved tolerance estimate so callers can decide whether
    the partial result is still usable.
    """

    def __init__(self, message, achieved=None):
        self.achieved = achieved
        super().__init__(message)


class ConsistencyError(CavityError):
    """Raised when two independent evaluation routes disagree beyond tolerance."""


class PreconditionError(CavityError):
    """Raised when input data violates a documented precondition."""
