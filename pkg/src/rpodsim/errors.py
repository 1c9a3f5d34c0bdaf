"""Exception types shared across the simulator."""


class RpodError(Exception):
    """Base class for all simulator errors."""


class DegenerateOrbit(RpodError):
    """Raised when a state has no well-defined orbital frame (r x v ~ 0)."""


class EpochMismatch(RpodError):
    """Raised when two states expected at a common epoch disagree."""


class SingularRadius(RpodError):
    """Raised when a position falls inside the guard radius for 1/r^3 terms."""


class StepSizeUnderflow(RpodError):
    """Raised when the adaptive integrator fails to advance the solution."""


class ZeroOffset(RpodError):
    """Raised when a relative orbit is requested with zero radial offset."""


class SingularTransferTime(RpodError):
    """Raised when the targeting system is singular for the requested
    transfer time (e.g. a whole number of orbital periods)."""


class InsufficientWaypoints(RpodError):
    """Raised when a waypoint plan is requested with too few points."""


class UsageError(RpodError):
    """Raised on invalid command-line arguments or configuration."""
