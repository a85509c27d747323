"""Exception types raised by the simulation modules."""


class AharonovBohmError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateNormalization(AharonovBohmError):
    """The two-slit state cancels to (numerically) zero and cannot be normalized."""


class NonFiniteSample(AharonovBohmError, ValueError):
    """A sampled wavefunction or density contains NaN or Inf."""


class BoundaryLeak(AharonovBohmError):
    """Density reached the guard band of a periodic grid.

    Spectral propagation wraps around the domain, so results are refused
    rather than silently aliased.
    """


class GridMismatch(AharonovBohmError, ValueError):
    pass


class NoFringes(AharonovBohmError):
    """No interference pattern distinguishable from the envelope or noise floor."""


class OpenPath(AharonovBohmError, ValueError):
    pass


class PathIntersectsSolenoid(AharonovBohmError, ValueError):
    pass
