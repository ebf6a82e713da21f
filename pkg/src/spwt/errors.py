"""Exception types shared across the package."""


class SpwtError(Exception):
    """Base class for every package-specific error."""


class DegenerateGeometry(SpwtError):
    """Angles are undefined: coincident ground nodes, or a transmitter
    directly above the node it is being aimed at."""


class DimensionMismatch(SpwtError):
    """Two vectors that must share an array geometry do not."""


class InvalidCorrelation(SpwtError):
    """A correlation magnitude above 1, which unit vectors cannot produce."""


class InfeasibleGeometry(SpwtError):
    """No transmitter position on the requested locus nulls the correlation."""


class InvalidYaw(SpwtError):
    """Yaw aligned with a quarter-turn of the ground axis; both placement
    schemes lose their null equations there."""


class InvalidIndex(SpwtError):
    """Null index that is a multiple of an array dimension; the corresponding
    factor has no zero there."""
