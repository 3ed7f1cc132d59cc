class GridMismatchError(ValueError):
    """Raised when two objects living on different time grids are combined."""


class DegreeMismatchError(ValueError):
    pass


class NotAdaptedError(ValueError):
    """Raised when a non-adapted process is passed where adaptedness is required."""


class NotSelfAdjointError(ValueError):
    pass


class DimensionCapError(ValueError):
    """Raised when the matrix oracle would exceed its configured dimension cap."""
