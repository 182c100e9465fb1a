"""Exception types shared across the package."""


class DenseCapError(ValueError):
    """Raised when a dense (2l+1)-dimensional realization is requested above the cap."""


class DegenerateTimeError(ValueError):
    """Raised when t sits at a zero of sin(t/sqrt(2)), where rate certificates degenerate."""


class InsufficientPointsError(ValueError):
    """Raised when a fit window contains fewer than the minimum number of usable points."""


class QualityGateError(ValueError):
    """Raised when points in a fit window fail the truncation quality gate."""
