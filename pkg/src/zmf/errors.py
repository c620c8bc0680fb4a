"""Exception hierarchy shared by all numerical modules."""


class ZmfError(Exception):
    """Base class for all errors raised by this package."""


class PoleError(ZmfError):
    """Evaluation requested too close to a pole of the function."""


class DomainError(ZmfError):
    """Arguments outside the supported domain of a formula."""


class ConvergenceError(ZmfError):
    """A series, quadrature or iteration failed to reach the requested tolerance."""


class EdgeSingularityError(ZmfError):
    """A density was evaluated exactly at a non-evaluable singular abscissa."""


class NearDegenerateParameterError(ZmfError):
    """Parameters too close to a degenerate configuration (e.g. s near an odd
    integer where tan(pi*s/2) blows up); the caller must use the dedicated
    limit formula instead."""


class ContourError(ZmfError):
    """A contour could not be placed (pole pinch, non-separable families,
    or a winding sum that does not round to an integer)."""
