"""Exception hierarchy for the poncelet package."""


class PonceletError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateConic(PonceletError):
    """Conic matrix has rank < 3 where a nondegenerate conic is required."""


class ContainedLine(PonceletError):
    """Line lies entirely on a degenerate conic."""


class NoFeatures(PonceletError):
    """Metric features requested for a degenerate conic class."""


class Unsupported(PonceletError):
    """Operation not available for the requested N or target."""


class ClosureViolation(PonceletError):
    """Configuration does not close after N transverse steps."""


class NoTangent(PonceletError):
    """No real tangent line exists from the given point."""


class DegenerateChord(PonceletError):
    """Tangent chord meets the outer conic only at the current point."""


class BadBracket(PonceletError):
    """Bisection bracket does not straddle a sign change."""


class SingularParameter(PonceletError):
    """Family parameter falls on the singular set of a parametrization."""


class OutOfRange(PonceletError):
    """Parameter outside the real domain of a closed-form expression."""


class DegenerateTriangle(PonceletError):
    """Triangle with (near-)zero area where a proper triangle is required."""


class UnboundedInput(PonceletError):
    """A vertex at infinity was passed to a finite-only computation."""


class DegeneratePolygon(PonceletError):
    """Polygon with zero total area/length for a weighted centroid."""


class DegenerateFit(PonceletError):
    """Design matrix is rank-deficient; no meaningful fit exists."""


class EmptyTrace(PonceletError):
    """Every grid point fell in the singular set; nothing was sampled."""


class UnboundedPolygon(PonceletError):
    """Polygon has a vertex at infinity; sample must be skipped."""
