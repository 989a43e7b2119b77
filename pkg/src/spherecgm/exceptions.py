"""Exception types raised across the package."""


class AntipodalPoints(ValueError):
    """Raised when a geodesic between two points is not unique (q = -p)."""


class DegenerateCone(ValueError):
    """Raised for cone generators that do not span a pointed sector."""


class NonConvexPolygon(ValueError):
    """Raised when polygon vertices are not a convex counter-clockwise chain."""


class TooFewVertices(ValueError):
    """Raised when a polygon has fewer than three non-collinear vertices."""


class PointOutsideFeasible(ValueError):
    """Raised when an iterate or candidate lies outside the feasible polygon."""


class LineSearchExhausted(RuntimeError):
    """Raised when no step delta**n with n <= armijo_max_pow satisfies Armijo."""
