"""Exception types shared across the geometry modules."""


class GeometryError(ValueError):
    """Base class for invalid bodies, points or parameter combinations."""


class DegenerateBodyError(GeometryError):
    """Body has too few faces, zero area, or collapses to lower dimension."""


class ConvexityError(GeometryError):
    """Boundary fails strict convexity; carries the offending parameter."""

    def __init__(self, message: str, where: float | None = None):
        super().__init__(message)
        self.where = where


class DomainError(GeometryError):
    """Query point lies outside the body or on its boundary."""


class SpecError(GeometryError):
    """Malformed body specification (bad field, type or value)."""


class UnsupportedCombinationError(GeometryError):
    """Counter or operation not defined for this body representation."""


class DegenerateConfigurationError(GeometryError):
    """Query sits on a measure-zero locus where the count is ill defined."""


class TooSingularError(GeometryError):
    """Degenerate-sample rate exceeded the resampling budget."""


class InfiniteDiametersError(GeometryError):
    """Polygon has a parallel antipodal edge pair; averages diverge."""

    def __init__(self, message: str, pair: tuple | None = None):
        super().__init__(message)
        self.pair = pair


class SingularFlowError(GeometryError):
    """Flow step would destroy convexity or exhaust the inward margin."""
