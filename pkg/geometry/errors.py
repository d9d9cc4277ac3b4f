"""
Exceptions raised by the geometry kernels.

Measure-zero degeneracies (ridge hits, tangent chords) are normally rejected and
counted by the samplers; these exceptions surface only from the single-object
operations, where there is no batch to reject from.
"""


class GeometryError(Exception):
    """Base exception for geometry errors."""

    pass


class AmbiguousNormalError(GeometryError):
    """The point lies on a ridge or vertex, so the outer normal is not unique."""

    pass


class NotOnBoundaryError(GeometryError):
    """The point is not on the boundary of the body within tolerance."""

    pass


class UnsupportedSectionError(GeometryError):
    """The requested section or flat dimension is not supported for this body."""

    pass


class DegenerateConfigurationError(GeometryError):
    """A projection needed by the computation vanishes (measure-zero configuration)."""

    pass


class BodySpecError(GeometryError):
    """A body specification string or polytope file could not be parsed."""

    pass
