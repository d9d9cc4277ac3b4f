"""
Exact convex-body geometry: chords, normals, sections and simplex volumes.
"""

from geometry.bodies import Ball, ConvexBody, Ellipsoid, SectionQuadrics
from geometry.builtins import load_polytope_file, parse_body_spec
from geometry.chords import BoundaryPoint, Chord, ChordAngles, ChordBatch, chord_angle_arrays
from geometry.constants import blaschke_petkantschin_constant, unit_ball_volume, unit_sphere_area
from geometry.errors import (
    AmbiguousNormalError,
    BodySpecError,
    DegenerateConfigurationError,
    GeometryError,
    NotOnBoundaryError,
    UnsupportedSectionError,
)
from geometry.flats import AffineSubspace
from geometry.operations import (
    EndpointAngles,
    chord_angles,
    line_intersect,
    normal_at,
    plane_section,
)
from geometry.polytopes import FacetRecord, Polytope
from geometry.simplices import simplex_volume, simplex_volumes

__all__ = [
    "AffineSubspace",
    "AmbiguousNormalError",
    "Ball",
    "BodySpecError",
    "BoundaryPoint",
    "Chord",
    "ChordAngles",
    "ChordBatch",
    "ConvexBody",
    "DegenerateConfigurationError",
    "Ellipsoid",
    "EndpointAngles",
    "FacetRecord",
    "GeometryError",
    "NotOnBoundaryError",
    "Polytope",
    "SectionQuadrics",
    "UnsupportedSectionError",
    "blaschke_petkantschin_constant",
    "chord_angle_arrays",
    "chord_angles",
    "line_intersect",
    "load_polytope_file",
    "normal_at",
    "parse_body_spec",
    "plane_section",
    "simplex_volume",
    "simplex_volumes",
    "unit_ball_volume",
    "unit_sphere_area",
]
