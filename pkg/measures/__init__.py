"""
Samplers and importance weights for the invariant measures on flats, boundary
surface measure and interior volume.
"""

from geometry.constants import blaschke_petkantschin_constant, unit_ball_volume, unit_sphere_area
from geometry.flats import AffineSubspace
from measures.flats import (
    FlatBatch,
    WeightedSample,
    flats_hit,
    hitting_weight,
    lines_within_flat,
    sample_affine_hitting,
    sample_flats_hitting_ball,
    sample_hitting_flats,
    sample_lines_in_planes,
    sample_lines_within,
    sample_plane_containing_line,
    sample_planes_containing,
)
from measures.grassmannian import (
    haar_orthogonal,
    sample_ball,
    sample_grassmannian,
    sample_rotations,
    sample_sphere,
)
from measures.interior import InteriorBatch, sample_interior, sample_interior_points
from measures.rng import RngStream
from measures.surface import SurfaceBatch, sample_surface, sample_surface_points

__all__ = [
    "AffineSubspace",
    "FlatBatch",
    "InteriorBatch",
    "RngStream",
    "SurfaceBatch",
    "WeightedSample",
    "blaschke_petkantschin_constant",
    "flats_hit",
    "haar_orthogonal",
    "hitting_weight",
    "lines_within_flat",
    "sample_affine_hitting",
    "sample_ball",
    "sample_flats_hitting_ball",
    "sample_grassmannian",
    "sample_hitting_flats",
    "sample_interior",
    "sample_interior_points",
    "sample_lines_in_planes",
    "sample_lines_within",
    "sample_plane_containing_line",
    "sample_planes_containing",
    "sample_rotations",
    "sample_sphere",
    "sample_surface",
    "sample_surface_points",
    "unit_ball_volume",
    "unit_sphere_area",
]
