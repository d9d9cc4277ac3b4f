"""
Single-object geometry operations.

Thin wrappers over the batched kernels of the body classes, for callers that
work with one line, point or flat at a time.
"""

import logging
from typing import NamedTuple, Optional

import numpy as np

from geometry.bodies import ConvexBody
from geometry.chords import PROJECTION_TOLERANCE, Chord, chord_angle_arrays
from geometry.errors import NotOnBoundaryError
from geometry.flats import AffineSubspace

logger = logging.getLogger(__name__)

BOUNDARY_TOLERANCE = 1e-9


class EndpointAngles(NamedTuple):
    """Angle data of a segment between two boundary points."""

    alpha_1: float
    alpha_2: float
    phi_0: Optional[float]
    u_1: Optional[np.ndarray]
    u_2: Optional[np.ndarray]


def _check_frame(body: ConvexBody, flat: AffineSubspace) -> None:
    if flat.ambient_dim != body.dim:
        raise ValueError(
            f"Flat lives in dimension {flat.ambient_dim} but the body has dimension {body.dim}"
        )


def line_intersect(body: ConvexBody, line: AffineSubspace) -> Optional[Chord]:
    """Intersect a line with a body.

    Args:
        body: A full-dimensional body
        line: A line in the body's coordinates

    Returns:
        The chord with endpoints and angle data, or None if the line misses the
        interior (tangent lines count as misses)
    """
    if line.dim != 1:
        raise ValueError(f"Expected a line, got a flat of dimension {line.dim}")
    _check_frame(body, line)
    chords = body.intersect_lines(line.base_point[None, :], line.basis)
    if chords.ambiguous[0]:
        logger.debug(f"Line passes through a ridge of {body.body_name}")
    return chords.chord(0)


def normal_at(body: ConvexBody, position: np.ndarray) -> np.ndarray:
    """Outer unit normal at a boundary point.

    Raises:
        NotOnBoundaryError: If the point is off the boundary by more than 1e-9
        AmbiguousNormalError: If the point lies on a polytope ridge
    """
    position = np.asarray(position, dtype=float).reshape(1, -1)
    if body.boundary_residual(position)[0] > BOUNDARY_TOLERANCE:
        raise NotOnBoundaryError(f"Point {position[0]} is not on the boundary of {body!r}")
    return body.normals_at(position)[0]


def plane_section(body: ConvexBody, flat: AffineSubspace) -> Optional[ConvexBody]:
    """The section of a body by a flat, in the flat's intrinsic coordinates.

    Returns None when the flat misses the body. Polytope sections by flats of
    dimension three or more raise UnsupportedSectionError.
    """
    _check_frame(body, flat)
    if not 1 <= flat.dim < body.dim:
        raise ValueError(f"Section dimension must be in [1, {body.dim - 1}], got {flat.dim}")
    return body.section(flat)


def chord_angles(
    body: ConvexBody, endpoint_1: np.ndarray, endpoint_2: np.ndarray
) -> EndpointAngles:
    """Angles of the segment between two distinct boundary points."""
    endpoint_1 = np.asarray(endpoint_1, dtype=float)
    endpoint_2 = np.asarray(endpoint_2, dtype=float)
    if np.linalg.norm(endpoint_2 - endpoint_1) <= 0:
        raise ValueError("Chord endpoints must be distinct")
    normal_1 = normal_at(body, endpoint_1)
    normal_2 = normal_at(body, endpoint_2)
    angles = chord_angle_arrays(
        endpoint_1[None, :], endpoint_2[None, :], normal_1[None, :], normal_2[None, :]
    )
    has_u_1 = bool(angles.cos_1[0] >= PROJECTION_TOLERANCE)
    has_u_2 = bool(angles.cos_2[0] >= PROJECTION_TOLERANCE)
    return EndpointAngles(
        alpha_1=float(np.arcsin(np.clip(angles.sin_1[0], 0.0, 1.0))),
        alpha_2=float(np.arcsin(np.clip(angles.sin_2[0], 0.0, 1.0))),
        phi_0=None if angles.degenerate[0] else float(np.arccos(angles.cos_phi0[0])),
        u_1=angles.u_1[0] if has_u_1 else None,
        u_2=angles.u_2[0] if has_u_2 else None,
    )
