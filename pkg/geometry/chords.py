"""
Chord data: boundary points, chords and the angle quantities attached to them.

Batched kernels produce a `ChordBatch` of arrays; single chords are unpacked
from it on demand.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from geometry.flats import AffineSubspace

logger = logging.getLogger(__name__)

# Chords shorter than this are tangent lines and count as misses
TANGENCY_TOLERANCE = 1e-12
# Projected normals shorter than this have no direction
PROJECTION_TOLERANCE = 1e-12


@dataclass(frozen=True)
class BoundaryPoint:
    """A point on the boundary of a body with its outer unit normal."""

    position: np.ndarray
    normal: np.ndarray
    facet_index: Optional[int] = None


@dataclass(frozen=True)
class Chord:
    """The chord G ∩ K cut from a body by a line.

    Angles follow the usual conventions: alpha_i is the angle between the line
    and the tangent hyperplane at endpoint i, so sin(alpha_i) = |<n_i, u>|;
    phi_0 is the angle between the normals' projections u_1, u_2 onto the
    orthogonal complement of the line.
    """

    line: AffineSubspace
    endpoint_1: BoundaryPoint
    endpoint_2: BoundaryPoint
    length: float
    alpha_1: float
    alpha_2: float
    phi_0: Optional[float]
    u_1: Optional[np.ndarray]
    u_2: Optional[np.ndarray]

    @property
    def degenerate(self) -> bool:
        """True when a projected normal vanishes and phi_0 is undefined."""
        return self.phi_0 is None


@dataclass(frozen=True)
class ChordAngles:
    """Vectorized angle data for a batch of chords.

    `projections_i` are n_i - <n_i, u> u (unnormalized), whose norms are
    cos(alpha_i); their inner product equals cos(a_1) cos(a_2) cos(phi_0).
    """

    directions: np.ndarray
    sin_1: np.ndarray
    sin_2: np.ndarray
    projections_1: np.ndarray
    projections_2: np.ndarray
    degenerate: np.ndarray

    @property
    def cos_1(self) -> np.ndarray:
        return np.linalg.norm(self.projections_1, axis=-1)

    @property
    def cos_2(self) -> np.ndarray:
        return np.linalg.norm(self.projections_2, axis=-1)

    @property
    def projection_product(self) -> np.ndarray:
        """cos(alpha_1) cos(alpha_2) cos(phi_0), continuous across degenerate chords."""
        return np.einsum("nd,nd->n", self.projections_1, self.projections_2)

    @property
    def u_1(self) -> np.ndarray:
        return _safe_normalize(self.projections_1)

    @property
    def u_2(self) -> np.ndarray:
        return _safe_normalize(self.projections_2)

    @property
    def cos_phi0(self) -> np.ndarray:
        """cos(phi_0) clamped to [-1, 1]; NaN where degenerate."""
        cosine = np.clip(np.einsum("nd,nd->n", self.u_1, self.u_2), -1.0, 1.0)
        return np.where(self.degenerate, np.nan, cosine)


def _safe_normalize(vectors: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(vectors, axis=-1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        unit = vectors / norms
    return np.where(norms > PROJECTION_TOLERANCE, unit, 0.0)


def chord_angle_arrays(
    points_1: np.ndarray, points_2: np.ndarray, normals_1: np.ndarray, normals_2: np.ndarray
) -> ChordAngles:
    """Angle data for segments [x_1, x_2] with outer normals n_1, n_2 at the ends.

    Works for chords of a body and for independent boundary-point pairs alike;
    the direction is u = (x_2 - x_1) / |x_2 - x_1|.
    """
    difference = points_2 - points_1
    lengths = np.linalg.norm(difference, axis=-1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        directions = np.where(lengths > 0, difference / lengths, 0.0)
    along_1 = np.einsum("nd,nd->n", normals_1, directions)
    along_2 = np.einsum("nd,nd->n", normals_2, directions)
    projections_1 = normals_1 - along_1[:, None] * directions
    projections_2 = normals_2 - along_2[:, None] * directions
    degenerate = (np.linalg.norm(projections_1, axis=-1) < PROJECTION_TOLERANCE) | (
        np.linalg.norm(projections_2, axis=-1) < PROJECTION_TOLERANCE
    )
    return ChordAngles(
        directions=directions,
        sin_1=np.abs(along_1),
        sin_2=np.abs(along_2),
        projections_1=projections_1,
        projections_2=projections_2,
        degenerate=degenerate,
    )


@dataclass(frozen=True)
class ChordBatch:
    """Intersections of a batch of lines b + t u (|u| = 1) with a body.

    Attributes:
        bases: (n, d) points on the lines
        directions: (n, d) unit directions
        hit: (n,) whether the line meets the interior
        t_enter, t_exit: (n,) line parameters of the endpoints (0 on misses)
        normals_1, normals_2: (n, d) outer normals at the endpoints (0 on misses)
        facets_1, facets_2: (n,) facet indices for polytopes, -1 otherwise
        ambiguous: (n,) an endpoint lies on a ridge (polytopes only)
    """

    bases: np.ndarray
    directions: np.ndarray
    hit: np.ndarray
    t_enter: np.ndarray
    t_exit: np.ndarray
    normals_1: np.ndarray
    normals_2: np.ndarray
    facets_1: np.ndarray
    facets_2: np.ndarray
    ambiguous: np.ndarray

    def __len__(self) -> int:
        return int(self.bases.shape[0])

    @property
    def lengths(self) -> np.ndarray:
        return np.where(self.hit, self.t_exit - self.t_enter, 0.0)

    @property
    def endpoints_1(self) -> np.ndarray:
        return self.bases + self.t_enter[:, None] * self.directions

    @property
    def endpoints_2(self) -> np.ndarray:
        return self.bases + self.t_exit[:, None] * self.directions

    def angles(self) -> ChordAngles:
        """Angle data of every chord in the batch (meaningless on misses)."""
        return chord_angle_arrays(
            self.endpoints_1, self.endpoints_2, self.normals_1, self.normals_2
        )

    def points_along(self, fractions: np.ndarray) -> np.ndarray:
        """Points at the given fractions (n, k) of each chord, shape (n, k, d)."""
        t = self.t_enter[:, None] + fractions * (self.t_exit - self.t_enter)[:, None]
        return self.bases[:, None, :] + t[:, :, None] * self.directions[:, None, :]

    def embedded(self, frame: AffineSubspace) -> "ChordBatch":
        """Re-express chords computed in a flat's intrinsic coordinates in ambient ones."""
        return ChordBatch(
            bases=frame.to_ambient(self.bases),
            directions=frame.vectors_to_ambient(self.directions),
            hit=self.hit,
            t_enter=self.t_enter,
            t_exit=self.t_exit,
            normals_1=frame.vectors_to_ambient(self.normals_1),
            normals_2=frame.vectors_to_ambient(self.normals_2),
            facets_1=self.facets_1,
            facets_2=self.facets_2,
            ambiguous=self.ambiguous,
        )

    def chord(self, index: int) -> Optional[Chord]:
        """Unpack one chord, or None if the line missed the body."""
        if not self.hit[index]:
            return None
        angles = chord_angle_arrays(
            self.endpoints_1[index : index + 1],
            self.endpoints_2[index : index + 1],
            self.normals_1[index : index + 1],
            self.normals_2[index : index + 1],
        )
        degenerate = bool(angles.degenerate[0])
        has_u_1 = bool(angles.cos_1[0] >= PROJECTION_TOLERANCE)
        has_u_2 = bool(angles.cos_2[0] >= PROJECTION_TOLERANCE)
        facet_1 = int(self.facets_1[index])
        facet_2 = int(self.facets_2[index])
        return Chord(
            line=AffineSubspace.line(self.bases[index], self.directions[index]),
            endpoint_1=BoundaryPoint(
                position=self.endpoints_1[index],
                normal=self.normals_1[index],
                facet_index=facet_1 if facet_1 >= 0 else None,
            ),
            endpoint_2=BoundaryPoint(
                position=self.endpoints_2[index],
                normal=self.normals_2[index],
                facet_index=facet_2 if facet_2 >= 0 else None,
            ),
            length=float(self.lengths[index]),
            alpha_1=float(np.arcsin(np.clip(angles.sin_1[0], 0.0, 1.0))),
            alpha_2=float(np.arcsin(np.clip(angles.sin_2[0], 0.0, 1.0))),
            phi_0=None if degenerate else float(np.arccos(angles.cos_phi0[0])),
            u_1=angles.u_1[0] if has_u_1 else None,
            u_2=angles.u_2[0] if has_u_2 else None,
        )
