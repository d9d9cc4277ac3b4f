"""
Samplers for the motion-invariant measures on affine flats.

The measure mu_{d,l} is normalized so that flats hitting the unit ball have
measure kappa_{d-l}. Flats hitting a ball of radius R about a center c are
drawn as a uniform direction frame plus an offset uniform in the (d-l)-ball
of radius R in the orthogonal complement, so every sample carries the same
weight kappa_{d-l} R^{d-l}; an estimator averages weight * f(E) * hit(E).
"""

import logging
from dataclasses import dataclass
from typing import Generic, Optional, TypeVar

import numpy as np

from geometry.bodies import ConvexBody, Ellipsoid
from geometry.constants import unit_ball_volume
from geometry.errors import UnsupportedSectionError
from geometry.flats import AffineSubspace
from measures.grassmannian import sample_ball, sample_rotations

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass(frozen=True)
class WeightedSample(Generic[T]):
    """A sampled object with its importance weight relative to the target measure."""

    value: T
    weight: float
    hit: bool = True


@dataclass(frozen=True)
class FlatBatch:
    """A batch of l-flats b_i + span(frames[i]) with a common importance weight.

    Attributes:
        bases: (n, d) points on the flats
        frames: (n, l, d) orthonormal direction rows
        weight: Weight of every sample relative to the invariant measure
    """

    bases: np.ndarray
    frames: np.ndarray
    weight: float

    def __len__(self) -> int:
        return int(self.bases.shape[0])

    @property
    def dim(self) -> int:
        return int(self.frames.shape[1])

    @property
    def ambient_dim(self) -> int:
        return int(self.frames.shape[2])

    @property
    def directions(self) -> np.ndarray:
        """Unit directions (n, d) of a batch of lines."""
        if self.dim != 1:
            raise ValueError(f"Flats of dimension {self.dim} have no single direction")
        return self.frames[:, 0, :]

    def flat(self, index: int) -> AffineSubspace:
        return AffineSubspace(basis=self.frames[index], base_point=self.bases[index])

    def to_intrinsic(self, points: np.ndarray) -> np.ndarray:
        """Coordinates (n, k, l) of ambient points (n, k, d) in each flat."""
        return np.einsum("nkd,nld->nkl", points - self.bases[:, None, :], self.frames)

    def to_ambient(self, coords: np.ndarray) -> np.ndarray:
        """Ambient points (n, k, d) of flat coordinates (n, k, l)."""
        return self.bases[:, None, :] + np.einsum("nkl,nld->nkd", coords, self.frames)

    def embedded(self, frame: AffineSubspace) -> "FlatBatch":
        """Re-express flats given in a frame's intrinsic coordinates in ambient ones."""
        return FlatBatch(
            bases=frame.to_ambient(self.bases),
            frames=np.einsum("nlk,kd->nld", self.frames, frame.basis),
            weight=self.weight,
        )


def hitting_weight(codim: int, radius: float) -> float:
    """Measure kappa_{d-l} R^{d-l} of flats hitting a ball of radius R."""
    return unit_ball_volume(codim) * radius**codim


def sample_flats_hitting_ball(
    rng: np.random.Generator, size: int, dim: int, l: int, center: np.ndarray, radius: float
) -> FlatBatch:
    """Flats distributed as mu_{d,l} restricted to those hitting B(center, radius)."""
    if not 1 <= l <= dim - 1:
        raise ValueError(f"Need 1 <= l <= d - 1, got d={dim}, l={l}")
    rotations = sample_rotations(rng, size, dim)
    offsets = sample_ball(rng, size, dim - l, radius)
    bases = np.asarray(center, dtype=float) + np.einsum("nk,nkd->nd", offsets, rotations[:, l:, :])
    return FlatBatch(
        bases=bases, frames=rotations[:, :l, :], weight=hitting_weight(dim - l, radius)
    )


def sample_hitting_flats(
    body: ConvexBody,
    l: int,
    rng: np.random.Generator,
    size: int,
    radius: Optional[float] = None,
) -> FlatBatch:
    """Flats hitting the body's enclosing ball, in the body's own coordinates.

    Args:
        body: The body; its centroid and enclosing radius define the sampling ball
        l: Flat dimension, 1 <= l <= d - 1
        rng: Generator to draw from
        size: Number of flats
        radius: Optional override of the enclosing radius (must still enclose the body)
    """
    radius = body.enclosing_radius if radius is None else radius
    return sample_flats_hitting_ball(rng, size, body.dim, l, body.centroid, radius)


def flats_hit(body: ConvexBody, flats: FlatBatch) -> np.ndarray:
    """Whether each flat meets the interior of the body."""
    if flats.dim == 1:
        return body.intersect_lines(flats.bases, flats.directions).hit
    if isinstance(body, Ellipsoid):
        return body.section_quadrics(flats.bases, flats.frames).valid
    hits = np.zeros(len(flats), dtype=bool)
    for i in range(len(flats)):
        hits[i] = body.section(flats.flat(i)) is not None
    return hits


def sample_lines_within(body: ConvexBody, rng: np.random.Generator, size: int) -> FlatBatch:
    """Lines of the body's own space hitting its enclosing ball, in intrinsic coordinates.

    For a body living in a flat E this realizes mu_{E,1}, normalized the same
    way as mu_{d,1} with E in place of R^d.
    """
    if body.intrinsic_dim < 2:
        raise UnsupportedSectionError(
            f"Lines within a body need intrinsic dimension >= 2, got {body.intrinsic_dim}"
        )
    return sample_hitting_flats(body, 1, rng, size)


def sample_planes_containing(
    bases: np.ndarray, directions: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """Uniform unit vectors u_E orthogonal to each line direction, shape (n, d).

    The plane through the line spanned by {direction, u_E} is distributed as the
    rotation-invariant probability measure on planes containing the line.
    """
    gaussian = rng.standard_normal(directions.shape)
    along = np.einsum("nd,nd->n", gaussian, directions)
    orthogonal = gaussian - along[:, None] * directions
    return orthogonal / np.linalg.norm(orthogonal, axis=1, keepdims=True)


def sample_lines_in_planes(
    planes: FlatBatch, center: np.ndarray, radius: float, rng: np.random.Generator
) -> FlatBatch:
    """One line inside each plane, hitting the disk B(center, radius) ∩ plane.

    The weight is the mu_{E,1} measure 2R of lines in a plane hitting a disk of
    radius R, so it is valid for every plane whose section lies in that disk.
    """
    if planes.dim != 2:
        raise ValueError(f"Expected planes, got flats of dimension {planes.dim}")
    angles = rng.uniform(0.0, 2.0 * np.pi, len(planes))
    cos, sin = np.cos(angles)[:, None], np.sin(angles)[:, None]
    first, second = planes.frames[:, 0, :], planes.frames[:, 1, :]
    directions = cos * first + sin * second
    normals = -sin * first + cos * second
    centers = np.broadcast_to(np.asarray(center, dtype=float), planes.bases.shape)
    projected = planes.to_ambient(planes.to_intrinsic(centers[:, None, :]))[:, 0, :]
    offsets = rng.uniform(-radius, radius, len(planes))
    return FlatBatch(
        bases=projected + offsets[:, None] * normals,
        frames=directions[:, None, :],
        weight=hitting_weight(1, radius),
    )


def sample_affine_hitting(
    body: ConvexBody, l: int, rng: np.random.Generator
) -> WeightedSample[AffineSubspace]:
    """One flat of mu_{d,l} restricted to the enclosing ball, with its hit flag."""
    flats = sample_hitting_flats(body, l, rng, 1)
    hit = bool(flats_hit(body, flats)[0])
    return WeightedSample(value=flats.flat(0), weight=flats.weight, hit=hit)


def sample_plane_containing_line(line: AffineSubspace, rng: np.random.Generator) -> AffineSubspace:
    """A random plane containing the line (d >= 3)."""
    if line.dim != 1:
        raise ValueError(f"Expected a line, got a flat of dimension {line.dim}")
    if line.ambient_dim < 3:
        raise ValueError("Planes containing a line are only random in dimension >= 3")
    u_e = sample_planes_containing(line.base_point[None, :], line.basis, rng)[0]
    return AffineSubspace(basis=np.vstack([line.direction, u_e]), base_point=line.base_point)


def lines_within_flat(
    section_body: ConvexBody, rng: np.random.Generator
) -> WeightedSample[AffineSubspace]:
    """One line of mu_{E,1} for the flat E the body lives in, embedded in ambient coordinates."""
    lines = sample_lines_within(section_body, rng, 1)
    hit = bool(section_body.intersect_lines(lines.bases, lines.directions).hit[0])
    if section_body.ambient_frame is not None:
        lines = lines.embedded(section_body.ambient_frame)
    return WeightedSample(value=lines.flat(0), weight=lines.weight, hit=hit)
