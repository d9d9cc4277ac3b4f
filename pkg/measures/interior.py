"""
Lebesgue measure sampling inside bodies.
"""

from dataclasses import dataclass

import numpy as np

from geometry.bodies import ConvexBody, Ellipsoid
from geometry.errors import UnsupportedSectionError
from geometry.polytopes import Polytope
from measures.flats import WeightedSample
from measures.grassmannian import sample_ball


@dataclass(frozen=True)
class InteriorBatch:
    """Points with weights: mean(weights * f(points)) -> integral of f over the body."""

    points: np.ndarray
    weights: np.ndarray

    def __len__(self) -> int:
        return int(self.points.shape[0])


def sample_interior_points(body: ConvexBody, rng: np.random.Generator, size: int) -> InteriorBatch:
    """Weighted interior points in the body's own coordinates.

    Ellipsoids: affine image of uniform ball points, weight |K|. Polytopes:
    uniform points of the bounding box, weight box volume times the indicator.
    """
    if isinstance(body, Ellipsoid):
        points = body.interior_from_ball(sample_ball(rng, size, body.dim))
        return InteriorBatch(points=points, weights=np.full(size, body.volume()))
    if isinstance(body, Polytope):
        low, high = body.bounding_box
        points = rng.uniform(low, high, size=(size, body.dim))
        box_volume = float(np.prod(high - low))
        weights = np.where(body.contains(points), box_volume, 0.0)
        return InteriorBatch(points=points, weights=weights)
    raise UnsupportedSectionError(f"No interior sampler for {body!r}")


def sample_interior(body: ConvexBody, rng: np.random.Generator) -> WeightedSample[np.ndarray]:
    """One weighted interior point; `hit` is False for rejected box points."""
    batch = sample_interior_points(body, rng, 1)
    weight = float(batch.weights[0])
    return WeightedSample(value=batch.points[0], weight=weight, hit=weight > 0)
