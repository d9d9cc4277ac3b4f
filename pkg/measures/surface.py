"""
Surface measure sampling on body boundaries.

Ellipsoid boundaries are sampled through the sphere parameterization with
importance weights (the area element), so no closed-form area is needed.
Polytope boundaries are sampled exactly: a facet simplex with probability
proportional to its area, then a uniform point in it.
"""

import logging
from dataclasses import dataclass

import numpy as np

from geometry.bodies import ConvexBody, Ellipsoid
from geometry.chords import BoundaryPoint
from geometry.constants import unit_sphere_area
from geometry.errors import UnsupportedSectionError
from geometry.polytopes import Polytope
from measures.flats import WeightedSample
from measures.grassmannian import sample_sphere

logger = logging.getLogger(__name__)

MAX_RIDGE_RESAMPLES = 10


@dataclass(frozen=True)
class SurfaceBatch:
    """Boundary points with outer normals and surface weights.

    The estimator contract is mean(weights * f(points)) -> integral of f over the boundary.
    """

    points: np.ndarray
    normals: np.ndarray
    weights: np.ndarray
    facets: np.ndarray

    def __len__(self) -> int:
        return int(self.points.shape[0])


def _sample_polytope_surface(
    body: Polytope, rng: np.random.Generator, size: int
) -> SurfaceBatch:
    positions, facet_ids, areas = body.simplex_table
    total = float(areas.sum())
    chosen = rng.choice(len(areas), size=size, p=areas / total)
    barycentric = rng.dirichlet(np.ones(positions.shape[1]), size=size)
    points = np.einsum("nk,nkd->nd", barycentric, positions[chosen])
    if body.dim > 1:
        for _ in range(MAX_RIDGE_RESAMPLES):
            _, on_ridge = body.classify_boundary(points)
            if not on_ridge.any():
                break
            redo = np.nonzero(on_ridge)[0]
            logger.debug(f"Resampling {len(redo)} boundary points on ridges")
            fresh = rng.dirichlet(np.ones(positions.shape[1]), size=len(redo))
            points[redo] = np.einsum("nk,nkd->nd", fresh, positions[chosen[redo]])
        else:
            _, on_ridge = body.classify_boundary(points)
            if on_ridge.any():
                logger.warning(
                    f"{int(on_ridge.sum())} boundary points still on ridges after "
                    f"{MAX_RIDGE_RESAMPLES} resamples; their normals are ambiguous"
                )
    facets = facet_ids[chosen]
    return SurfaceBatch(
        points=points,
        normals=body.normals[facets],
        weights=np.full(size, total),
        facets=facets,
    )


def sample_surface_points(body: ConvexBody, rng: np.random.Generator, size: int) -> SurfaceBatch:
    """Weighted boundary points of a body, in the body's own coordinates."""
    if isinstance(body, Polytope):
        return _sample_polytope_surface(body, rng, size)
    if isinstance(body, Ellipsoid):
        if body.dim < 2:
            raise UnsupportedSectionError("Boundary sampling needs dimension >= 2")
        unit_vectors = sample_sphere(rng, size, body.dim)
        points, normals, area_factors = body.boundary_from_sphere(unit_vectors)
        return SurfaceBatch(
            points=points,
            normals=normals,
            weights=unit_sphere_area(body.dim) * area_factors,
            facets=np.full(size, -1),
        )
    raise UnsupportedSectionError(f"No surface sampler for {body!r}")


def sample_surface(body: ConvexBody, rng: np.random.Generator) -> WeightedSample[BoundaryPoint]:
    """One weighted boundary point."""
    batch = sample_surface_points(body, rng, 1)
    facet = int(batch.facets[0])
    point = BoundaryPoint(
        position=batch.points[0],
        normal=batch.normals[0],
        facet_index=facet if facet >= 0 else None,
    )
    return WeightedSample(value=point, weight=float(batch.weights[0]))
