"""
Blaschke-Petkantschin type identities for tuples of interior and boundary points.

Left sides integrate a point function over tuples drawn from the body and its
boundary. Right sides integrate over l-flats E, with the points drawn in the
section E ∩ K (interior points) or on its relative boundary (boundary points,
weighted by 1 / |P_E n_K(x)|), all multiplied by |conv|^{d-l}.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from functionals.chord_functionals import ANGLE_TOLERANCE, chord_integral
from functionals.estimates import EstimatorOptions, MCEstimate
from functionals.integrands import PointFunction
from geometry.bodies import ConvexBody, Ellipsoid
from geometry.constants import blaschke_petkantschin_constant, unit_sphere_area
from geometry.errors import UnsupportedSectionError
from geometry.polytopes import Polytope
from geometry.simplices import simplex_volumes
from measures.flats import FlatBatch, sample_hitting_flats
from measures.grassmannian import sample_ball, sample_sphere
from measures.interior import sample_interior_points
from measures.surface import sample_surface_points

logger = logging.getLogger(__name__)


def section_constant(dim: int, l: int) -> float:
    """(l!)^{d-l} b_{d,l}."""
    return math.factorial(l) ** (dim - l) * blaschke_petkantschin_constant(dim, l)


def _uniform_in_polygon(
    vertices: np.ndarray, rng: np.random.Generator, count: int
) -> Tuple[np.ndarray, float]:
    """Uniform points in a convex polygon through its fan triangulation."""
    center = vertices.mean(axis=0)
    order = np.argsort(np.arctan2(vertices[:, 1] - center[1], vertices[:, 0] - center[0]))
    ordered = vertices[order]
    triangles = np.stack(
        [
            np.broadcast_to(ordered[0], (len(ordered) - 2, 2)),
            ordered[1:-1],
            ordered[2:],
        ],
        axis=1,
    )
    areas = simplex_volumes(triangles)
    total = float(areas.sum())
    chosen = rng.choice(len(areas), size=count, p=areas / total)
    barycentric = rng.dirichlet(np.ones(3), size=count)
    return np.einsum("nk,nkd->nd", barycentric, triangles[chosen]), total


def section_interior_points(
    body: ConvexBody, flats: FlatBatch, rng: np.random.Generator, count: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Uniform points in each section E ∩ K, in ambient coordinates.

    Returns:
        Tuple of (points (n, count, d), section volumes (n,)); misses have volume 0
    """
    size, l = len(flats), flats.dim
    if isinstance(body, Ellipsoid):
        quadrics = body.section_quadrics(flats.bases, flats.frames)
        ball = sample_ball(rng, size * count, l).reshape(size, count, l)
        points = flats.to_ambient(quadrics.interior_from_ball(ball))
        return points, quadrics.volumes()
    if not isinstance(body, Polytope):
        raise UnsupportedSectionError(f"No section sampler for {body!r}")
    if l == 1:
        chords = body.intersect_lines(flats.bases, flats.directions)
        return chords.points_along(rng.random((size, count))), chords.lengths
    if l != 2:
        raise UnsupportedSectionError(f"Polytope sections of dimension {l} are not supported")
    points = np.zeros((size, count, body.dim))
    volumes = np.zeros(size)
    for i in range(size):
        flat = flats.flat(i)
        section = body.section(flat)
        if section is None:
            continue
        coords, volumes[i] = _uniform_in_polygon(section.vertices, rng, count)
        points[i] = flat.to_ambient(coords)
    return points, volumes


def bpf_check(
    body: ConvexBody, l: int, f: PointFunction, options: EstimatorOptions
) -> Tuple[MCEstimate, MCEstimate]:
    """Both sides of the Blaschke-Petkantschin formula for l+1 interior points.

    lhs: integral of f over (l+1)-tuples of points of K.
    rhs: (l!)^{d-l} b_{d,l} times the integral over l-flats of the same integral
    over (E ∩ K)^{l+1}, weighted by |conv|^{d-l}.
    """
    dim = body.dim
    if not 1 <= l <= dim - 1:
        raise ValueError(f"Need 1 <= l <= d - 1, got d={dim}, l={l}")
    constant = section_constant(dim, l)

    def interior_kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        batches = [sample_interior_points(body, rng, size) for _ in range(l + 1)]
        points = np.stack([batch.points for batch in batches], axis=1)
        weights = np.prod([batch.weights for batch in batches], axis=0)
        return weights * f(points), 0

    def flats_kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        flats = sample_hitting_flats(body, l, rng, size)
        points, volumes = section_interior_points(body, flats, rng, l + 1)
        hull = simplex_volumes(points) ** (dim - l)
        values = flats.weight * constant * volumes ** (l + 1) * f(points) * hull
        return np.where(volumes > 0, values, 0.0), 0

    lhs = options.substream(0).run(interior_kernel)
    rhs = options.substream(1).run(flats_kernel)
    return lhs, rhs


def _mixed_lhs_kernel(body: ConvexBody, boundary_count: int, interior_count: int, f: PointFunction):
    def kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        weights = np.ones(size)
        columns = []
        for _ in range(boundary_count):
            surface = sample_surface_points(body, rng, size)
            columns.append(surface.points)
            weights = weights * surface.weights
        for _ in range(interior_count):
            interior = sample_interior_points(body, rng, size)
            columns.append(interior.points)
            weights = weights * interior.weights
        return weights * f(np.stack(columns, axis=1)), 0

    return kernel


def _chord_mixed_kernel(body: ConvexBody, k: int, f: PointFunction):
    """Right side for l = 1: the section boundary is the two chord endpoints."""
    dim = body.dim
    constant = section_constant(dim, 1)
    assignments = list(itertools.product((0, 1), repeat=k))

    def kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        lines = sample_hitting_flats(body, 1, rng, size)
        chords = body.intersect_lines(lines.bases, lines.directions)
        angles = chords.angles()
        sines = np.stack([angles.sin_1, angles.sin_2], axis=1)
        rejected = chords.hit & (chords.ambiguous | (sines.min(axis=1) < ANGLE_TOLERANCE))
        usable = chords.hit & ~rejected
        safe_sines = np.where(usable[:, None], sines, 1.0)
        endpoints = np.stack([chords.endpoints_1, chords.endpoints_2], axis=1)
        interior = chords.points_along(rng.random((size, 2 - k)))
        lengths = chords.lengths
        total = np.zeros(size)
        for assignment in assignments:
            choice = np.array(assignment, dtype=int)
            boundary = endpoints[:, choice, :]
            points = np.concatenate([boundary, interior], axis=1)
            factor = np.prod(1.0 / safe_sines[:, choice], axis=1)
            total += f(points) * simplex_volumes(points) ** (dim - 1) * factor
        values = lines.weight * constant * lengths ** (2 - k) * total
        return np.where(usable, values, 0.0), int(rejected.sum())

    return kernel


def _section_mixed_kernel(body: Ellipsoid, l: int, k: int, f: PointFunction):
    """Right side for l >= 2 on ellipsoids, through the section-boundary parameterization."""
    dim = body.dim
    constant = section_constant(dim, l)
    sphere_area = unit_sphere_area(l)

    def kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        flats = sample_hitting_flats(body, l, rng, size)
        quadrics = body.section_quadrics(flats.bases, flats.frames)
        valid = quadrics.valid
        weights = np.ones(size)
        columns = []
        rejected = np.zeros(size, dtype=bool)
        if k > 0:
            unit_vectors = sample_sphere(rng, size * k, l).reshape(size, k, l)
            coords, _, area_factors = quadrics.boundary_from_sphere(unit_vectors)
            points = flats.to_ambient(coords)
            normals = body.normals_at(points.reshape(-1, dim)).reshape(size, k, dim)
            projected = np.linalg.norm(np.einsum("nld,nkd->nkl", flats.frames, normals), axis=-1)
            rejected = valid & (projected.min(axis=1) < ANGLE_TOLERANCE)
            safe = np.where(rejected[:, None] | ~valid[:, None], 1.0, projected)
            weights = weights * np.prod(sphere_area * area_factors / safe, axis=1)
            columns.append(points)
        if l + 1 - k > 0:
            ball = sample_ball(rng, size * (l + 1 - k), l).reshape(size, l + 1 - k, l)
            columns.append(flats.to_ambient(quadrics.interior_from_ball(ball)))
            weights = weights * quadrics.volumes() ** (l + 1 - k)
        points = np.concatenate(columns, axis=1)
        hull = simplex_volumes(points) ** (dim - l)
        values = flats.weight * constant * weights * f(points) * hull
        usable = valid & ~rejected
        return np.where(usable, values, 0.0), int(rejected.sum())

    return kernel


def mixed_point_check(
    body: ConvexBody, l: int, k: int, f: PointFunction, options: EstimatorOptions
) -> Tuple[MCEstimate, MCEstimate]:
    """Both sides of the mixed interior/boundary point formula.

    lhs: integral of f over k boundary points and l+1-k interior points, in that order.
    rhs: (l!)^{d-l} b_{d,l} times the integral over l-flats of the matching
    section integral, with |conv|^{d-l} and 1/|P_E n| per boundary point.

    k = 0 is the Blaschke-Petkantschin formula; l = 1, k = 2 the two-point
    Zähle formula.
    """
    dim = body.dim
    if not body.smooth:
        raise ValueError(f"The mixed point formula needs a smooth body, got {body.body_name}")
    if not 1 <= l <= dim - 1:
        raise ValueError(f"Need 1 <= l <= d - 1, got d={dim}, l={l}")
    if not 0 <= k <= l + 1:
        raise ValueError(f"Need 0 <= k <= l + 1, got k={k}, l={l}")
    lhs = options.substream(0).run(_mixed_lhs_kernel(body, k, l + 1 - k, f))
    if l == 1:
        kernel = _chord_mixed_kernel(body, k, f)
    else:
        assert isinstance(body, Ellipsoid)
        kernel = _section_mixed_kernel(body, l, k, f)
    return lhs, options.substream(1).run(kernel)


@dataclass(frozen=True)
class CorollaryResult:
    """Mixed boundary/interior moment against the endpoint-weighted chord integral.

    Attributes:
        lhs: Integral of |x_0 - x_1|^n over x_0 in K and x_1 on the boundary
        rhs: The chord side with the derived constant
        chord_integral: The chord side without any constant
        derived_constant: omega_d / (2 (n + d))
        stated_constant: omega_d / (4 (n + d)), the classical statement
        fitted_constant: lhs divided by chord_integral
    """

    lhs: MCEstimate
    rhs: MCEstimate
    chord_integral: MCEstimate
    derived_constant: float
    stated_constant: float
    fitted_constant: MCEstimate


def corollary_check(body: ConvexBody, n: int, options: EstimatorOptions) -> CorollaryResult:
    """The mixed moment of one boundary and one interior point, as a chord functional."""
    if n < 0:
        raise ValueError(f"Moment order must be nonnegative, got {n}")
    dim = body.dim
    f = PointFunction("distance", float(n))

    def chord_kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        lines = sample_hitting_flats(body, 1, rng, size)
        chords = body.intersect_lines(lines.bases, lines.directions)
        angles = chords.angles()
        rejected = chords.hit & (
            chords.ambiguous
            | (angles.sin_1 < ANGLE_TOLERANCE)
            | (angles.sin_2 < ANGLE_TOLERANCE)
        )
        usable = chords.hit & ~rejected
        sin_1 = np.where(usable, angles.sin_1, 1.0)
        sin_2 = np.where(usable, angles.sin_2, 1.0)
        values = lines.weight * chords.lengths ** (n + dim) * (1.0 / sin_1 + 1.0 / sin_2)
        return np.where(usable, values, 0.0), int(rejected.sum())

    lhs = options.substream(0).run(_mixed_lhs_kernel(body, 1, 1, f))
    raw = options.substream(1).run(chord_kernel)
    derived = unit_sphere_area(dim) / (2.0 * (n + dim))
    stated = unit_sphere_area(dim) / (4.0 * (n + dim))
    return CorollaryResult(
        lhs=lhs,
        rhs=raw.scaled(derived),
        chord_integral=raw,
        derived_constant=derived,
        stated_constant=stated,
        fitted_constant=lhs.ratio(raw),
    )


def kingman_check(
    body: ConvexBody, n: int, options: EstimatorOptions
) -> Tuple[MCEstimate, MCEstimate]:
    """Both sides of Kingman's formula for the n-th moment of the interior-pair distance.

    lhs: integral of |x - y|^n over pairs of points of K.
    rhs: omega_d / ((n+d)(n+d+1)) times the integral of |G ∩ K|^{n+d+1} over lines.
    """
    if n < 0:
        raise ValueError(f"Moment order must be nonnegative, got {n}")
    dim = body.dim
    f = PointFunction("distance", float(n))
    lhs = options.substream(0).run(_mixed_lhs_kernel(body, 0, 2, f))
    constant = unit_sphere_area(dim) / ((n + dim) * (n + dim + 1))
    chords = chord_integral(body, lambda lengths: lengths ** (n + dim + 1), options.substream(1))
    return lhs, chords.scaled(constant)


def interior_pair_moment(
    body: ConvexBody, n: float, options: EstimatorOptions, normalized: bool = True
) -> MCEstimate:
    """E|x - y|^n for independent uniform points of K (or the unnormalized integral)."""
    f = PointFunction("distance", float(n))
    integral = options.run(_mixed_lhs_kernel(body, 0, 2, f))
    if not normalized:
        return integral
    return integral.scaled(1.0 / body.volume() ** 2)
