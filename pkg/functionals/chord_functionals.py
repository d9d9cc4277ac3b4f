"""
Chord functionals and the Pleijel-type identities for smooth bodies.

Left sides integrate over lines, right sides over pairs of boundary points;
both are weighted means of per-sample contributions run through the sharded
estimation engine.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from functionals.estimates import EstimatorOptions, MCEstimate
from functionals.integrands import PointFunction, TestFunction
from geometry.bodies import ConvexBody, Ellipsoid
from geometry.chords import chord_angle_arrays
from geometry.constants import unit_ball_volume, unit_sphere_area
from geometry.polytopes import Polytope
from measures.flats import sample_flats_hitting_ball, sample_hitting_flats
from measures.surface import SurfaceBatch, sample_surface_points

logger = logging.getLogger(__name__)

# Boundary pairs closer than this are treated as coincident
COINCIDENCE_TOLERANCE = 1e-12
# Samples needing sin(alpha) or a projected normal below this are rejected
ANGLE_TOLERANCE = 1e-9
# 1 - cos(a_1 - a_2) below this is rounding; circles give exactly zero
DEFECT_ROUNDOFF = 1e-12


def chord_integral(
    body: ConvexBody, g: Callable[[np.ndarray], np.ndarray], options: EstimatorOptions
) -> MCEstimate:
    """Estimate the integral of g(|G ∩ K|) over lines, misses contributing 0."""

    def kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        lines = sample_hitting_flats(body, 1, rng, size)
        chords = body.intersect_lines(lines.bases, lines.directions)
        values = np.where(chords.hit, lines.weight * g(chords.lengths), 0.0)
        return values, 0

    return options.run(kernel)


def chord_functional_lhs(
    body: ConvexBody, h: TestFunction, options: EstimatorOptions
) -> MCEstimate:
    """The integral of h(|G ∩ K|) over mu_{d,1}."""
    return chord_integral(body, h.value, options)


@dataclass(frozen=True)
class BoundaryPairs:
    """Independent boundary-point pairs with chord geometry attached."""

    first: SurfaceBatch
    second: SurfaceBatch
    distances: np.ndarray
    coincident: np.ndarray

    @property
    def weights(self) -> np.ndarray:
        return self.first.weights * self.second.weights

    def angles(self):
        return chord_angle_arrays(
            self.first.points, self.second.points, self.first.normals, self.second.normals
        )


def sample_boundary_pairs(body: ConvexBody, rng: np.random.Generator, size: int) -> BoundaryPairs:
    first = sample_surface_points(body, rng, size)
    second = sample_surface_points(body, rng, size)
    distances = np.linalg.norm(second.points - first.points, axis=1)
    return BoundaryPairs(
        first=first,
        second=second,
        distances=distances,
        coincident=distances < COINCIDENCE_TOLERANCE,
    )


def pleijel_prefactor(dim: int) -> float:
    """1 / ((d - 1) omega_d); for d = 2 this is the planar 1 / (2 pi)."""
    return 1.0 / ((dim - 1) * unit_sphere_area(dim))


def pleijel_pair_integral(
    body: ConvexBody, h: TestFunction, options: EstimatorOptions
) -> MCEstimate:
    """The boundary-pair integral of h'(r) / r^{d-2} cos(a_1) cos(a_2) cos(phi_0), unscaled.

    cos(a_1) cos(a_2) cos(phi_0) is the inner product of the normals' projections
    onto the orthogonal complement of the chord, which stays continuous where
    phi_0 itself is undefined. Pairs with a vanishing projection are rejected.
    """
    dim = body.dim

    def kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        pairs = sample_boundary_pairs(body, rng, size)
        angles = pairs.angles()
        rejected = (
            pairs.coincident
            | (angles.cos_1 < ANGLE_TOLERANCE)
            | (angles.cos_2 < ANGLE_TOLERANCE)
        )
        distances = np.where(rejected, 1.0, pairs.distances)
        values = (
            pairs.weights * h.derivative_over_power(distances, dim - 2) * angles.projection_product
        )
        return np.where(rejected, 0.0, values), int(rejected.sum())

    return options.run(kernel)


def _require_smooth(body: ConvexBody, operation: str) -> None:
    if not body.smooth:
        raise ValueError(f"{operation} needs a smooth body, got {body.body_name}")


def pleijel_rhs(
    body: ConvexBody,
    h: TestFunction,
    options: EstimatorOptions,
    prefactor_scale: float = 1.0,
    allow_heavy_tail: bool = False,
) -> MCEstimate:
    """Boundary-pair side of the d-dimensional Pleijel identity.

    (1 / ((d-1) omega_d)) times the pair integral of h'(r)/r^{d-2} cos a_1 cos a_2 cos phi_0.

    Args:
        body: Smooth body in dimension d >= 2
        h: Monomial test function; power >= d - 1 keeps the integrand bounded
        options: Sampling options
        prefactor_scale: Multiplier on the prefactor (1 for the identity itself)
        allow_heavy_tail: Permit powers below d - 1 (the estimator variance may be infinite)
    """
    _require_smooth(body, "The Pleijel identity")
    if h.power < body.dim - 1:
        if not allow_heavy_tail:
            raise ValueError(
                f"Power {h.power} < d - 1 = {body.dim - 1} makes h'(r)/r^(d-2) unbounded"
            )
        logger.warning(
            f"Using t^{h.power} in dimension {body.dim}: the estimator may have infinite variance"
        )
    raw = pleijel_pair_integral(body, h, options)
    return raw.scaled(prefactor_scale * pleijel_prefactor(body.dim))


def pleijel_rhs_2d(body: ConvexBody, h: TestFunction, options: EstimatorOptions) -> MCEstimate:
    """The planar Pleijel pair integral of h'(r) cos a_1 cos a_2, times 1/(2 pi).

    The tangent angles are taken on the same side of the chord, so that
    cos a_1 cos a_2 = <n_1, nu> <n_2, nu> for a unit normal nu of the chord.
    """
    if body.dim != 2:
        raise ValueError(f"The planar Pleijel identity needs d = 2, got {body.dim}")
    return pleijel_rhs(body, h, options)


def cot_product_integral(
    body: ConvexBody, h: TestFunction, options: EstimatorOptions, scale: float = 1.0
) -> MCEstimate:
    """Integral over lines of h'(L) L cot a_1 cot a_2 cos phi_0, times `scale`.

    cot a_1 cot a_2 cos phi_0 = <p_1, p_2> / (sin a_1 sin a_2) with p_i the
    normals' projections orthogonal to the chord. Near-tangent chords and
    polytope chords through ridges are rejected.
    """

    def kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        lines = sample_hitting_flats(body, 1, rng, size)
        chords = body.intersect_lines(lines.bases, lines.directions)
        angles = chords.angles()
        rejected = chords.hit & (
            chords.ambiguous
            | (angles.sin_1 < ANGLE_TOLERANCE)
            | (angles.sin_2 < ANGLE_TOLERANCE)
            | ((chords.facets_1 == chords.facets_2) & (chords.facets_1 >= 0))
        )
        usable = chords.hit & ~rejected
        sines = np.where(usable, angles.sin_1 * angles.sin_2, 1.0)
        lengths = chords.lengths
        values = (
            lines.weight
            * scale
            * h.derivative(lengths)
            * lengths
            * angles.projection_product
            / sines
        )
        return np.where(usable, values, 0.0), int(rejected.sum())

    return options.run(kernel)


def pleijel_cot_rhs(body: ConvexBody, h: TestFunction, options: EstimatorOptions) -> MCEstimate:
    """Planar cotangent form: integral of h'(L) L cot a_1 cot a_2 over lines."""
    if body.dim != 2:
        raise ValueError(f"The planar cotangent identity needs d = 2, got {body.dim}")
    return cot_product_integral(body, h, options)


def ambartzumian_correction(polygon: Polytope, h: TestFunction) -> float:
    """Sum over the sides of a convex polygon of H(side length)."""
    if polygon.dim != 2:
        raise ValueError(f"Expected a polygon, got dimension {polygon.dim}")
    return float(sum(h.antiderivative(facet.area) for facet in polygon.facets))


def isoperimetric_defect(
    body: ConvexBody, options: EstimatorOptions
) -> Tuple[MCEstimate, MCEstimate]:
    """Both sides of |dK|^2 - 4 pi |K| = 2 times the pair integral of sin^2((a_1 - a_2)/2).

    The angles a_i in [0, pi] are measured from a common chord normal nu, so
    cos(a_1 - a_2) = <n_1, nu><n_2, nu> + |<n_1, u>||<n_2, u>|.

    Returns:
        (exact left side, Monte Carlo right side)
    """
    if body.dim != 2:
        raise ValueError(f"The isoperimetric defect is planar, got d = {body.dim}")
    _require_smooth(body, "The isoperimetric defect")
    assert isinstance(body, Ellipsoid)
    perimeter = body.perimeter()
    lhs = MCEstimate.exact(perimeter**2 - 4.0 * math.pi * body.volume())

    def kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        pairs = sample_boundary_pairs(body, rng, size)
        angles = pairs.angles()
        cos_difference = angles.projection_product + angles.sin_1 * angles.sin_2
        gap = 1.0 - np.clip(cos_difference, -1.0, 1.0)
        values = pairs.weights * np.where(gap < DEFECT_ROUNDOFF, 0.0, gap)
        return np.where(pairs.coincident, 0.0, values), int(pairs.coincident.sum())

    return lhs, options.run(kernel)


def zahle_two_point_check(
    body: ConvexBody, f: PointFunction, options: EstimatorOptions
) -> Tuple[MCEstimate, MCEstimate]:
    """Both sides of the two-point Zähle formula.

    lhs: integral over lines of f(x_1, x_2) at the chord endpoints.
    rhs: (1/omega_d) times the pair integral of f sin a_1 sin a_2 / r^{d-1}.
    """
    _require_smooth(body, "The two-point Zähle formula")
    dim = body.dim

    def lines_kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        lines = sample_hitting_flats(body, 1, rng, size)
        chords = body.intersect_lines(lines.bases, lines.directions)
        endpoints = np.stack([chords.endpoints_1, chords.endpoints_2], axis=1)
        return np.where(chords.hit, lines.weight * f(endpoints), 0.0), 0

    def pairs_kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        pairs = sample_boundary_pairs(body, rng, size)
        angles = pairs.angles()
        distances = np.where(pairs.coincident, 1.0, pairs.distances)
        points = np.stack([pairs.first.points, pairs.second.points], axis=1)
        values = pairs.weights * f(points) * angles.sin_1 * angles.sin_2 / distances ** (dim - 1)
        return np.where(pairs.coincident, 0.0, values), int(pairs.coincident.sum())

    lhs = options.substream(0).run(lines_kernel)
    rhs = options.substream(1).run(pairs_kernel).scaled(1.0 / unit_sphere_area(dim))
    return lhs, rhs


def mean_chord_check(body: ConvexBody, options: EstimatorOptions) -> Tuple[MCEstimate, MCEstimate]:
    """The integral of |G ∩ K| over lines against the exact volume |K|."""
    lhs = chord_integral(body, lambda lengths: lengths, options)
    return lhs, MCEstimate.exact(body.volume())


def normalization_check(
    dim: int, l: int, radius: float, enclosing_radius: float, options: EstimatorOptions
) -> Tuple[MCEstimate, MCEstimate]:
    """Measure of l-flats hitting B(0, radius), sampled from a larger ball.

    Returns:
        (estimate, exact kappa_{d-l} radius^{d-l})
    """
    if not 0 < radius <= enclosing_radius:
        raise ValueError("Need 0 < radius <= enclosing radius")
    center = np.zeros(dim)

    def kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        flats = sample_flats_hitting_ball(rng, size, dim, l, center, enclosing_radius)
        # A flat through b with directions V meets the ball iff |b - P_V b| <= radius
        along = np.einsum("nd,nld->nl", flats.bases, flats.frames)
        offsets = flats.bases - np.einsum("nl,nld->nd", along, flats.frames)
        hit = np.linalg.norm(offsets, axis=1) <= radius
        return np.where(hit, flats.weight, 0.0), 0

    exact = unit_ball_volume(dim - l) * radius ** (dim - l)
    return options.run(kernel), MCEstimate.exact(exact)
