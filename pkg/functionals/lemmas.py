"""
Checks of the auxiliary facts behind the multidimensional Pleijel identity.

The flag check integrates the same line functional in both orders over pairs
(line G, plane E ⊇ G). The cotangent check compares, at the endpoints of a
chord, the angle with the tangent of a planar section against the angle with
the tangent hyperplane. The remaining checks are the sphere and ball integrals
used to average over the planes containing a line.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy import integrate

from functionals.estimates import EstimatorOptions, MCEstimate
from functionals.integrands import TestFunction
from geometry.bodies import ConvexBody
from geometry.errors import DegenerateConfigurationError
from geometry.flats import AffineSubspace
from geometry.operations import normal_at, plane_section
from measures.flats import (
    sample_hitting_flats,
    sample_lines_in_planes,
    sample_planes_containing,
)
from measures.grassmannian import sample_sphere

logger = logging.getLogger(__name__)

PLANE_WEIGHTS = ("one", "tilt")
DEGENERACY_TOLERANCE = 1e-12


def plane_weight(kind: str, frames: np.ndarray) -> np.ndarray:
    """g(E) for planes with direction frames (n, 2, d): 1, or |P_E e_1|^2 for `tilt`."""
    if kind == "one":
        return np.ones(frames.shape[0])
    if kind == "tilt":
        return (frames[:, :, 0] ** 2).sum(axis=1)
    raise ValueError(f"Unknown plane weight '{kind}', expected one of {PLANE_WEIGHTS}")


def flag_fubini_check(
    body: ConvexBody, h: TestFunction, options: EstimatorOptions, plane_weight_kind: str = "one"
) -> Tuple[MCEstimate, MCEstimate]:
    """The double integral of g(E) h(|G ∩ K|) over flags G ⊂ E, in both orders.

    Order 1 integrates planes E over mu_{d,2}, then lines G in E over mu_{E,1}.
    Order 2 integrates lines G over mu_{d,1}, then averages over the planes
    containing G with the rotation-invariant probability measure.
    """
    dim = body.dim
    if dim < 3:
        raise ValueError(f"Planes containing a line are only random in dimension >= 3, got {dim}")
    if plane_weight_kind not in PLANE_WEIGHTS:
        raise ValueError(f"Unknown plane weight '{plane_weight_kind}'")
    center, radius = body.centroid, body.enclosing_radius

    def planes_first(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        planes = sample_hitting_flats(body, 2, rng, size)
        lines = sample_lines_in_planes(planes, center, radius, rng)
        chords = body.intersect_lines(lines.bases, lines.directions)
        weight = planes.weight * lines.weight * plane_weight(plane_weight_kind, planes.frames)
        return np.where(chords.hit, weight * h.value(chords.lengths), 0.0), 0

    def lines_first(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        lines = sample_hitting_flats(body, 1, rng, size)
        chords = body.intersect_lines(lines.bases, lines.directions)
        u_e = sample_planes_containing(lines.bases, lines.directions, rng)
        frames = np.stack([lines.directions, u_e], axis=1)
        weight = lines.weight * plane_weight(plane_weight_kind, frames)
        return np.where(chords.hit, weight * h.value(chords.lengths), 0.0), 0

    return options.substream(0).run(planes_first), options.substream(1).run(lines_first)


@dataclass(frozen=True)
class CotLemmaResult:
    """Both sides of the cotangent relation at each chord endpoint."""

    lhs_1: float
    rhs_1: float
    lhs_2: float
    rhs_2: float

    @property
    def residual(self) -> float:
        return max(abs(self.lhs_1 - self.rhs_1), abs(self.lhs_2 - self.rhs_2))


def _section_cotangent(
    body: ConvexBody, start: np.ndarray, end: np.ndarray, u_e: np.ndarray
) -> float:
    """cot of the angle between the chord from `start` and the section tangent at `start`.

    The tangent is oriented to the u_E side of the chord.
    """
    direction = (end - start) / np.linalg.norm(end - start)
    plane = AffineSubspace(basis=np.stack([direction, u_e]), base_point=start)
    section = plane_section(body, plane)
    if section is None:
        raise DegenerateConfigurationError("Plane misses the body")
    normal = section.normals_at(plane.to_intrinsic(start)[None, :])[0]
    tangent = np.array([-normal[1], normal[0]])
    if tangent[1] < 0:
        tangent = -tangent
    if tangent[1] < DEGENERACY_TOLERANCE:
        raise DegenerateConfigurationError("Section tangent is parallel to the chord")
    return float(tangent[0] / tangent[1])


def _normal_cotangent(normal: np.ndarray, direction: np.ndarray, u_e: np.ndarray) -> float:
    """(u, u_E) cot(alpha) = <n, u_E> / |<n, direction>|."""
    along = abs(float(normal @ direction))
    if along < DEGENERACY_TOLERANCE:
        raise DegenerateConfigurationError("Normal is orthogonal to the chord")
    return float(normal @ u_e) / along


def cot_lemma_check(
    body: ConvexBody, endpoint_1: np.ndarray, endpoint_2: np.ndarray, plane: AffineSubspace
) -> CotLemmaResult:
    """Both sides of cot(psi_i) = (u_i, u_E) cot(alpha_i) for a chord and a plane through it.

    Args:
        body: Smooth body in dimension >= 3
        endpoint_1, endpoint_2: Distinct boundary points
        plane: A 2-flat containing both endpoints

    Raises:
        DegenerateConfigurationError: If a normal projection or a section tangent degenerates
    """
    endpoint_1 = np.asarray(endpoint_1, dtype=float)
    endpoint_2 = np.asarray(endpoint_2, dtype=float)
    if body.dim < 3 or not body.smooth:
        raise ValueError("The cotangent relation needs a smooth body in dimension >= 3")
    if plane.dim != 2 or not np.all(plane.contains(np.stack([endpoint_1, endpoint_2]), 1e-9)):
        raise ValueError("Expected a plane containing the chord")
    chord = endpoint_2 - endpoint_1
    length = float(np.linalg.norm(chord))
    if length < DEGENERACY_TOLERANCE:
        raise DegenerateConfigurationError("Chord endpoints coincide")
    direction = chord / length
    in_plane = plane.basis - np.outer(plane.basis @ direction, direction)
    u_e = in_plane[np.argmax(np.linalg.norm(in_plane, axis=1))]
    u_e = u_e / np.linalg.norm(u_e)

    normal_1 = normal_at(body, endpoint_1)
    normal_2 = normal_at(body, endpoint_2)
    return CotLemmaResult(
        lhs_1=_section_cotangent(body, endpoint_1, endpoint_2, u_e),
        rhs_1=_normal_cotangent(normal_1, direction, u_e),
        lhs_2=_section_cotangent(body, endpoint_2, endpoint_1, u_e),
        rhs_2=_normal_cotangent(normal_2, -direction, u_e),
    )


def random_cot_lemma_checks(
    body: ConvexBody, rng: np.random.Generator, count: int
) -> List[CotLemmaResult]:
    """The cotangent relation on random chords and random planes through them.

    Degenerate configurations are skipped; up to 10 * count lines are tried.
    """
    results: List[CotLemmaResult] = []
    attempts = 0
    while len(results) < count and attempts < 10 * count:
        attempts += 1
        lines = sample_hitting_flats(body, 1, rng, 1)
        chords = body.intersect_lines(lines.bases, lines.directions)
        if not chords.hit[0]:
            continue
        u_e = sample_planes_containing(lines.bases, lines.directions, rng)
        plane = AffineSubspace(
            basis=np.stack([lines.directions[0], u_e[0]]), base_point=lines.bases[0]
        )
        try:
            results.append(
                cot_lemma_check(body, chords.endpoints_1[0], chords.endpoints_2[0], plane)
            )
        except DegenerateConfigurationError as e:
            logger.debug(f"Skipping degenerate configuration: {str(e)}")
    if len(results) < count:
        logger.warning(f"Only {len(results)} of {count} cotangent configurations were usable")
    return results


def cot_lemma_max_residual(body: ConvexBody, rng: np.random.Generator, count: int) -> float:
    results = random_cot_lemma_checks(body, rng, count)
    if not results:
        raise DegenerateConfigurationError("No usable cotangent configuration")
    return max(result.residual for result in results)


def sphere_product_integral(
    u_1: np.ndarray, u_2: np.ndarray, dim: int, options: EstimatorOptions
) -> Tuple[MCEstimate, MCEstimate]:
    """Average of (u_1, z)(u_2, z) over uniform z on the unit sphere of R^{d-1}.

    Returns:
        (Monte Carlo estimate, exact value (u_1, u_2) / (d - 1))
    """
    u_1 = np.asarray(u_1, dtype=float)
    u_2 = np.asarray(u_2, dtype=float)
    if dim < 3:
        raise ValueError(f"Need d >= 3, got {dim}")
    if u_1.shape != (dim - 1,) or u_2.shape != (dim - 1,):
        raise ValueError(f"Vectors must live in R^{dim - 1}")

    def kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        z = sample_sphere(rng, size, dim - 1)
        return (z @ u_1) * (z @ u_2), 0

    exact = float(u_1 @ u_2) / (dim - 1)
    return options.run(kernel), MCEstimate.exact(exact)


def circle_product_quadrature(phi_0: float) -> float:
    """(1/2pi) times the integral of cos(x) cos(x - phi_0) over [0, 2pi], which is cos(phi_0)/2."""
    value, _ = integrate.quad(
        lambda x: math.cos(x) * math.cos(x - phi_0), 0.0, 2.0 * math.pi, epsabs=1e-14, limit=200
    )
    return value / (2.0 * math.pi)


def ball_moment_quadrature(n: int) -> float:
    """Average of 1 - |z|^2 over the uniform ball B^{n-2}, which is 2/n."""
    if n < 2:
        raise ValueError(f"Need n >= 2, got {n}")
    m = n - 2
    if m == 0:
        return 1.0
    value, _ = integrate.quad(lambda r: (1.0 - r * r) * m * r ** (m - 1), 0.0, 1.0, epsabs=1e-14)
    return value
