"""
Identities for polytopes, where facet terms replace the smooth-boundary limits.

The chord functional of a polytope splits into a cotangent term over chords
joining different facets plus a term collecting the lines that run inside a
facet; the two-point surface integral splits the same way into pairs on
different facets and pairs on a common facet.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from functionals.chord_functionals import (
    ANGLE_TOLERANCE,
    ambartzumian_correction,
    chord_functional_lhs,
    cot_product_integral,
    sample_boundary_pairs,
)
from functionals.estimates import EstimatorOptions, MCEstimate, sum_estimates
from functionals.integrands import PointFunction, TestFunction
from geometry.constants import blaschke_petkantschin_constant
from geometry.polytopes import Polytope
from measures.flats import sample_hitting_flats, sample_lines_within

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolytopeTerms:
    """Left side of a polytope identity with its two right-side terms."""

    lhs: MCEstimate
    first_term: MCEstimate
    second_term: MCEstimate
    facet_terms: Tuple[MCEstimate, ...] = ()

    @property
    def rhs(self) -> MCEstimate:
        return self.first_term + self.second_term


def facet_chord_integral(
    polytope: Polytope, facet: int, h: TestFunction, options: EstimatorOptions
) -> MCEstimate:
    """Integral of H(|G ∩ F|) over the lines G lying in the affine hull of facet F."""
    facet_body = polytope.facet_body(facet)
    h_antiderivative = h.antiderivative

    def kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        lines = sample_lines_within(facet_body, rng, size)
        chords = facet_body.intersect_lines(lines.bases, lines.directions)
        return np.where(chords.hit, lines.weight * h_antiderivative(chords.lengths), 0.0), 0

    return options.run(kernel)


def polytope_pleijel_check(
    polytope: Polytope, h: TestFunction, options: EstimatorOptions
) -> PolytopeTerms:
    """The chord functional of a polytope against its cotangent and facet terms.

    first_term: (1/(d-1)) times the integral of h'(L) L cot a_1 cot a_2 cos phi_0.
    second_term: sum over facets of the integral of H(|G ∩ F|) over lines in F;
    for polygons this is the exact sum of H(side length).
    """
    if not isinstance(polytope, Polytope):
        raise TypeError(f"Expected a polytope, got {polytope!r}")
    dim = polytope.dim
    if dim < 2:
        raise ValueError("The polytope identity needs dimension >= 2")
    lhs = chord_functional_lhs(polytope, h, options.substream(0))
    cot_term = cot_product_integral(polytope, h, options.substream(1), scale=1.0 / (dim - 1))
    if dim == 2:
        correction = MCEstimate.exact(ambartzumian_correction(polytope, h))
        return PolytopeTerms(lhs=lhs, first_term=cot_term, second_term=correction)

    facet_terms: List[MCEstimate] = []
    for index in range(len(polytope.facets)):
        facet_terms.append(facet_chord_integral(polytope, index, h, options.substream(2 + index)))
    logger.debug(f"Facet terms for {polytope.body_name}: {[t.mean for t in facet_terms]}")
    return PolytopeTerms(
        lhs=lhs,
        first_term=cot_term,
        second_term=sum_estimates(facet_terms),
        facet_terms=tuple(facet_terms),
    )


def surface_pair_integral(
    polytope: Polytope, f: PointFunction, options: EstimatorOptions
) -> MCEstimate:
    """Integral of f(x_0, x_1) over pairs of boundary points."""

    def kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        pairs = sample_boundary_pairs(polytope, rng, size)
        points = np.stack([pairs.first.points, pairs.second.points], axis=1)
        return pairs.weights * f(points), 0

    return options.run(kernel)


def distinct_facet_term(
    polytope: Polytope, f: PointFunction, options: EstimatorOptions
) -> MCEstimate:
    """b_{d,1} times the line integral over ordered endpoint pairs on different facets.

    Each chord contributes (f(p_1, p_2) + f(p_2, p_1)) L^{d-1} / (sin a_1 sin a_2).
    Chords through ridges and chords inside a facet are rejected.
    """
    dim = polytope.dim
    constant = blaschke_petkantschin_constant(dim, 1)

    def kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        lines = sample_hitting_flats(polytope, 1, rng, size)
        chords = polytope.intersect_lines(lines.bases, lines.directions)
        angles = chords.angles()
        rejected = chords.hit & (
            chords.ambiguous
            | (chords.facets_1 == chords.facets_2)
            | (angles.sin_1 < ANGLE_TOLERANCE)
            | (angles.sin_2 < ANGLE_TOLERANCE)
        )
        usable = chords.hit & ~rejected
        forward = np.stack([chords.endpoints_1, chords.endpoints_2], axis=1)
        backward = forward[:, ::-1, :]
        sines = np.where(usable, angles.sin_1 * angles.sin_2, 1.0)
        values = (
            lines.weight
            * constant
            * (f(forward) + f(backward))
            * chords.lengths ** (dim - 1)
            / sines
        )
        return np.where(usable, values, 0.0), int(rejected.sum())

    return options.run(kernel)


def same_facet_integral(
    polytope: Polytope, facet: int, f: PointFunction, options: EstimatorOptions
) -> MCEstimate:
    """b_{d-1,1} times the integral over lines in facet F of the pair integral over G ∩ F.

    Pairs are uniform on the chord and weighted by L^2 |x_0 - x_1|^{d-2}; f is
    evaluated at the ambient positions.
    """
    dim = polytope.dim
    constant = blaschke_petkantschin_constant(dim - 1, 1)
    facet_body = polytope.facet_body(facet)
    frame = facet_body.ambient_frame

    def kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        lines = sample_lines_within(facet_body, rng, size)
        chords = facet_body.intersect_lines(lines.bases, lines.directions)
        points = chords.points_along(rng.random((size, 2)))
        if frame is not None:
            points = frame.to_ambient(points)
        separation = np.linalg.norm(points[:, 0, :] - points[:, 1, :], axis=-1)
        lengths = chords.lengths
        values = lines.weight * constant * lengths**2 * f(points) * separation ** (dim - 2)
        return np.where(chords.hit, values, 0.0), 0

    return options.run(kernel)


def polytope_zahle_check(
    polytope: Polytope, f: PointFunction, options: EstimatorOptions, l: int = 1
) -> PolytopeTerms:
    """The two-point surface integral of a polytope against its facet decomposition.

    first_term: pairs on different facets, through chords of hitting lines.
    second_term: pairs on a common facet, through lines inside each facet.
    """
    if not isinstance(polytope, Polytope):
        raise TypeError(f"Expected a polytope, got {polytope!r}")
    if l != 1:
        raise ValueError(f"Only point pairs (l = 1) are supported, got l = {l}")
    if polytope.dim < 3:
        raise ValueError("Same-facet lines need facets of dimension >= 2, so d >= 3")
    lhs = surface_pair_integral(polytope, f, options.substream(0))
    mixed = distinct_facet_term(polytope, f, options.substream(1))
    facet_terms = tuple(
        same_facet_integral(polytope, index, f, options.substream(2 + index))
        for index in range(len(polytope.facets))
    )
    return PolytopeTerms(
        lhs=lhs,
        first_term=mixed,
        second_term=sum_estimates(list(facet_terms)),
        facet_terms=facet_terms,
    )
