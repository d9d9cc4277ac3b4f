"""
Tests for the polytope identities with facet terms.
"""

import math
from typing import Callable, Tuple

import numpy as np
import pytest
from scipy import integrate

from functionals.estimates import MCEstimate
from functionals.integrands import PointFunction, TestFunction
from functionals.polytope_identities import (
    facet_chord_integral,
    polytope_pleijel_check,
    polytope_zahle_check,
    same_facet_integral,
    surface_pair_integral,
)
from geometry.builtins import parse_body_spec, regular_polygon
from tests.estimate_helper import assert_sides_agree, assert_within_sigma, make_options

SQUARE_VERTICES = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])


def _square_chord(angle: float, offset: float) -> float:
    """Length of the unit square's section by the line <x, n(angle)> = offset."""
    normal = np.array([math.cos(angle), math.sin(angle)])
    direction = np.array([-normal[1], normal[0]])
    base = offset * normal
    low, high = -math.inf, math.inf
    for axis in range(2):
        if abs(direction[axis]) < 1e-12:
            if not 0.0 <= base[axis] <= 1.0:
                return 0.0
            continue
        first = -base[axis] / direction[axis]
        second = (1.0 - base[axis]) / direction[axis]
        low, high = max(low, min(first, second)), min(high, max(first, second))
    return max(0.0, high - low)


def _square_line_integral(g: Callable[[float], float]) -> float:
    """Quadrature of g(chord length) over lines in the plane.

    Lines are parametrized by normal angle in [0, pi) and signed offset, with
    the measure dp dangle / pi so that lines hitting a disk of radius R weigh 2R.
    """

    def over_offsets(angle: float) -> float:
        heights = np.sort(SQUARE_VERTICES @ np.array([math.cos(angle), math.sin(angle)]))
        kinks = [h for h in heights[1:-1] if heights[0] < h < heights[-1]]
        value, _ = integrate.quad(
            lambda p: g(_square_chord(angle, p)),
            heights[0],
            heights[-1],
            points=kinks or None,
            limit=200,
        )
        return value

    value, _ = integrate.quad(over_offsets, 0.0, math.pi, points=[math.pi / 2], limit=200)
    return value / math.pi


def _square_pair_moment(power: float) -> float:
    """Integral of |x - y|^power over pairs of points of the unit square."""
    value, _ = integrate.dblquad(
        lambda b, a: 4.0 * (1.0 - a) * (1.0 - b) * (a * a + b * b) ** (power / 2.0),
        0.0,
        1.0,
        0.0,
        1.0,
    )
    return value


def _brute_force_square_pairs(power: float, n_samples: int, seed: int) -> MCEstimate:
    def kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        first, second = rng.random((size, 2)), rng.random((size, 2))
        return np.linalg.norm(first - second, axis=1) ** power, 0

    return make_options(n_samples, seed=seed).run(kernel)


class TestSquareOracles:
    """The quadrature helpers against known values."""

    def test_line_measure_of_square(self):
        # Lines hitting a convex planar body have measure perimeter / pi
        assert _square_line_integral(lambda length: float(length > 0)) == pytest.approx(
            4.0 / math.pi, rel=1e-6
        )

    def test_chord_lengths_integrate_to_area(self):
        assert _square_line_integral(lambda length: length) == pytest.approx(1.0, rel=1e-6)

    def test_mean_distance(self):
        exact = (2.0 + math.sqrt(2.0) + 5.0 * math.log(1.0 + math.sqrt(2.0))) / 15.0
        assert _square_pair_moment(1.0) == pytest.approx(exact, rel=1e-7)


class TestPolytopePleijel:
    """Chord functional against the cotangent and facet terms."""

    @pytest.mark.parametrize("spec,facets", [("cube", 6), ("regular-simplex", 4)])
    def test_polytope(self, spec, facets):
        polytope = parse_body_spec(spec, 3)
        terms = polytope_pleijel_check(polytope, TestFunction(3), make_options(40_000))
        assert len(terms.facet_terms) == facets
        assert terms.second_term.mean > 0
        assert_sides_agree(terms.lhs, terms.rhs)

    def test_cube_facet_term_matches_quadrature(self, cube):
        h = TestFunction(3)
        exact = _square_line_integral(lambda length: float(h.antiderivative(np.array([length]))[0]))
        # Lines in a square and point pairs in it are tied by a closed form
        assert exact == pytest.approx(1.5 / math.pi * _square_pair_moment(1.0), rel=1e-6)
        for facet in (0, 3):
            estimate = facet_chord_integral(cube, facet, h, make_options(400_000, seed=facet))
            assert estimate.mean == pytest.approx(exact, rel=0.01)
            assert_within_sigma(estimate, exact)

    def test_polygon_facet_term_is_exact(self):
        terms = polytope_pleijel_check(regular_polygon(6), TestFunction(2), make_options(20_000))
        assert terms.facet_terms == ()
        assert terms.second_term.standard_error == 0.0
        assert terms.second_term.mean == pytest.approx(2.0)
        assert_sides_agree(terms.lhs, terms.rhs)

    def test_needs_polytope(self, unit_ball_3d):
        with pytest.raises(TypeError):
            polytope_pleijel_check(unit_ball_3d, TestFunction(3), make_options(100))


class TestPolytopeZahle:
    """Two-point surface integral against its facet decomposition."""

    def test_cube_pair_area(self, cube):
        estimate = surface_pair_integral(cube, PointFunction("one"), make_options(1000))
        assert_within_sigma(estimate, 36.0)

    def test_cube(self, cube):
        terms = polytope_zahle_check(cube, PointFunction("distance", 3.0), make_options(40_000))
        assert len(terms.facet_terms) == 6
        assert_sides_agree(terms.lhs, terms.rhs)

    def test_same_facet_term_matches_pair_integral(self, cube):
        exact = _square_pair_moment(3.0)
        brute_force = _brute_force_square_pairs(3.0, 200_000, seed=17)
        assert_within_sigma(brute_force, exact)
        term = same_facet_integral(cube, 0, PointFunction("distance", 3.0), make_options(200_000))
        assert_sides_agree(term, brute_force, threshold=3.0)
        assert_within_sigma(term, exact)

    def test_only_pairs(self, cube):
        with pytest.raises(ValueError):
            polytope_zahle_check(cube, PointFunction(), make_options(100), l=2)

    def test_needs_dimension_three(self):
        with pytest.raises(ValueError):
            polytope_zahle_check(regular_polygon(5), PointFunction(), make_options(100))
