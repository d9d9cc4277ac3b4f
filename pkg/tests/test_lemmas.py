"""
Tests for the flag, cotangent, sphere and ball checks.
"""

import math

import numpy as np
import pytest

from functionals.integrands import TestFunction
from functionals.lemmas import (
    ball_moment_quadrature,
    circle_product_quadrature,
    cot_lemma_check,
    cot_lemma_max_residual,
    flag_fubini_check,
    plane_weight,
    random_cot_lemma_checks,
    sphere_product_integral,
)
from geometry.flats import AffineSubspace
from tests.estimate_helper import assert_sides_agree, assert_within_sigma, make_options


class TestFlagFubini:
    """Both integration orders over flags."""

    @pytest.mark.parametrize("kind", ["one", "tilt"])
    def test_ball(self, unit_ball_3d, kind):
        first, second = flag_fubini_check(unit_ball_3d, TestFunction(3), make_options(), kind)
        assert_sides_agree(first, second)

    def test_cube(self, cube):
        first, second = flag_fubini_check(cube, TestFunction(1), make_options(), "tilt")
        assert_sides_agree(first, second)

    def test_planar_body(self, unit_disk):
        with pytest.raises(ValueError):
            flag_fubini_check(unit_disk, TestFunction(2), make_options(100))

    def test_unknown_weight(self, unit_ball_3d):
        with pytest.raises(ValueError):
            flag_fubini_check(unit_ball_3d, TestFunction(2), make_options(100), "steep")

    def test_plane_weights(self):
        frames = np.array([[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]])
        assert plane_weight("one", frames).tolist() == [1.0, 1.0]
        assert plane_weight("tilt", frames) == pytest.approx([1.0, 0.0])
        with pytest.raises(ValueError):
            plane_weight("other", frames)


class TestCotLemma:
    """The cotangent relation is exact on smooth bodies."""

    def test_ball_diameter(self, unit_ball_3d):
        plane = AffineSubspace(
            basis=np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]), base_point=np.zeros(3)
        )
        result = cot_lemma_check(
            unit_ball_3d, np.array([-1.0, 0.0, 0.0]), np.array([1.0, 0.0, 0.0]), plane
        )
        # Diameters meet the sphere orthogonally
        assert result.lhs_1 == pytest.approx(0.0, abs=1e-9)
        assert result.rhs_1 == pytest.approx(0.0, abs=1e-9)
        assert result.residual < 1e-9

    def test_tilted_plane_on_ball(self, unit_ball_3d):
        start = np.array([0.6, -0.8, 0.0])
        end = np.array([0.6, 0.8, 0.0])
        tilt = np.array([1.0, 0.0, 1.0]) / math.sqrt(2.0)
        plane = AffineSubspace(basis=np.stack([[0.0, 1.0, 0.0], tilt]), base_point=start)
        result = cot_lemma_check(unit_ball_3d, start, end, plane)
        assert result.residual < 1e-8

    def test_random_chords_on_ellipsoid(self, ellipsoid_211, rng):
        results = random_cot_lemma_checks(ellipsoid_211, rng, 25)
        assert len(results) == 25
        assert max(result.residual for result in results) < 1e-8

    def test_max_residual(self, ellipsoid_211, rng):
        assert cot_lemma_max_residual(ellipsoid_211, rng, 10) < 1e-8

    def test_needs_smooth_body(self, cube):
        plane = AffineSubspace(
            basis=np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]), base_point=np.array([0, 0, 0.5])
        )
        with pytest.raises(ValueError):
            cot_lemma_check(cube, np.array([0.0, 0.0, 0.5]), np.array([1.0, 0.0, 0.5]), plane)

    def test_plane_must_contain_chord(self, unit_ball_3d):
        plane = AffineSubspace(
            basis=np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]), base_point=np.array([0, 0, 0.5])
        )
        with pytest.raises(ValueError):
            cot_lemma_check(
                unit_ball_3d, np.array([-1.0, 0.0, 0.0]), np.array([1.0, 0.0, 0.0]), plane
            )


class TestSphereAndBallAverages:
    """Closed forms used when averaging over planes containing a line."""

    def test_sphere_product(self):
        estimate, exact = sphere_product_integral(
            np.array([1.0, 0.0]), np.array([1.0, 0.0]), 3, make_options(50_000)
        )
        assert exact.mean == pytest.approx(0.5)
        assert_within_sigma(estimate, 0.5)

    def test_sphere_product_orthogonal(self):
        u_1 = np.array([1.0, 0.0, 0.0])
        u_2 = np.array([0.0, 1.0, 0.0])
        estimate, exact = sphere_product_integral(u_1, u_2, 4, make_options(50_000))
        assert exact.mean == 0.0 and exact.standard_error == 0.0
        assert_within_sigma(estimate, 0.0)

    def test_sphere_product_shapes(self):
        with pytest.raises(ValueError):
            sphere_product_integral(np.ones(3), np.ones(3), 3, make_options(100))
        with pytest.raises(ValueError):
            sphere_product_integral(np.ones(1), np.ones(1), 2, make_options(100))

    @pytest.mark.parametrize("phi_0", [0.0, 0.7, math.pi / 2, 2.5])
    def test_circle_quadrature(self, phi_0):
        assert circle_product_quadrature(phi_0) == pytest.approx(
            math.cos(phi_0) / 2.0, abs=1e-12
        )

    @pytest.mark.parametrize("n", [2, 3, 4, 7])
    def test_ball_moment(self, n):
        assert ball_moment_quadrature(n) == pytest.approx(2.0 / n, abs=1e-12)

    def test_ball_moment_range(self):
        with pytest.raises(ValueError):
            ball_moment_quadrature(1)
