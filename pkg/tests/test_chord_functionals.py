"""
Tests for the chord functionals and the Pleijel-type identities.
"""

import math

import numpy as np
import pytest

from functionals.chord_functionals import (
    ambartzumian_correction,
    chord_functional_lhs,
    isoperimetric_defect,
    mean_chord_check,
    normalization_check,
    pleijel_cot_rhs,
    pleijel_prefactor,
    pleijel_rhs,
    pleijel_rhs_2d,
    sample_boundary_pairs,
    zahle_two_point_check,
)
from functionals.estimates import MCEstimate, z_score
from functionals.integrands import PointFunction, TestFunction
from geometry.builtins import parse_body_spec, regular_polygon, unit_cube
from tests.estimate_helper import assert_sides_agree, assert_within_sigma, make_options

BALL_CUBIC_MOMENT = 16.0 * math.pi / 5.0
DISK_SQUARE_MOMENT = 16.0 / 3.0


class TestTestFunction:
    """Tests for the monomial test functions."""

    def test_values(self):
        h = TestFunction(3)
        assert h.value(np.array([2.0])) == pytest.approx([8.0])
        assert h.derivative(np.array([2.0])) == pytest.approx([12.0])
        assert h.antiderivative(np.array([2.0])) == pytest.approx([4.0])
        assert h.derivative_over_power(np.array([2.0]), 1) == pytest.approx([6.0])

    def test_requires_positive_power(self):
        with pytest.raises(ValueError):
            TestFunction(0)

    def test_point_functions(self):
        points = np.array([[[0.0, 0.0], [3.0, 4.0]]])
        assert PointFunction("distance", 1.0)(points) == pytest.approx([5.0])
        assert PointFunction("one")(points) == pytest.approx([1.0])
        with pytest.raises(ValueError):
            PointFunction("area")


class TestChordFunctional:
    """The chord side against closed forms."""

    def test_ball_cubic_moment(self, unit_ball_3d):
        estimate = chord_functional_lhs(unit_ball_3d, TestFunction(3), make_options())
        assert_within_sigma(estimate, BALL_CUBIC_MOMENT)

    def test_disk_square_moment(self, unit_disk):
        estimate = chord_functional_lhs(unit_disk, TestFunction(2), make_options())
        assert_within_sigma(estimate, DISK_SQUARE_MOMENT)

    @pytest.mark.parametrize(
        "spec,dim,volume",
        [
            ("ball", 3, 4.0 * math.pi / 3.0),
            ("disk", 2, math.pi),
            ("ellipsoid:2,1,1", 3, 8.0 * math.pi / 3.0),
            ("cube", 3, 1.0),
            ("simplex", 3, 1.0 / 6.0),
            ("regular-simplex", 3, 8.0 * math.sqrt(3.0) / 27.0),
            ("octahedron", 3, 4.0 / 3.0),
            ("regular-polygon:6", 2, 1.5 * math.sqrt(3.0)),
        ],
    )
    def test_mean_chord_is_volume(self, spec, dim, volume):
        lhs, exact = mean_chord_check(parse_body_spec(spec, dim), make_options())
        assert exact.mean == pytest.approx(volume)
        assert_within_sigma(lhs, volume)

    @pytest.mark.parametrize("dim,l", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)])
    def test_normalization(self, dim, l):
        estimate, exact = normalization_check(dim, l, 0.5, 1.0, make_options())
        assert_within_sigma(estimate, exact.mean)

    def test_normalization_needs_inner_ball(self):
        with pytest.raises(ValueError):
            normalization_check(3, 1, 2.0, 1.0, make_options())


class TestPleijel:
    """The boundary-pair side of the Pleijel identity."""

    def test_prefactor(self):
        assert pleijel_prefactor(2) == pytest.approx(1.0 / (2.0 * math.pi))
        assert pleijel_prefactor(3) == pytest.approx(1.0 / (8.0 * math.pi))

    def test_ball(self, unit_ball_3d):
        rhs = pleijel_rhs(unit_ball_3d, TestFunction(3), make_options(40_000))
        assert_within_sigma(rhs, BALL_CUBIC_MOMENT)

    def test_ellipsoid(self, ellipsoid_211):
        h = TestFunction(3)
        options = make_options(40_000)
        lhs = chord_functional_lhs(ellipsoid_211, h, options.substream(0))
        rhs = pleijel_rhs(ellipsoid_211, h, options.substream(1))
        assert_sides_agree(lhs, rhs)

    def test_doubled_prefactor_fails(self, unit_ball_3d):
        h = TestFunction(3)
        options = make_options(40_000)
        lhs = chord_functional_lhs(unit_ball_3d, h, options.substream(0))
        rhs = pleijel_rhs(unit_ball_3d, h, options.substream(1), prefactor_scale=2.0)
        assert abs(z_score(lhs, rhs)) > 20

    def test_polytope_is_rejected(self, cube):
        with pytest.raises(ValueError):
            pleijel_rhs(cube, TestFunction(3), make_options(100))

    def test_heavy_tail_guard(self, unit_ball_3d, caplog):
        with pytest.raises(ValueError):
            pleijel_rhs(unit_ball_3d, TestFunction(1), make_options(100))
        estimate = pleijel_rhs(
            unit_ball_3d, TestFunction(1), make_options(100), allow_heavy_tail=True
        )
        assert math.isfinite(estimate.mean)
        assert "infinite variance" in caplog.text

    def test_planar_disk(self, unit_disk):
        rhs = pleijel_rhs_2d(unit_disk, TestFunction(2), make_options())
        assert_within_sigma(rhs, DISK_SQUARE_MOMENT)

    def test_planar_needs_dimension_two(self, unit_ball_3d):
        with pytest.raises(ValueError):
            pleijel_rhs_2d(unit_ball_3d, TestFunction(2), make_options(100))


class TestPlanarCotangent:
    """The planar cotangent form and its polygon correction."""

    def test_disk(self, unit_disk):
        rhs = pleijel_cot_rhs(unit_disk, TestFunction(2), make_options())
        assert_within_sigma(rhs, DISK_SQUARE_MOMENT)

    def test_hexagon_correction(self):
        hexagon = regular_polygon(6)
        h = TestFunction(2)
        assert ambartzumian_correction(hexagon, h) == pytest.approx(2.0)
        options = make_options(40_000)
        lhs = chord_functional_lhs(hexagon, h, options.substream(0))
        cot = pleijel_cot_rhs(hexagon, h, options.substream(1))
        assert_sides_agree(lhs, cot + MCEstimate.exact(2.0))

    def test_square_correction(self):
        assert ambartzumian_correction(unit_cube(2), TestFunction(1)) == pytest.approx(2.0)


class TestBoundaryPairs:
    """Tests for the pair sampler and the pair identities."""

    def test_cube_pair_measure(self, cube, rng):
        pairs = sample_boundary_pairs(cube, rng, 1000)
        assert pairs.weights == pytest.approx(np.full(1000, 36.0))
        assert not pairs.coincident.any()

    def test_isoperimetric_defect(self):
        ellipse = parse_body_spec("ellipsoid:2,1")
        lhs, rhs = isoperimetric_defect(ellipse, make_options(40_000))
        assert lhs.standard_error == 0.0
        assert lhs.mean > 0
        assert_within_sigma(rhs, lhs.mean)

    def test_disk_has_no_defect(self, unit_disk):
        lhs, rhs = isoperimetric_defect(unit_disk, make_options(50_000))
        assert lhs.mean == pytest.approx(0.0, abs=1e-9)
        assert_within_sigma(rhs, 0.0, sigmas=3.0)
        assert rhs.mean == pytest.approx(0.0, abs=1e-9)
        assert rhs.standard_error == pytest.approx(0.0, abs=1e-12)

    def test_zahle_two_point(self, unit_ball_3d):
        lhs, rhs = zahle_two_point_check(
            unit_ball_3d, PointFunction("distance", 3.0), make_options(40_000)
        )
        assert_sides_agree(lhs, rhs)
