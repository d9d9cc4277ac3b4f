"""
Tests for the Blaschke-Petkantschin, mixed point, Kingman and corollary identities.
"""

import math

import numpy as np
import pytest

from functionals.integrands import PointFunction
from functionals.point_identities import (
    bpf_check,
    corollary_check,
    interior_pair_moment,
    kingman_check,
    mixed_point_check,
    section_constant,
    section_interior_points,
)
from geometry.builtins import parse_body_spec
from measures.flats import sample_hitting_flats
from tests.estimate_helper import assert_sides_agree, assert_within_sigma, make_options


class TestSectionSampling:
    """Tests for points placed in sections."""

    def test_section_constants(self):
        assert section_constant(3, 1) == pytest.approx(2.0 * math.pi)
        assert section_constant(3, 2) == pytest.approx(4.0 * math.pi)

    def test_ball_sections(self, unit_ball_3d, rng):
        planes = sample_hitting_flats(unit_ball_3d, 2, rng, 200)
        points, volumes = section_interior_points(unit_ball_3d, planes, rng, 3)
        assert points.shape == (200, 3, 3)
        inside = volumes > 0
        assert unit_ball_3d.contains(points[inside].reshape(-1, 3)).all()

    def test_cube_plane_sections(self, cube, rng):
        planes = sample_hitting_flats(cube, 2, rng, 100)
        points, volumes = section_interior_points(cube, planes, rng, 3)
        hit = volumes > 0
        assert hit.any()
        assert cube.contains(points[hit].reshape(-1, 3)).all()
        for i in np.nonzero(hit)[0][:10]:
            assert planes.flat(i).contains(points[i], 1e-9).all()


class TestInteriorMoments:
    """Mean interior distances against closed forms."""

    def test_ball_mean_distance(self, unit_ball_3d):
        estimate = interior_pair_moment(unit_ball_3d, 1, make_options(50_000))
        assert_within_sigma(estimate, 36.0 / 35.0)

    def test_disk_mean_distance(self, unit_disk):
        estimate = interior_pair_moment(unit_disk, 1, make_options(50_000))
        assert_within_sigma(estimate, 128.0 / (45.0 * math.pi))


class TestBlaschkePetkantschin:
    """Interior point tuples against the section integral."""

    def test_ball_lines(self, unit_ball_3d):
        lhs, rhs = bpf_check(unit_ball_3d, 1, PointFunction("distance", 1.0), make_options())
        assert_sides_agree(lhs, rhs)

    def test_ball_planes_hull_volume(self, unit_ball_3d):
        lhs, rhs = bpf_check(unit_ball_3d, 2, PointFunction("hull-volume", 1.0), make_options())
        assert_sides_agree(lhs, rhs)

    def test_cube_lines(self, cube):
        lhs, rhs = bpf_check(cube, 1, PointFunction("distance", 2.0), make_options())
        assert_sides_agree(lhs, rhs)

    def test_cube_planes(self, cube):
        lhs, rhs = bpf_check(cube, 2, PointFunction("one"), make_options(3000))
        assert_sides_agree(lhs, rhs)

    def test_flat_dimension_range(self, unit_ball_3d):
        with pytest.raises(ValueError):
            bpf_check(unit_ball_3d, 3, PointFunction(), make_options(100))


class TestMixedPoints:
    """k boundary points and l+1-k interior points."""

    @pytest.mark.parametrize("l,k", [(1, 1), (1, 2), (2, 0), (2, 1)])
    def test_ball(self, unit_ball_3d, l, k):
        lhs, rhs = mixed_point_check(
            unit_ball_3d, l, k, PointFunction("distance", 1.0), make_options(40_000)
        )
        assert_sides_agree(lhs, rhs)

    def test_ellipsoid(self, ellipsoid_211):
        lhs, rhs = mixed_point_check(
            ellipsoid_211, 1, 1, PointFunction("distance", 2.0), make_options(40_000)
        )
        assert_sides_agree(lhs, rhs)

    def test_needs_smooth_body(self, cube):
        with pytest.raises(ValueError):
            mixed_point_check(cube, 1, 1, PointFunction(), make_options(100))

    def test_boundary_count_range(self, unit_ball_3d):
        with pytest.raises(ValueError):
            mixed_point_check(unit_ball_3d, 1, 3, PointFunction(), make_options(100))


class TestKingman:
    """Interior-pair moments as chord functionals."""

    def test_ball_zeroth_moment(self, unit_ball_3d):
        lhs, rhs = kingman_check(unit_ball_3d, 0, make_options(40_000))
        assert lhs.mean == pytest.approx(16.0 * math.pi**2 / 9.0)
        assert_within_sigma(rhs, 16.0 * math.pi**2 / 9.0)

    @pytest.mark.parametrize(
        "spec,dim,n,exact",
        [
            ("ball", 3, 1, (4.0 * math.pi / 3.0) ** 2 * 36.0 / 35.0),
            ("ball", 3, 2, (4.0 * math.pi / 3.0) ** 2 * 6.0 / 5.0),
            ("disk", 2, 1, 128.0 * math.pi / 45.0),
        ],
    )
    def test_round_body_moments(self, spec, dim, n, exact):
        lhs, rhs = kingman_check(parse_body_spec(spec, dim), n, make_options(40_000))
        assert_within_sigma(lhs, exact)
        assert_within_sigma(rhs, exact)
        assert_sides_agree(lhs, rhs)

    def test_cube_moment(self, cube):
        lhs, rhs = kingman_check(cube, 2, make_options(40_000))
        # Twice the summed coordinate variances of the unit cube
        assert_within_sigma(lhs, 0.5)
        assert_sides_agree(lhs, rhs)

    def test_negative_moment(self, unit_ball_3d):
        with pytest.raises(ValueError):
            kingman_check(unit_ball_3d, -1, make_options(100))


class TestCorollary:
    """Boundary-interior moment with derived and classical constants."""

    def test_ball(self, unit_ball_3d):
        result = corollary_check(unit_ball_3d, 1, make_options(40_000))
        assert result.derived_constant == pytest.approx(4.0 * math.pi / 8.0)
        assert result.stated_constant == pytest.approx(result.derived_constant / 2.0)
        assert_sides_agree(result.lhs, result.rhs)
        assert_within_sigma(result.fitted_constant, result.derived_constant)

    def test_disk_zeroth_moment(self, unit_disk):
        result = corollary_check(unit_disk, 0, make_options(40_000))
        # |dK| |K| = 2 pi^2
        assert_within_sigma(result.lhs, 2.0 * math.pi**2)
        assert_within_sigma(result.rhs, 2.0 * math.pi**2)
