"""
Tests for the samplers of flats, boundary points and interior points.
"""

import logging
import math

import numpy as np
import pytest
from scipy import stats

from functionals.estimates import MCEstimate
from geometry.flats import AffineSubspace
from measures import (
    RngStream,
    flats_hit,
    hitting_weight,
    lines_within_flat,
    sample_ball,
    sample_grassmannian,
    sample_hitting_flats,
    sample_interior_points,
    sample_lines_in_planes,
    sample_plane_containing_line,
    sample_planes_containing,
    sample_rotations,
    sample_sphere,
    sample_surface_points,
)
from tests.estimate_helper import assert_within_sigma


def _mean_estimate(values: np.ndarray) -> MCEstimate:
    return MCEstimate(
        mean=float(values.mean()),
        standard_error=float(values.std(ddof=1) / math.sqrt(len(values))),
        sample_count=len(values),
    )


class TestRngStream:
    """Tests for reproducible streams."""

    def test_same_stream_same_draws(self):
        first = RngStream(seed=7, stream_id=2).generator(1).random(5)
        second = RngStream(seed=7, stream_id=2).generator(1).random(5)
        assert np.array_equal(first, second)

    def test_shards_and_substreams_differ(self):
        stream = RngStream(seed=7)
        assert not np.array_equal(stream.generator(0).random(5), stream.generator(1).random(5))
        assert stream.substream(0) != stream.substream(1)
        assert stream.substream(0) != stream

    def test_substreams_never_alias_other_streams(self):
        # Substream keys are longer than any case stream key
        nested = RngStream(seed=7, stream_id=0).substream(1000)
        other_case = RngStream(seed=7, stream_id=1001)
        assert nested.stream_id == 0
        assert nested.spawn_key == (0, 1000)
        assert not np.array_equal(nested.generator(0).random(5), other_case.generator(0).random(5))
        first_case_term = RngStream(seed=7, stream_id=0).substream(0)
        second_case = RngStream(seed=7, stream_id=1)
        assert not np.array_equal(
            first_case_term.generator(0).random(5), second_case.generator(0).random(5)
        )

    def test_substreams_nest(self):
        stream = RngStream(seed=7, stream_id=3)
        assert stream.substream(1).substream(2).spawn_key == (3, 1, 2)
        assert stream.substream(1).substream(2) == stream.substream(1).substream(2)
        with pytest.raises(ValueError):
            stream.substream(-1)


class TestDirections:
    """Tests for sphere, ball and frame sampling."""

    def test_sphere_points_are_unit(self, rng):
        points = sample_sphere(rng, 1000, 4)
        assert np.linalg.norm(points, axis=1) == pytest.approx(np.ones(1000))

    def test_ball_points_inside(self, rng):
        points = sample_ball(rng, 1000, 3, radius=2.0)
        assert (np.linalg.norm(points, axis=1) <= 2.0).all()

    def test_rotations_are_orthogonal(self, rng):
        rotations = sample_rotations(rng, 50, 4)
        products = np.einsum("nij,nkj->nik", rotations, rotations)
        assert np.allclose(products, np.eye(4))

    def test_grassmannian_frames(self, rng):
        frames = sample_grassmannian(rng, 20, 5, 2)
        assert frames.shape == (20, 2, 5)
        with pytest.raises(ValueError):
            sample_grassmannian(rng, 1, 3, 3)

    def test_first_direction_is_isotropic(self, rng):
        frames = sample_grassmannian(rng, 40_000, 3, 1)
        second_moments = (frames[:, 0, :] ** 2).mean(axis=0)
        assert second_moments == pytest.approx([1.0 / 3.0] * 3, abs=0.01)


class TestFlatSamplers:
    """Tests for the motion-invariant flat samplers."""

    def test_hitting_weight(self):
        assert hitting_weight(2, 1.0) == pytest.approx(math.pi)
        assert hitting_weight(1, 0.5) == pytest.approx(1.0)

    def test_lines_hit_enclosing_ball(self, unit_ball_3d, rng):
        lines = sample_hitting_flats(unit_ball_3d, 1, rng, 2000)
        assert lines.weight == pytest.approx(math.pi)
        # Offsets are uniform in the unit disk, so almost every line hits
        assert flats_hit(unit_ball_3d, lines).mean() > 0.999

    def test_planes_through_cube(self, cube, rng):
        planes = sample_hitting_flats(cube, 2, rng, 200)
        hits = flats_hit(cube, planes)
        assert 0 < hits.sum() <= 200

    def test_planes_containing_lines(self, rng):
        directions = sample_sphere(rng, 100, 3)
        normals = sample_planes_containing(np.zeros((100, 3)), directions, rng)
        assert np.abs(np.einsum("nd,nd->n", normals, directions)).max() < 1e-12
        assert np.linalg.norm(normals, axis=1) == pytest.approx(np.ones(100))

    def test_lines_in_planes_stay_in_planes(self, unit_ball_3d, rng):
        planes = sample_hitting_flats(unit_ball_3d, 2, rng, 50)
        lines = sample_lines_in_planes(planes, np.zeros(3), 1.0, rng)
        assert lines.weight == pytest.approx(2.0)
        for i in range(50):
            assert planes.flat(i).contains(lines.bases[i : i + 1], 1e-9)[0]
            coords = planes.flat(i).vectors_to_intrinsic(lines.directions[i])
            assert np.linalg.norm(coords) == pytest.approx(1.0)

    def test_plane_containing_line(self, rng):
        line = AffineSubspace.line(np.array([0.0, 0.0, 0.5]), [1.0, 0.0, 0.0])
        plane = sample_plane_containing_line(line, rng)
        assert plane.dim == 2
        assert plane.contains(np.array([[3.0, 0.0, 0.5]]))[0]

    def test_lines_within_facet(self, cube, rng):
        sample = lines_within_flat(cube.facet_body(0), rng)
        assert sample.value.ambient_dim == 3
        facet = cube.facets[0]
        offsets = sample.value.base_point @ facet.normal
        assert offsets == pytest.approx(facet.offset)


class TestMeasureWeights:
    """The weighted samplers reproduce known measures."""

    def test_cube_surface_area(self, cube, rng):
        batch = sample_surface_points(cube, rng, 5000)
        assert batch.weights == pytest.approx(np.full(5000, 6.0))
        assert cube.boundary_residual(batch.points).max() < 1e-9

    def test_spheroid_surface_area(self, ellipsoid_211, rng):
        batch = sample_surface_points(ellipsoid_211, rng, 100_000)
        eccentricity = math.sqrt(3.0) / 2.0
        exact = 2.0 * math.pi * (1.0 + 2.0 / eccentricity * math.asin(eccentricity))
        assert_within_sigma(_mean_estimate(batch.weights), exact)

    def test_cube_interior_volume(self, cube, rng):
        batch = sample_interior_points(cube, rng, 1000)
        # The bounding box is the cube itself
        assert batch.weights == pytest.approx(np.ones(1000))

    def test_octahedron_interior_volume(self, rng):
        from geometry.builtins import cross_polytope

        octahedron = cross_polytope(3)
        batch = sample_interior_points(octahedron, rng, 100_000)
        assert_within_sigma(_mean_estimate(batch.weights), 4.0 / 3.0)

    def test_ridge_resampling_exhaustion_warns(self, cube, rng, monkeypatch, caplog):
        import measures.surface as surface

        monkeypatch.setattr(surface, "MAX_RIDGE_RESAMPLES", 0)
        monkeypatch.setattr(
            type(cube),
            "classify_boundary",
            lambda self, points: (np.zeros(len(points), dtype=int), np.ones(len(points), bool)),
        )
        with caplog.at_level(logging.WARNING, logger="measures.surface"):
            batch = sample_surface_points(cube, rng, 50)
        assert len(batch) == 50
        assert "still on ridges" in caplog.text

    def test_cube_sampling_is_quiet(self, cube, rng, caplog):
        with caplog.at_level(logging.WARNING, logger="measures.surface"):
            sample_surface_points(cube, rng, 5000)
        assert "still on ridges" not in caplog.text


class TestMotionInvariance:
    """Chord-length laws do not depend on the position of the body."""

    @staticmethod
    def _chord_lengths(body, seed: int, size: int = 10_000) -> np.ndarray:
        rng = np.random.default_rng(seed)
        lines = sample_hitting_flats(body, 1, rng, size)
        chords = body.intersect_lines(lines.bases, lines.directions)
        return chords.lengths[chords.hit]

    def test_moved_spheroid(self):
        from geometry.bodies import Ellipsoid

        rotation = sample_rotations(np.random.default_rng(21), 1, 3)[0].T
        placed = Ellipsoid.from_semi_axes(np.array([2.0, 1.0, 1.0]))
        moved = Ellipsoid.from_semi_axes(
            np.array([2.0, 1.0, 1.0]), center=np.array([3.0, -1.0, 0.5]), rotation=rotation
        )
        result = stats.ks_2samp(self._chord_lengths(placed, 1), self._chord_lengths(moved, 2))
        assert result.pvalue > 0.01

    def test_moved_cube(self, cube):
        from geometry.polytopes import Polytope

        rotation = sample_rotations(np.random.default_rng(4), 1, 3)[0]
        moved = Polytope(vertices=cube.vertices @ rotation.T + np.array([1.0, 2.0, -3.0]))
        result = stats.ks_2samp(self._chord_lengths(cube, 3), self._chord_lengths(moved, 4))
        assert result.pvalue > 0.01
