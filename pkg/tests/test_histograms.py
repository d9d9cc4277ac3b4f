"""
Tests for chord-length histograms.
"""

import math

import numpy as np
import pytest

from functionals.histograms import (
    ball_chord_bin_density,
    ball_chord_density,
    chord_length_histogram,
)
from tests.estimate_helper import assert_within_sigma, make_options


class TestBallLaw:
    def test_bin_masses_sum_to_hitting_measure(self):
        edges = np.linspace(0.0, 2.0, 21)
        masses = ball_chord_bin_density(edges, 3) * np.diff(edges)
        assert masses.sum() == pytest.approx(math.pi)

    def test_density_in_three_dimensions(self):
        # omega_2 t / 4 = pi t / 2 for the unit ball
        assert ball_chord_density(np.array([1.0]), 3)[0] == pytest.approx(math.pi / 2.0)

    def test_disk_mass(self):
        edges = np.linspace(0.0, 2.0, 9)
        masses = ball_chord_bin_density(edges, 2) * np.diff(edges)
        assert masses.sum() == pytest.approx(2.0)


class TestChordLengthHistogram:
    def test_ball_matches_overlay(self, unit_ball_3d):
        histogram = chord_length_histogram(unit_ball_3d, 8, make_options(50_000))
        assert histogram.overlay is not None
        assert len(histogram.rows()) == 8
        for density, overlay in zip(histogram.density, histogram.overlay):
            assert_within_sigma(density, float(overlay), sigmas=5.0)
        assert_within_sigma(histogram.total_measure(), math.pi)

    def test_disk_total(self, unit_disk):
        histogram = chord_length_histogram(unit_disk, 10, make_options(30_000))
        assert_within_sigma(histogram.total_measure(), 2.0)

    def test_cube_has_no_overlay(self, cube):
        histogram = chord_length_histogram(cube, 12, make_options(30_000))
        assert histogram.overlay is None
        assert all(row[4] is None for row in histogram.rows())
        # Lines hitting a convex body in R^3 have measure |dK| / 4
        assert_within_sigma(histogram.total_measure(), 1.5)
        assert histogram.edges[-1] == pytest.approx(2.0 * cube.enclosing_radius)

    def test_bins_required(self, unit_disk):
        with pytest.raises(ValueError):
            chord_length_histogram(unit_disk, 0, make_options(100))
