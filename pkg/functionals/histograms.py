"""
Chord-length histograms under mu_{d,1}, with the closed-form law for balls.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from functionals.estimates import EstimatorOptions, MCEstimate
from geometry.bodies import Ball, ConvexBody
from geometry.constants import unit_ball_volume, unit_sphere_area
from measures.flats import sample_hitting_flats

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChordHistogram:
    """Binned chord-length density.

    `density[i]` estimates mu_{d,1}(lines with |G ∩ K| in bin i) / bin width, so
    the densities times the widths sum to the measure of lines hitting K.
    """

    edges: np.ndarray
    density: List[MCEstimate]
    overlay: Optional[np.ndarray] = None

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    def total_measure(self) -> MCEstimate:
        """Measure of the hitting lines, from the histogram (bins share samples)."""
        means = np.array([d.mean for d in self.density]) * self.widths
        errors = np.array([d.standard_error for d in self.density]) * self.widths
        # Bins share samples; their covariance is ignored
        return MCEstimate(
            mean=float(means.sum()),
            standard_error=float(np.sqrt((errors**2).sum())),
            sample_count=self.density[0].sample_count,
        )

    def rows(self) -> List[Tuple[float, float, float, float, Optional[float]]]:
        """(lower edge, upper edge, density, standard error, overlay) per bin."""
        overlay = self.overlay if self.overlay is not None else [None] * len(self.density)
        return [
            (float(low), float(high), d.mean, d.standard_error, None if o is None else float(o))
            for low, high, d, o in zip(self.edges[:-1], self.edges[1:], self.density, overlay)
        ]


def ball_chord_density(lengths: np.ndarray, dim: int, radius: float = 1.0) -> np.ndarray:
    """Density of chord length t for lines hitting a ball: omega_{d-1} rho^{d-3} t / 4.

    rho = sqrt(R^2 - t^2/4) is the distance of the line from the center.
    """
    lengths = np.asarray(lengths, dtype=float)
    rho = np.sqrt(np.clip(radius**2 - lengths**2 / 4.0, 0.0, None))
    with np.errstate(divide="ignore"):
        return unit_sphere_area(dim - 1) * rho ** (dim - 3.0) * lengths / 4.0


def ball_chord_bin_density(edges: np.ndarray, dim: int, radius: float = 1.0) -> np.ndarray:
    """Exact mean density over each bin, from the distribution kappa_{d-1} rho^{d-1}."""
    edges = np.clip(np.asarray(edges, dtype=float), 0.0, 2.0 * radius)
    rho = np.sqrt(np.clip(radius**2 - edges**2 / 4.0, 0.0, None))
    masses = unit_ball_volume(dim - 1) * (rho[:-1] ** (dim - 1) - rho[1:] ** (dim - 1))
    widths = np.diff(np.asarray(edges, dtype=float))
    return np.where(widths > 0, masses / np.where(widths > 0, widths, 1.0), 0.0)


def chord_length_histogram(
    body: ConvexBody, bins: int, options: EstimatorOptions
) -> ChordHistogram:
    """Histogram of chord lengths on [0, 2R] for lines hitting the body."""
    if bins < 1:
        raise ValueError(f"Need at least one bin, got {bins}")
    edges = np.linspace(0.0, 2.0 * body.enclosing_radius, bins + 1)
    widths = np.diff(edges)

    def kernel(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        lines = sample_hitting_flats(body, 1, rng, size)
        chords = body.intersect_lines(lines.bases, lines.directions)
        index = np.clip(np.searchsorted(edges, chords.lengths, side="right") - 1, 0, bins - 1)
        values = np.zeros((size, bins))
        rows = np.nonzero(chords.hit)[0]
        values[rows, index[rows]] = lines.weight / widths[index[rows]]
        return values, 0

    density = options.run_many(kernel)
    overlay = None
    if isinstance(body, Ball):
        overlay = ball_chord_bin_density(edges, body.dim, body.enclosing_radius)
    logger.debug(f"Chord histogram of {body.body_name}: {bins} bins on [0, {edges[-1]:.4g}]")
    return ChordHistogram(edges=edges, density=density, overlay=overlay)
