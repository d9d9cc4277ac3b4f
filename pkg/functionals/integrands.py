"""
Test functions for the identities.

Chord functionals use monomials h(t) = t^m, which have closed-form h' and
antiderivative H and satisfy h(0) = 0. Point functionals take a tuple of
points (n, k, d) and return one value per tuple, symmetric in the points.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from geometry.simplices import simplex_volumes


@dataclass(frozen=True)
class TestFunction:
    """The monomial h(t) = t^m, m >= 1."""

    __test__ = False

    power: int

    def __post_init__(self) -> None:
        if self.power < 1:
            raise ValueError(f"Monomial power must be positive so that h(0) = 0, got {self.power}")

    def value(self, t: np.ndarray) -> np.ndarray:
        return np.asarray(t, dtype=float) ** self.power

    def derivative(self, t: np.ndarray) -> np.ndarray:
        return self.power * np.asarray(t, dtype=float) ** (self.power - 1)

    def antiderivative(self, t: np.ndarray) -> np.ndarray:
        """H(t) = t^(m+1) / (m+1), the antiderivative with H(0) = 0."""
        return np.asarray(t, dtype=float) ** (self.power + 1) / (self.power + 1)

    def derivative_over_power(self, t: np.ndarray, k: int) -> np.ndarray:
        """h'(t) / t^k computed as a single power."""
        return self.power * np.asarray(t, dtype=float) ** (self.power - 1 - k)

    def __str__(self) -> str:
        return f"t^{self.power}"


POINT_FUNCTION_KINDS = ("one", "distance", "hull-volume")


@dataclass(frozen=True)
class PointFunction:
    """A symmetric function of a tuple of points.

    Kinds:
        one: f = 1
        distance: mean over pairs of |x_i - x_j|^power
        hull-volume: |[x_0, ..., x_l]|^power
    """

    kind: str = "distance"
    power: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in POINT_FUNCTION_KINDS:
            raise ValueError(
                f"Unknown point function '{self.kind}', expected {POINT_FUNCTION_KINDS}"
            )

    def __call__(self, points: np.ndarray) -> np.ndarray:
        """Evaluate on (n, k, d) point tuples."""
        points = np.asarray(points, dtype=float)
        if self.kind == "one":
            return np.ones(points.shape[0])
        if self.kind == "hull-volume":
            return simplex_volumes(points) ** self.power
        pairs = list(itertools.combinations(range(points.shape[1]), 2))
        if not pairs:
            raise ValueError("A distance function needs at least two points")
        total = np.zeros(points.shape[0])
        for i, j in pairs:
            total += np.linalg.norm(points[:, i, :] - points[:, j, :], axis=-1) ** self.power
        return total / len(pairs)

    def __str__(self) -> str:
        if self.kind == "one":
            return "1"
        if self.kind == "hull-volume":
            return f"|conv|^{self.power:g}"
        return f"|x_i - x_j|^{self.power:g}"
