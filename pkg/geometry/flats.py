"""
Affine flats: elements of the affine Grassmannian A_{d,l}.

A flat is stored as an orthonormal direction basis (rows) and a canonical base
point, the orthogonal projection of the origin onto the flat.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import null_space

logger = logging.getLogger(__name__)

ORTHONORMAL_TOLERANCE = 1e-12


def orthonormalize(directions: np.ndarray) -> np.ndarray:
    """Return an orthonormal basis (rows) spanning the given direction rows.

    Raises:
        ValueError: If the directions are linearly dependent
    """
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    q, r = np.linalg.qr(directions.T)
    diagonal = np.abs(np.diag(r))
    if diagonal.size == 0 or diagonal.min() < 1e-12 * max(1.0, diagonal.max()):
        raise ValueError("Flat directions are linearly dependent")
    return q.T


@dataclass(frozen=True)
class AffineSubspace:
    """An l-dimensional affine flat in R^d.

    Attributes:
        basis: (l, d) array of orthonormal direction vectors
        base_point: (d,) canonical base point (closest point to the origin)
    """

    basis: np.ndarray
    base_point: np.ndarray

    def __post_init__(self) -> None:
        basis = np.atleast_2d(np.asarray(self.basis, dtype=float))
        point = np.asarray(self.base_point, dtype=float).reshape(-1)
        if basis.shape[1] != point.shape[0]:
            raise ValueError(
                f"Basis vectors have dimension {basis.shape[1]}, base point has {point.shape[0]}"
            )
        gram = basis @ basis.T
        if np.abs(gram - np.eye(basis.shape[0])).max() > ORTHONORMAL_TOLERANCE:
            raise ValueError("Flat basis is not orthonormal")
        point = point - (point @ basis.T) @ basis
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "base_point", point)

    @classmethod
    def from_directions(cls, point: np.ndarray, directions: np.ndarray) -> "AffineSubspace":
        """Create the flat through `point` spanned by arbitrary independent directions."""
        return cls(basis=orthonormalize(directions), base_point=np.asarray(point, dtype=float))

    @classmethod
    def line(cls, point: np.ndarray, direction: np.ndarray) -> "AffineSubspace":
        """Create the line through `point` with the given direction."""
        direction = np.asarray(direction, dtype=float)
        return cls(basis=direction[None, :] / np.linalg.norm(direction), base_point=point)

    @classmethod
    def hyperplane(cls, normal: np.ndarray, offset: float) -> "AffineSubspace":
        """Create the hyperplane {x : <normal, x> = offset}."""
        normal = np.asarray(normal, dtype=float)
        norm = float(np.linalg.norm(normal))
        unit = normal / norm
        basis = null_space(unit[None, :]).T
        return cls(basis=basis, base_point=unit * (offset / norm))

    @property
    def dim(self) -> int:
        """Intrinsic dimension l of the flat."""
        return int(self.basis.shape[0])

    @property
    def ambient_dim(self) -> int:
        """Dimension d of the space containing the flat."""
        return int(self.basis.shape[1])

    @property
    def direction(self) -> np.ndarray:
        """Unit direction of a line (l = 1)."""
        if self.dim != 1:
            raise ValueError(f"Flat of dimension {self.dim} has no single direction")
        return self.basis[0]

    def to_ambient(self, coords: np.ndarray) -> np.ndarray:
        """Map intrinsic coordinates (..., l) to ambient points (..., d)."""
        return np.asarray(coords, dtype=float) @ self.basis + self.base_point

    def to_intrinsic(self, points: np.ndarray) -> np.ndarray:
        """Map ambient points (..., d) to intrinsic coordinates (..., l)."""
        return (np.asarray(points, dtype=float) - self.base_point) @ self.basis.T

    def vectors_to_intrinsic(self, vectors: np.ndarray) -> np.ndarray:
        """Components of ambient vectors along the flat's basis, P_E in coordinates."""
        return np.asarray(vectors, dtype=float) @ self.basis.T

    def vectors_to_ambient(self, coords: np.ndarray) -> np.ndarray:
        """Map intrinsic direction vectors to ambient vectors."""
        return np.asarray(coords, dtype=float) @ self.basis

    def residual(self, points: np.ndarray) -> np.ndarray:
        """Distance of ambient points from the flat."""
        points = np.asarray(points, dtype=float)
        projected = self.to_ambient(self.to_intrinsic(points))
        return np.linalg.norm(points - projected, axis=-1)

    def contains(self, points: np.ndarray, tolerance: float = 1e-10) -> np.ndarray:
        """Whether ambient points lie on the flat."""
        return self.residual(points) <= tolerance

    def complement(self) -> np.ndarray:
        """Orthonormal basis (rows) of the orthogonal complement of the direction space."""
        return null_space(self.basis).T

    def embed(self, inner: "AffineSubspace") -> "AffineSubspace":
        """Express a flat given in this flat's intrinsic coordinates in ambient coordinates."""
        if inner.ambient_dim != self.dim:
            raise ValueError(
                f"Inner flat lives in dimension {inner.ambient_dim}, expected {self.dim}"
            )
        return AffineSubspace(
            basis=inner.basis @ self.basis,
            base_point=self.to_ambient(inner.base_point),
        )
