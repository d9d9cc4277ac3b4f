"""
Convex bodies: the common interface and the smooth (quadric) bodies.

Every body works in its own coordinates. A body with an `ambient_frame` lives
intrinsically in an l-dimensional flat; its data, and every point, line or flat
passed to it, are expressed in that flat's coordinates.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, ClassVar, Dict, Optional

import numpy as np
from scipy import integrate

from geometry.chords import TANGENCY_TOLERANCE, ChordBatch
from geometry.constants import unit_ball_volume, unit_sphere_area
from geometry.flats import AffineSubspace

logger = logging.getLogger(__name__)


class ConvexBody(ABC):
    """Base class for convex bodies with exact chord and normal computations."""

    body_name: str = "body"
    smooth: ClassVar[bool] = False

    def __init__(self, dim: int, ambient_frame: Optional[AffineSubspace] = None):
        """Initialize the body.

        Args:
            dim: Intrinsic dimension of the body
            ambient_frame: Optional flat the body lives in (absent means full space)
        """
        if ambient_frame is not None and ambient_frame.dim != dim:
            raise ValueError(
                f"Body of dimension {dim} cannot live in a flat of dimension {ambient_frame.dim}"
            )
        self.dim = dim
        self.ambient_frame = ambient_frame

    @property
    def intrinsic_dim(self) -> int:
        return self.dim

    @property
    @abstractmethod
    def centroid(self) -> np.ndarray:
        """Center of the enclosing ball used by the samplers."""

    @property
    @abstractmethod
    def enclosing_radius(self) -> float:
        """Radius R of a ball about `centroid` containing the body."""

    @abstractmethod
    def volume(self) -> float:
        """d-dimensional volume |K|."""

    @abstractmethod
    def contains(self, points: np.ndarray) -> np.ndarray:
        """Whether points (n, d) lie in the body."""

    @abstractmethod
    def boundary_residual(self, points: np.ndarray) -> np.ndarray:
        """Distance-like residual of points from the boundary (0 on the boundary)."""

    @abstractmethod
    def normals_at(self, points: np.ndarray) -> np.ndarray:
        """Outer unit normals at boundary points (n, d)."""

    @abstractmethod
    def intersect_lines(self, bases: np.ndarray, directions: np.ndarray) -> ChordBatch:
        """Intersect a batch of lines b + t u (unit u) with the body."""

    @abstractmethod
    def section(self, flat: AffineSubspace) -> Optional["ConvexBody"]:
        """The section K ∩ E in the flat's intrinsic coordinates, or None if empty."""

    def surface_area(self) -> Optional[float]:
        """Exact surface area when available in closed form."""
        return None

    def frame_for(self, flat: AffineSubspace) -> AffineSubspace:
        """The ambient frame of a section along `flat`, composed with this body's frame."""
        if self.ambient_frame is None:
            return flat
        return self.ambient_frame.embed(flat)

    def describe(self) -> Dict[str, Any]:
        """Summary of the body for reports and logs."""
        return {
            "name": self.body_name,
            "dim": self.dim,
            "smooth": self.smooth,
            "embedded": self.ambient_frame is not None,
            "enclosing_radius": self.enclosing_radius,
        }

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(dim={self.dim})"


@dataclass(frozen=True)
class SectionQuadrics:
    """Sections of an ellipsoid by a batch of l-flats, in each flat's coordinates.

    The section by flat i is {y : (y - centers[i]) shapes[i] (y - centers[i])^T <= 1}
    where `valid[i]` holds; invalid flats miss the body.
    """

    centers: np.ndarray
    shapes: np.ndarray
    valid: np.ndarray

    def cholesky(self) -> np.ndarray:
        """Lower Cholesky factors of the shapes (identity where invalid)."""
        eye = np.broadcast_to(np.eye(self.shapes.shape[-1]), self.shapes.shape)
        safe = np.where(self.valid[:, None, None], self.shapes, eye)
        return np.linalg.cholesky(safe)

    @property
    def dim(self) -> int:
        return int(self.shapes.shape[-1])

    def _determinants(self, factors: np.ndarray) -> np.ndarray:
        return np.prod(np.diagonal(factors, axis1=-2, axis2=-1), axis=-1)

    def volumes(self) -> np.ndarray:
        """l-dimensional volumes of the sections (0 where invalid)."""
        determinants = self._determinants(self.cholesky())
        return np.where(self.valid, unit_ball_volume(self.dim) / determinants, 0.0)

    def interior_from_ball(self, ball_points: np.ndarray) -> np.ndarray:
        """Map unit-ball points (n, k, l) into each section, in flat coordinates."""
        inverse = np.linalg.inv(self.cholesky())
        return self.centers[:, None, :] + np.einsum("nkj,nji->nki", ball_points, inverse)

    def boundary_from_sphere(self, unit_vectors: np.ndarray):
        """Map unit vectors (n, k, l) onto each section boundary.

        Returns:
            Tuple of (points, in-flat outer normals, boundary area factors), the
            latter being |s C^T| / det C for the Cholesky factor C of the shape.
        """
        factors = self.cholesky()
        inverse = np.linalg.inv(factors)
        points = self.centers[:, None, :] + np.einsum("nkj,nji->nki", unit_vectors, inverse)
        gradients = np.einsum("nkj,nij->nki", unit_vectors, factors)
        norms = np.linalg.norm(gradients, axis=-1)
        area_factors = norms / self._determinants(factors)[:, None]
        return points, gradients / norms[..., None], area_factors


class Ellipsoid(ConvexBody):
    """The ellipsoid {x : (x - c)^T Q (x - c) <= 1} with Q symmetric positive-definite."""

    body_name = "ellipsoid"
    smooth = True

    def __init__(
        self,
        center: np.ndarray,
        shape_matrix: np.ndarray,
        ambient_frame: Optional[AffineSubspace] = None,
    ):
        center = np.asarray(center, dtype=float).reshape(-1)
        shape_matrix = np.asarray(shape_matrix, dtype=float)
        if shape_matrix.shape != (center.size, center.size):
            raise ValueError(
                f"Shape matrix {shape_matrix.shape} does not match center of size {center.size}"
            )
        scale = max(1.0, float(np.abs(shape_matrix).max()))
        if np.abs(shape_matrix - shape_matrix.T).max() > 1e-12 * scale:
            raise ValueError("Ellipsoid shape matrix must be symmetric")
        shape_matrix = 0.5 * (shape_matrix + shape_matrix.T)
        eigenvalues = np.linalg.eigvalsh(shape_matrix)
        if eigenvalues.min() <= 0:
            raise ValueError("Ellipsoid shape matrix must be positive-definite")
        super().__init__(center.size, ambient_frame)
        self.center = center
        self.shape_matrix = shape_matrix
        self._eigenvalues = eigenvalues
        # Q = L L^T; boundary points are c + s L^{-1} for unit rows s
        self._cholesky = np.linalg.cholesky(shape_matrix)
        self._inverse_cholesky = np.linalg.inv(self._cholesky)
        self._cholesky_determinant = float(np.prod(np.diag(self._cholesky)))

    @classmethod
    def from_semi_axes(
        cls,
        semi_axes: np.ndarray,
        center: Optional[np.ndarray] = None,
        rotation: Optional[np.ndarray] = None,
    ) -> "Ellipsoid":
        """Create an ellipsoid from semi-axis lengths, optionally rotated (columns = axes)."""
        semi_axes = np.asarray(semi_axes, dtype=float)
        if np.any(semi_axes <= 0):
            raise ValueError("Semi-axes must be positive")
        if center is None:
            center = np.zeros(semi_axes.size)
        shape = np.diag(1.0 / semi_axes**2)
        if rotation is not None:
            rotation = np.asarray(rotation, dtype=float)
            shape = rotation @ shape @ rotation.T
        return cls(center=center, shape_matrix=shape)

    @property
    def semi_axes(self) -> np.ndarray:
        return np.sort(1.0 / np.sqrt(self._eigenvalues))[::-1]

    @property
    def centroid(self) -> np.ndarray:
        return self.center

    @property
    def enclosing_radius(self) -> float:
        return float(1.0 / np.sqrt(self._eigenvalues.min()))

    def volume(self) -> float:
        return unit_ball_volume(self.dim) / self._cholesky_determinant

    def quadratic_form(self, points: np.ndarray) -> np.ndarray:
        offsets = np.asarray(points, dtype=float) - self.center
        return np.einsum("...i,ij,...j->...", offsets, self.shape_matrix, offsets)

    def contains(self, points: np.ndarray) -> np.ndarray:
        return self.quadratic_form(points) <= 1.0 + 1e-12

    def boundary_residual(self, points: np.ndarray) -> np.ndarray:
        return np.abs(self.quadratic_form(points) - 1.0)

    def normals_at(self, points: np.ndarray) -> np.ndarray:
        gradients = (np.asarray(points, dtype=float) - self.center) @ self.shape_matrix
        return gradients / np.linalg.norm(gradients, axis=-1, keepdims=True)

    def boundary_from_sphere(self, unit_vectors: np.ndarray):
        """Map unit vectors s to boundary points c + s L^{-1}.

        Returns:
            Tuple of (points, outer normals, area factors). The area factor is the
            surface Jacobian of the map from the unit sphere, |s L^T| / det L.
        """
        points = self.center + unit_vectors @ self._inverse_cholesky
        gradients = unit_vectors @ self._cholesky.T
        norms = np.linalg.norm(gradients, axis=-1)
        return points, gradients / norms[:, None], norms / self._cholesky_determinant

    def interior_from_ball(self, ball_points: np.ndarray) -> np.ndarray:
        """Affine image of points of the unit ball."""
        return self.center + ball_points @ self._inverse_cholesky

    def perimeter(self) -> float:
        """Boundary length of a planar ellipse by quadrature of the boundary speed."""
        if self.dim != 2:
            raise ValueError("Perimeter is defined for planar ellipses only")

        def speed(theta: float) -> float:
            tangent = np.array([-np.sin(theta), np.cos(theta)]) @ self._inverse_cholesky
            return float(np.linalg.norm(tangent))

        value, _ = integrate.quad(speed, 0.0, 2.0 * np.pi, limit=200, epsabs=1e-13)
        return float(value)

    def intersect_lines(self, bases: np.ndarray, directions: np.ndarray) -> ChordBatch:
        bases = np.asarray(bases, dtype=float)
        directions = np.asarray(directions, dtype=float)
        offsets = bases - self.center
        q_directions = directions @ self.shape_matrix
        a = np.einsum("nd,nd->n", q_directions, directions)
        b = np.einsum("nd,nd->n", q_directions, offsets)
        c = self.quadratic_form(bases) - 1.0
        discriminant = b * b - a * c
        root = np.sqrt(np.clip(discriminant, 0.0, None))
        t_enter = (-b - root) / a
        t_exit = (-b + root) / a
        hit = (discriminant > 0) & (t_exit - t_enter > TANGENCY_TOLERANCE)
        t_enter = np.where(hit, t_enter, 0.0)
        t_exit = np.where(hit, t_exit, 0.0)
        normals_1 = self._normals_or_zero(bases + t_enter[:, None] * directions, hit)
        normals_2 = self._normals_or_zero(bases + t_exit[:, None] * directions, hit)
        size = bases.shape[0]
        return ChordBatch(
            bases=bases,
            directions=directions,
            hit=hit,
            t_enter=t_enter,
            t_exit=t_exit,
            normals_1=normals_1,
            normals_2=normals_2,
            facets_1=np.full(size, -1),
            facets_2=np.full(size, -1),
            ambiguous=np.zeros(size, dtype=bool),
        )

    def _normals_or_zero(self, points: np.ndarray, mask: np.ndarray) -> np.ndarray:
        gradients = (points - self.center) @ self.shape_matrix
        norms = np.linalg.norm(gradients, axis=-1, keepdims=True)
        with np.errstate(invalid="ignore", divide="ignore"):
            normals = gradients / norms
        return np.where(mask[:, None] & (norms > 0), normals, 0.0)

    def section_quadrics(self, bases: np.ndarray, frames: np.ndarray) -> SectionQuadrics:
        """Sections by a batch of flats b_i + span(frames[i]), frames (n, l, d) orthonormal."""
        offsets = np.asarray(bases, dtype=float) - self.center
        restricted = np.einsum("nid,de,nje->nij", frames, self.shape_matrix, frames)
        linear = np.einsum("nid,de,ne->ni", frames, self.shape_matrix, offsets)
        centers = -np.linalg.solve(restricted, linear[..., None])[..., 0]
        level = (
            1.0
            - np.einsum("nd,de,ne->n", offsets, self.shape_matrix, offsets)
            + np.einsum("ni,ni->n", linear, -centers)
        )
        valid = level > 0
        safe_level = np.where(valid, level, 1.0)
        return SectionQuadrics(
            centers=centers, shapes=restricted / safe_level[:, None, None], valid=valid
        )

    def section(self, flat: AffineSubspace) -> Optional["Ellipsoid"]:
        if flat.ambient_dim != self.dim:
            raise ValueError(f"Flat lives in dimension {flat.ambient_dim}, body in {self.dim}")
        quadrics = self.section_quadrics(flat.base_point[None, :], flat.basis[None, :, :])
        if not quadrics.valid[0]:
            return None
        return Ellipsoid(
            center=quadrics.centers[0],
            shape_matrix=quadrics.shapes[0],
            ambient_frame=self.frame_for(flat),
        )

    def describe(self) -> Dict[str, Any]:
        summary = super().describe()
        summary["semi_axes"] = [float(a) for a in self.semi_axes]
        return summary


class Ball(Ellipsoid):
    """Euclidean ball of a given radius."""

    body_name = "ball"

    def __init__(
        self,
        dim: int,
        radius: float = 1.0,
        center: Optional[np.ndarray] = None,
        ambient_frame: Optional[AffineSubspace] = None,
    ):
        if radius <= 0:
            raise ValueError("Ball radius must be positive")
        if center is None:
            center = np.zeros(dim)
        super().__init__(
            center=center, shape_matrix=np.eye(dim) / radius**2, ambient_frame=ambient_frame
        )
        self.radius = float(radius)

    @property
    def enclosing_radius(self) -> float:
        return self.radius

    def surface_area(self) -> Optional[float]:
        return unit_sphere_area(self.dim) * self.radius ** (self.dim - 1)
