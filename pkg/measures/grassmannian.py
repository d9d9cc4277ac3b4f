"""
Rotation-invariant sampling of directions, frames and ball points.
"""

import numpy as np


def sample_sphere(rng: np.random.Generator, size: int, dim: int) -> np.ndarray:
    """Uniform points on the unit sphere S^{dim-1}, shape (size, dim)."""
    points = rng.standard_normal((size, dim))
    norms = np.linalg.norm(points, axis=1, keepdims=True)
    # A zero Gaussian vector has probability 0; map it to e_1 to stay finite
    points = np.where(norms > 0, points / np.where(norms > 0, norms, 1.0), np.eye(dim)[0])
    return points


def sample_ball(rng: np.random.Generator, size: int, dim: int, radius: float = 1.0) -> np.ndarray:
    """Uniform points in the ball of the given radius, shape (size, dim)."""
    directions = sample_sphere(rng, size, dim)
    radii = radius * rng.random(size) ** (1.0 / dim)
    return directions * radii[:, None]


def haar_orthogonal(rng: np.random.Generator, size: int, dim: int) -> np.ndarray:
    """Haar-distributed orthogonal matrices, shape (size, dim, dim).

    QR of a Gaussian matrix with the signs of R's diagonal moved into Q.
    """
    gaussian = rng.standard_normal((size, dim, dim))
    q, r = np.linalg.qr(gaussian)
    signs = np.sign(np.diagonal(r, axis1=-2, axis2=-1))
    signs = np.where(signs == 0, 1.0, signs)
    return q * signs[:, None, :]


def sample_rotations(rng: np.random.Generator, size: int, dim: int) -> np.ndarray:
    """Random orthonormal bases as rows, shape (size, dim, dim).

    The first l rows of each basis span a uniformly distributed l-subspace and
    the remaining rows span its orthogonal complement.
    """
    return np.swapaxes(haar_orthogonal(rng, size, dim), -1, -2)


def sample_grassmannian(rng: np.random.Generator, size: int, dim: int, l: int) -> np.ndarray:
    """Orthonormal l-frames in R^dim with rotation-invariant span, shape (size, l, dim)."""
    if not 1 <= l <= dim - 1:
        raise ValueError(f"Need 1 <= l <= d - 1, got d={dim}, l={l}")
    return sample_rotations(rng, size, dim)[:, :l, :]
