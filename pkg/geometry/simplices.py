"""
Simplex volumes in arbitrary dimension via the Gram determinant.
"""

import math

import numpy as np


def simplex_volumes(points: np.ndarray) -> np.ndarray:
    """Volumes of a batch of l-simplices.

    Args:
        points: (n, l+1, d) array, each row the vertices x_0, ..., x_l of one simplex

    Returns:
        (n,) array of l-dimensional volumes sqrt(det(M^T M)) / l!, with M the
        edge vectors x_i - x_0. Degenerate simplices give 0.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 3:
        raise ValueError(f"Expected (n, l+1, d) array, got shape {points.shape}")
    order = points.shape[1] - 1
    if order == 0:
        return np.ones(points.shape[0])
    edges = points[:, 1:, :] - points[:, :1, :]
    gram = np.einsum("nid,njd->nij", edges, edges)
    determinant = np.clip(np.linalg.det(gram), 0.0, None)
    return np.sqrt(determinant) / math.factorial(order)


def simplex_volume(points: np.ndarray) -> float:
    """Volume of the l-simplex spanned by l+1 points in R^d (0 when degenerate)."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2:
        raise ValueError(f"Expected (l+1, d) array, got shape {points.shape}")
    if points.shape[0] - 1 > points.shape[1]:
        raise ValueError(
            f"{points.shape[0]} points cannot span a simplex in dimension {points.shape[1]}"
        )
    return float(simplex_volumes(points[None, :, :])[0])
