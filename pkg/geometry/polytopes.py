"""
Convex polytopes given by vertices (and optionally their halfspaces).

Facets come from the convex hull with coplanar hull simplices merged; each
facet carries a simplicial decomposition so its points can be sampled
uniformly. Sections are supported for lines and planes.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, Delaunay, HalfspaceIntersection

from geometry.bodies import ConvexBody
from geometry.chords import TANGENCY_TOLERANCE, ChordBatch
from geometry.errors import AmbiguousNormalError, NotOnBoundaryError, UnsupportedSectionError
from geometry.flats import AffineSubspace
from geometry.simplices import simplex_volumes

logger = logging.getLogger(__name__)

# Points closer than this to a second facet plane sit on a ridge
RIDGE_TOLERANCE = 1e-10
BOUNDARY_TOLERANCE = 1e-9
COPLANAR_TOLERANCE = 1e-9


@dataclass(frozen=True)
class FacetRecord:
    """One facet: the face {x in P : <normal, x> = offset}.

    Attributes:
        vertex_indices: Indices into the polytope's vertex array
        normal: Outer unit normal
        offset: Support value, <normal, x> = offset on the facet
        area: (d-1)-dimensional measure
        simplices: (m, d) vertex-index rows of the facet's simplicial decomposition
        simplex_areas: (m,) measures of those simplices
    """

    vertex_indices: Tuple[int, ...]
    normal: np.ndarray
    offset: float
    area: float
    simplices: np.ndarray
    simplex_areas: np.ndarray


def clip_polygon(vertices: np.ndarray, normal: np.ndarray, offset: float) -> Optional[np.ndarray]:
    """Clip a convex polygon (CCW rows) to the halfplane <normal, y> <= offset.

    Sutherland-Hodgman for a single clipping edge. Returns None when fewer than
    three vertices survive.
    """
    values = vertices @ normal - offset
    inside = values <= 0.0
    if inside.all():
        return vertices
    if not inside.any():
        return None
    output: List[np.ndarray] = []
    count = len(vertices)
    for i in range(count):
        a, b = vertices[i], vertices[(i + 1) % count]
        fa, fb = values[i], values[(i + 1) % count]
        if inside[i]:
            output.append(a)
        if inside[i] != inside[(i + 1) % count]:
            t = fa / (fa - fb)
            output.append(a + t * (b - a))
    if len(output) < 3:
        return None
    return np.array(output)


def polygon_area(vertices: np.ndarray) -> float:
    """Shoelace area of a simple polygon."""
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


class Polytope(ConvexBody):
    """The convex hull of finitely many points."""

    body_name = "polytope"

    def __init__(
        self,
        vertices: np.ndarray,
        halfspaces: Optional[Tuple[np.ndarray, np.ndarray]] = None,
        ambient_frame: Optional[AffineSubspace] = None,
        name: Optional[str] = None,
    ):
        """Build the polytope and its facet records.

        Args:
            vertices: (n, d) points whose hull is the polytope (non-extreme points are dropped)
            halfspaces: Optional (normals, offsets) with <normal, x> <= offset, validated
                against the vertices
            ambient_frame: Optional flat the polytope lives in
            name: Optional display name (defaults to "polytope")
        """
        vertices = np.atleast_2d(np.asarray(vertices, dtype=float))
        dim = vertices.shape[1]
        super().__init__(dim, ambient_frame)
        if name is not None:
            self.body_name = name

        if dim == 1:
            low, high = float(vertices.min()), float(vertices.max())
            if high - low <= TANGENCY_TOLERANCE:
                raise ValueError("Degenerate one-dimensional polytope")
            self.vertices = np.array([[low], [high]])
            self.normals = np.array([[-1.0], [1.0]])
            self.offsets = np.array([-low, high])
            self._volume = high - low
            # Facets of a segment are its endpoints, with counting measure
            self.facets = [
                FacetRecord((0,), self.normals[0], -low, 1.0, np.array([[0]]), np.ones(1)),
                FacetRecord((1,), self.normals[1], high, 1.0, np.array([[1]]), np.ones(1)),
            ]
        else:
            hull = ConvexHull(vertices)
            extreme = np.sort(hull.vertices)
            self.vertices = vertices[extreme]
            self._volume = float(hull.volume)
            self.normals, self.offsets = self._merge_hull_planes(hull.equations)
            self.facets = [self._build_facet(i) for i in range(len(self.offsets))]

        if halfspaces is not None:
            self._validate_halfspaces(*halfspaces)

        scale = max(1.0, float(np.abs(self.vertices).max()))
        self._tolerance = BOUNDARY_TOLERANCE * scale
        self._centroid = self.vertices.mean(axis=0)
        self._radius = float(np.linalg.norm(self.vertices - self._centroid, axis=1).max())
        logger.debug(
            f"Built {self.body_name} in dimension {dim}: "
            f"{len(self.vertices)} vertices, {len(self.facets)} facets"
        )

    @classmethod
    def from_halfspaces(
        cls, normals: np.ndarray, offsets: np.ndarray, name: Optional[str] = None
    ) -> "Polytope":
        """Create a bounded polytope {x : normals x <= offsets}."""
        normals = np.atleast_2d(np.asarray(normals, dtype=float))
        offsets = np.asarray(offsets, dtype=float).reshape(-1)
        dim = normals.shape[1]
        # Chebyshev center as the interior point
        norms = np.linalg.norm(normals, axis=1)
        objective = np.zeros(dim + 1)
        objective[-1] = -1.0
        result = linprog(
            objective,
            A_ub=np.hstack([normals, norms[:, None]]),
            b_ub=offsets,
            bounds=[(None, None)] * dim + [(0.0, None)],
        )
        if not result.success or result.x[-1] <= 0:
            raise ValueError("Halfspaces do not bound a full-dimensional polytope")
        interior = result.x[:dim]
        intersection = HalfspaceIntersection(np.hstack([normals, -offsets[:, None]]), interior)
        return cls(vertices=intersection.intersections, halfspaces=(normals, offsets), name=name)

    def _merge_hull_planes(self, equations: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        normals: List[np.ndarray] = []
        offsets: List[float] = []
        for equation in equations:
            normal, offset = equation[:-1], -equation[-1]
            duplicate = any(
                np.abs(normal - other).max() < COPLANAR_TOLERANCE
                and abs(offset - other_offset) < COPLANAR_TOLERANCE * max(1.0, abs(offset))
                for other, other_offset in zip(normals, offsets)
            )
            if not duplicate:
                normals.append(normal / np.linalg.norm(normal))
                offsets.append(float(offset))
        return np.array(normals), np.array(offsets)

    def _build_facet(self, index: int) -> FacetRecord:
        normal, offset = self.normals[index], self.offsets[index]
        scale = max(1.0, float(np.abs(self.vertices).max()))
        on_plane = np.nonzero(
            np.abs(self.vertices @ normal - offset) <= COPLANAR_TOLERANCE * scale
        )[0]
        frame = null_space(normal[None, :]).T
        coords = (self.vertices[on_plane] - normal * offset) @ frame.T
        if coords.shape[1] == 1:
            order = np.argsort(coords[:, 0])
            local = np.array([[order[0], order[-1]]])
        else:
            local = Delaunay(coords).simplices
        simplices = on_plane[local]
        simplex_areas = simplex_volumes(self.vertices[simplices])
        keep = simplex_areas > 0
        return FacetRecord(
            vertex_indices=tuple(int(i) for i in on_plane),
            normal=normal,
            offset=float(offset),
            area=float(simplex_areas[keep].sum()),
            simplices=simplices[keep],
            simplex_areas=simplex_areas[keep],
        )

    def _validate_halfspaces(self, normals: np.ndarray, offsets: np.ndarray) -> None:
        normals = np.atleast_2d(np.asarray(normals, dtype=float))
        offsets = np.asarray(offsets, dtype=float).reshape(-1)
        norms = np.linalg.norm(normals, axis=1)
        slack = (self.vertices @ normals.T - offsets) / norms
        scale = max(1.0, float(np.abs(self.vertices).max()))
        if slack.max() > BOUNDARY_TOLERANCE * scale:
            raise ValueError(
                f"Vertices violate the given halfspaces by up to {float(slack.max()):.3g}"
            )

    @property
    def centroid(self) -> np.ndarray:
        return self._centroid

    @property
    def enclosing_radius(self) -> float:
        return self._radius

    def volume(self) -> float:
        return self._volume

    def surface_area(self) -> Optional[float]:
        return float(sum(facet.area for facet in self.facets))

    @cached_property
    def facet_areas(self) -> np.ndarray:
        return np.array([facet.area for facet in self.facets])

    @cached_property
    def simplex_table(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """All facet simplices: vertex positions (S, d, d), facet ids (S,), areas (S,)."""
        positions = [self.vertices[facet.simplices] for facet in self.facets]
        facet_ids = [np.full(len(facet.simplices), i) for i, facet in enumerate(self.facets)]
        areas = [facet.simplex_areas for facet in self.facets]
        return np.concatenate(positions), np.concatenate(facet_ids), np.concatenate(areas)

    @cached_property
    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.vertices.min(axis=0), self.vertices.max(axis=0)

    def contains(self, points: np.ndarray) -> np.ndarray:
        slack = np.asarray(points, dtype=float) @ self.normals.T - self.offsets
        return (slack <= self._tolerance).all(axis=-1)

    def boundary_residual(self, points: np.ndarray) -> np.ndarray:
        slack = np.asarray(points, dtype=float) @ self.normals.T - self.offsets
        return np.abs(slack.max(axis=-1))

    def classify_boundary(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Facet index of each boundary point and whether it lies on a ridge."""
        distances = np.abs(self.offsets - np.asarray(points, dtype=float) @ self.normals.T)
        order = np.argsort(distances, axis=-1)
        nearest = np.take_along_axis(distances, order[..., :2], axis=-1)
        return order[..., 0], nearest[..., 1] <= RIDGE_TOLERANCE * max(1.0, self._radius)

    def normals_at(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if np.any(self.boundary_residual(points) > self._tolerance):
            raise NotOnBoundaryError("Point is not on the polytope boundary")
        facets, ambiguous = self.classify_boundary(points)
        if np.any(ambiguous):
            raise AmbiguousNormalError("Point lies on a ridge; the outer normal is not unique")
        return self.normals[facets]

    def intersect_lines(self, bases: np.ndarray, directions: np.ndarray) -> ChordBatch:
        bases = np.asarray(bases, dtype=float)
        directions = np.asarray(directions, dtype=float)
        numerators = self.offsets - bases @ self.normals.T
        denominators = directions @ self.normals.T
        parallel = np.abs(denominators) <= 1e-14
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = numerators / np.where(parallel, 1.0, denominators)
        upper = np.where(~parallel & (denominators > 0), ratios, np.inf)
        lower = np.where(~parallel & (denominators < 0), ratios, -np.inf)
        exit_facets = np.argmin(upper, axis=1)
        enter_facets = np.argmax(lower, axis=1)
        rows = np.arange(len(bases))
        t_exit = upper[rows, exit_facets]
        t_enter = lower[rows, enter_facets]
        blocked = np.any(parallel & (numerators < 0), axis=1)
        hit = ~blocked & np.isfinite(t_enter) & np.isfinite(t_exit)
        hit &= (t_exit - t_enter) > TANGENCY_TOLERANCE

        ambiguous = np.zeros(len(bases), dtype=bool)
        if self.normals.shape[0] > 2:
            sorted_lower = np.sort(lower, axis=1)
            sorted_upper = np.sort(upper, axis=1)
            with np.errstate(invalid="ignore"):
                enter_gap = sorted_lower[:, -1] - sorted_lower[:, -2]
                exit_gap = sorted_upper[:, 1] - sorted_upper[:, 0]
            ambiguous = hit & ((enter_gap <= RIDGE_TOLERANCE) | (exit_gap <= RIDGE_TOLERANCE))

        t_enter = np.where(hit, t_enter, 0.0)
        t_exit = np.where(hit, t_exit, 0.0)
        return ChordBatch(
            bases=bases,
            directions=directions,
            hit=hit,
            t_enter=t_enter,
            t_exit=t_exit,
            normals_1=np.where(hit[:, None], self.normals[enter_facets], 0.0),
            normals_2=np.where(hit[:, None], self.normals[exit_facets], 0.0),
            facets_1=np.where(hit, enter_facets, -1),
            facets_2=np.where(hit, exit_facets, -1),
            ambiguous=ambiguous,
        )

    def facet_frame(self, index: int) -> AffineSubspace:
        """The affine hull of a facet, as a (d-1)-flat in this polytope's coordinates."""
        facet = self.facets[index]
        return AffineSubspace(
            basis=null_space(facet.normal[None, :]).T, base_point=facet.normal * facet.offset
        )

    def facet_body(self, index: int) -> "Polytope":
        """A facet as a (d-1)-dimensional polytope living in its affine hull."""
        if self.dim < 2:
            raise UnsupportedSectionError("Facets of a segment are points")
        frame = self.facet_frame(index)
        coords = frame.to_intrinsic(self.vertices[list(self.facets[index].vertex_indices)])
        return Polytope(vertices=coords, ambient_frame=self.frame_for(frame), name="facet")

    def restricted_halfspaces(self, flat: AffineSubspace) -> Tuple[np.ndarray, np.ndarray]:
        """The polytope's halfspaces in a flat's intrinsic coordinates."""
        offsets = self.offsets - self.normals @ flat.base_point
        return flat.vectors_to_intrinsic(self.normals), offsets

    def section(self, flat: AffineSubspace) -> Optional["Polytope"]:
        if flat.ambient_dim != self.dim:
            raise ValueError(f"Flat lives in dimension {flat.ambient_dim}, body in {self.dim}")
        if not 1 <= flat.dim < self.dim:
            raise ValueError(f"Section dimension must be in [1, {self.dim - 1}], got {flat.dim}")
        if flat.dim >= 3:
            raise UnsupportedSectionError(
                f"Polytope sections are supported for lines and planes, not dimension {flat.dim}"
            )
        normals, offsets = self.restricted_halfspaces(flat)
        norms = np.linalg.norm(normals, axis=1)
        degenerate = norms <= 1e-14
        if np.any(degenerate & (offsets < 0)):
            return None
        normals, offsets, norms = normals[~degenerate], offsets[~degenerate], norms[~degenerate]
        normals, offsets = normals / norms[:, None], offsets / norms

        if flat.dim == 1:
            chords = self.intersect_lines(flat.base_point[None, :], flat.basis)
            if not chords.hit[0]:
                return None
            interval = np.array([[chords.t_enter[0]], [chords.t_exit[0]]])
            return Polytope(vertices=interval, ambient_frame=self.frame_for(flat), name="segment")

        center = flat.to_intrinsic(self._centroid)
        half = 2.0 * self._radius + 1.0
        polygon: Optional[np.ndarray] = center + half * np.array(
            [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]
        )
        for normal, offset in zip(normals, offsets):
            polygon = clip_polygon(polygon, normal, offset)
            if polygon is None:
                return None
        if polygon_area(polygon) <= TANGENCY_TOLERANCE:
            return None
        return Polytope(vertices=polygon, ambient_frame=self.frame_for(flat), name="polygon")

    def describe(self) -> Dict[str, Any]:
        summary = super().describe()
        summary["vertices"] = int(len(self.vertices))
        summary["facets"] = int(len(self.facets))
        return summary
