"""
Built-in bodies and the polytope text format.

Body specs: `ball`, `disk`, `ellipsoid:a1,...,ad`, `cube`, `simplex`,
`regular-simplex`, `octahedron`, `regular-polygon:n` (d = 2), or a path to a
polytope file. A polytope file has a `vertices` section (rows of d floats)
and/or a `halfspaces` section (rows of d+1 floats: normal then offset, for
<normal, x> <= offset); `#` starts a comment.
"""

import itertools
import logging
import os
from typing import Callable, Dict, List, Optional

import numpy as np
from scipy.linalg import null_space

from geometry.bodies import Ball, ConvexBody, Ellipsoid
from geometry.errors import BodySpecError
from geometry.polytopes import Polytope

logger = logging.getLogger(__name__)


def unit_cube(dim: int) -> Polytope:
    vertices = np.array(list(itertools.product([0.0, 1.0], repeat=dim)))
    return Polytope(vertices=vertices, name="cube")


def standard_simplex(dim: int) -> Polytope:
    """conv{0, e_1, ..., e_d}."""
    vertices = np.vstack([np.zeros(dim), np.eye(dim)])
    return Polytope(vertices=vertices, name="simplex")


def regular_simplex(dim: int) -> Polytope:
    """Regular d-simplex with circumradius 1 centered at the origin."""
    lifted = np.eye(dim + 1) - 1.0 / (dim + 1)
    frame = null_space(np.ones((1, dim + 1)))
    vertices = lifted @ frame
    vertices /= np.linalg.norm(vertices[0])
    return Polytope(vertices=vertices, name="regular-simplex")


def cross_polytope(dim: int) -> Polytope:
    vertices = np.vstack([np.eye(dim), -np.eye(dim)])
    return Polytope(vertices=vertices, name="octahedron")


def regular_polygon(sides: int) -> Polytope:
    """Regular polygon with circumradius 1."""
    if sides < 3:
        raise BodySpecError(f"A polygon needs at least 3 sides, got {sides}")
    angles = 2.0 * np.pi * np.arange(sides) / sides
    return Polytope(
        vertices=np.column_stack([np.cos(angles), np.sin(angles)]), name=f"regular-polygon:{sides}"
    )


POLYTOPE_BUILDERS: Dict[str, Callable[[int], Polytope]] = {
    "cube": unit_cube,
    "simplex": standard_simplex,
    "regular-simplex": regular_simplex,
    "octahedron": cross_polytope,
}


def _parse_rows(lines: List[str], width: Optional[int], section: str, path: str) -> np.ndarray:
    try:
        rows = [[float(token) for token in line.split()] for line in lines]
    except ValueError as e:
        raise BodySpecError(f"{path}: non-numeric entry in {section}: {e}") from e
    if not rows:
        raise BodySpecError(f"{path}: empty {section} section")
    lengths = {len(row) for row in rows}
    if len(lengths) != 1 or (width is not None and lengths != {width}):
        raise BodySpecError(
            f"{path}: rows of {section} have inconsistent lengths {sorted(lengths)}"
        )
    return np.array(rows)


def load_polytope_file(path: str) -> Polytope:
    """Read a polytope from the `vertices` / `halfspaces` text format."""
    sections: Dict[str, List[str]] = {}
    current: Optional[str] = None
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for raw in handle:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if line.lower() in ("vertices", "halfspaces"):
                    current = line.lower()
                    sections[current] = []
                elif current is None:
                    raise BodySpecError(f"{path}: data before a 'vertices' or 'halfspaces' header")
                else:
                    sections[current].append(line)
    except OSError as e:
        raise BodySpecError(f"Cannot read polytope file {path}: {e}") from e

    name = os.path.splitext(os.path.basename(path))[0]
    vertices = None
    if "vertices" in sections:
        vertices = _parse_rows(sections["vertices"], None, "vertices", path)
    halfspaces = None
    if "halfspaces" in sections:
        width = vertices.shape[1] + 1 if vertices is not None else None
        rows = _parse_rows(sections["halfspaces"], width, "halfspaces", path)
        halfspaces = (rows[:, :-1], rows[:, -1])
    try:
        if vertices is not None:
            return Polytope(vertices=vertices, halfspaces=halfspaces, name=name)
        if halfspaces is not None:
            return Polytope.from_halfspaces(*halfspaces, name=name)
    except ValueError as e:
        raise BodySpecError(f"{path}: {e}") from e
    raise BodySpecError(f"{path}: no 'vertices' or 'halfspaces' section")


def parse_body_spec(spec: str, dim: Optional[int] = None) -> ConvexBody:
    """Build a body from its spec string.

    Args:
        spec: Built-in name (optionally with parameters after ':') or a polytope file path
        dim: Ambient dimension; required for dimension-free built-ins

    Returns:
        The body

    Raises:
        BodySpecError: If the spec is unknown, malformed or inconsistent with `dim`
    """
    name, _, parameters = spec.strip().partition(":")
    name = name.lower()

    if os.path.isfile(spec):
        body: ConvexBody = load_polytope_file(spec)
    elif name == "ellipsoid":
        try:
            semi_axes = [float(value) for value in parameters.split(",") if value.strip()]
        except ValueError as e:
            raise BodySpecError(f"Bad ellipsoid semi-axes '{parameters}'") from e
        if not semi_axes or min(semi_axes) <= 0:
            raise BodySpecError("Ellipsoid semi-axes must be positive, e.g. ellipsoid:2,1,1")
        body = Ellipsoid.from_semi_axes(np.array(semi_axes))
    elif name == "regular-polygon":
        try:
            sides = int(parameters)
        except ValueError as e:
            raise BodySpecError(f"Bad polygon side count '{parameters}'") from e
        body = regular_polygon(sides)
    elif name in ("ball", "disk") or name in POLYTOPE_BUILDERS:
        if name == "disk":
            dim = 2 if dim is None else dim
        if dim is None:
            raise BodySpecError(f"Body '{name}' needs a dimension")
        if dim < 1:
            raise BodySpecError(f"Dimension must be positive, got {dim}")
        if name in ("ball", "disk"):
            try:
                radius = float(parameters) if parameters else 1.0
                body = Ball(dim=dim, radius=radius)
            except ValueError as e:
                raise BodySpecError(f"Bad ball radius '{parameters}'") from e
        else:
            if dim < 2:
                raise BodySpecError(f"Body '{name}' needs dimension at least 2")
            body = POLYTOPE_BUILDERS[name](dim)
    else:
        raise BodySpecError(f"Unknown body '{spec}'")

    if dim is not None and body.dim != dim:
        raise BodySpecError(f"Body '{spec}' has dimension {body.dim}, expected {dim}")
    logger.debug(f"Parsed body spec '{spec}' as {body!r}")
    return body
