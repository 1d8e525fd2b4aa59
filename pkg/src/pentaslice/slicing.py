"""Cross-sections of a 4-polytope by the hyperplane w = c0.

Slicing drops every element one dimension: a mesh vertex is the cut of
a 4-D edge, a mesh edge the cut of a 4-D face, a mesh face the cut of
a 4-D cell.  Each mesh element keeps the index of its source element,
so the provenance chain survives into exports and the viewer.

Assembly is purely combinatorial:

  * every polytope edge with endpoints on opposite sides of the
    hyperplane contributes one mesh vertex (linear interpolation);
  * every polytope face then holds either 0 or 2 cut edges, and a face
    with 2 contributes the mesh edge joining their cut points;
  * every cell's cut points are closed into one convex polygon by
    walking adjacency, where two cut points are neighbors iff their
    source edges lie on a common face of that cell.  A tetrahedral
    cell yields a triangle (1-vs-3 vertex split) or a planar
    quadrilateral (2-vs-2 split); the quad is kept as one face, not
    two triangles.

Polygon loops are oriented so their normals point away from the slice
centroid, which makes rendering deterministic.

A polytope vertex lying on the hyperplane (within eps) makes the
section combinatorially ambiguous; slice_polychoron refuses with
DegenerateSlice and leaves the retry policy (nudging c0) to the
caller.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .polytope import Polychoron

__all__ = [
    "Hyperplane",
    "SliceMesh",
    "VertexSign",
    "ParallelEdge",
    "DegenerateSlice",
    "classify_vertex",
    "intersect_edge",
    "slice_polychoron",
    "euler_characteristic",
]


class ParallelEdge(ValueError):
    """Edge endpoints share one w coordinate: no unique crossing point."""


class DegenerateSlice(ValueError):
    """The hyperplane touches a polytope vertex; the section is ambiguous."""


class VertexSign(enum.Enum):
    """Position of a vertex relative to w = c0, with tolerance."""

    BELOW = -1
    ON = 0
    ABOVE = 1


@dataclass(frozen=True)
class Hyperplane:
    """The axis-aligned slicing hyperplane w = c0."""

    c0: float


@dataclass(frozen=True, eq=False)
class SliceMesh:
    """A 3-D cross-section with full provenance into the sliced polytope.

    vertices: (n, 3) float array of cut points.
    vertex_source_edges[i], vertex_params[i]: the polytope edge that
        vertex i cuts and the interpolation parameter t in [0, 1]
        along it.
    edges / edge_source_faces: mesh segments and the polytope face
        each one crosses.
    faces / face_source_cells: convex planar loops and the polytope
        cell each one crosses.
    """

    vertices: np.ndarray
    vertex_source_edges: tuple[int, ...]
    vertex_params: tuple[float, ...]
    edges: tuple[tuple[int, int], ...]
    edge_source_faces: tuple[int, ...]
    faces: tuple[tuple[int, ...], ...]
    face_source_cells: tuple[int, ...]

    def __post_init__(self) -> None:
        v = np.array(self.vertices, dtype=float).reshape(-1, 3)
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) == 0


_EMPTY_MESH = None


def _empty_mesh() -> SliceMesh:
    global _EMPTY_MESH
    if _EMPTY_MESH is None:
        _EMPTY_MESH = SliceMesh(np.zeros((0, 3)), (), (), (), (), (), ())
    return _EMPTY_MESH


def classify_vertex(w: float, c0: float, eps: float) -> VertexSign:
    """ON within eps of the hyperplane, else BELOW or ABOVE."""
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps!r}")
    d = w - c0
    if abs(d) <= eps:
        return VertexSign.ON
    return VertexSign.BELOW if d < 0.0 else VertexSign.ABOVE


def intersect_edge(p, q, c0: float) -> tuple[np.ndarray, float]:
    """Cut point of the segment p->q with w = c0, plus the parameter t.

    Callers must pass endpoints with (w - c0) of strictly opposite
    signs, which puts t in (0, 1).  The returned point drops w, which
    equals c0 by construction.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    dw = q[3] - p[3]
    if dw == 0.0:
        raise ParallelEdge(f"both endpoints have w = {p[3]!r}")
    t = (c0 - p[3]) / dw
    point = p[:3] + t * (q[:3] - p[:3])
    return point, float(t)


def _polygon_normal(points: np.ndarray) -> np.ndarray:
    # Newell's method: robust for any planar polygon, no collinearity traps.
    normal = np.zeros(3)
    n = len(points)
    for i in range(n):
        a = points[i]
        b = points[(i + 1) % n]
        normal[0] += (a[1] - b[1]) * (a[2] + b[2])
        normal[1] += (a[2] - b[2]) * (a[0] + b[0])
        normal[2] += (a[0] - b[0]) * (a[1] + b[1])
    return normal


def _walk_loop(adjacency: dict[int, set[int]], cell_index: int) -> list[int]:
    """Close a degree-2 adjacency graph into one cycle, deterministically."""
    for mv, nbrs in adjacency.items():
        if len(nbrs) != 2:
            raise DegenerateSlice(
                f"cell {cell_index}: cut point {mv} has {len(nbrs)} neighbors, "
                "expected 2"
            )
    start = min(adjacency)
    loop = [start]
    prev = -1
    current = start
    while True:
        nxt = min(v for v in adjacency[current] if v != prev)
        if nxt == start:
            break
        loop.append(nxt)
        prev, current = current, nxt
        if len(loop) > len(adjacency):
            raise DegenerateSlice(
                f"cell {cell_index}: cut points do not close into one cycle"
            )
    if len(loop) != len(adjacency):
        raise DegenerateSlice(
            f"cell {cell_index}: cut points split into multiple cycles"
        )
    return loop


def slice_polychoron(p: Polychoron, h: Hyperplane, eps: float) -> SliceMesh:
    """Cross-section of ``p`` by w = c0; empty mesh when nothing straddles.

    Raises DegenerateSlice when any polytope vertex classifies ON
    (within eps); callers decide whether to nudge c0 and retry.
    """
    c0 = float(h.c0)
    signs = [classify_vertex(float(w), c0, eps) for w in p.vertices[:, 3]]
    on_vertices = [i for i, s in enumerate(signs) if s is VertexSign.ON]
    if on_vertices:
        raise DegenerateSlice(
            f"hyperplane w = {c0!r} touches vertices {on_vertices} (eps = {eps!r})"
        )

    # Mesh vertices: one per straddling polytope edge.
    cut_vertex: dict[int, int] = {}
    points: list[np.ndarray] = []
    source_edges: list[int] = []
    params: list[float] = []
    for ei, (i, j) in enumerate(p.edges):
        if signs[i] is signs[j]:
            continue
        point, t = intersect_edge(p.vertices[i], p.vertices[j], c0)
        cut_vertex[ei] = len(points)
        points.append(point)
        source_edges.append(ei)
        params.append(t)

    if not points:
        return _empty_mesh()

    edge_lookup = {frozenset(e): ei for ei, e in enumerate(p.edges)}

    # Mesh edges: one per polytope face holding exactly two cut edges.
    mesh_edges: list[tuple[int, int]] = []
    edge_faces: list[int] = []
    segments_by_face: dict[int, tuple[int, int]] = {}
    for fi, loop in enumerate(p.faces):
        cut = [
            cut_vertex[edge_lookup[frozenset((loop[k], loop[(k + 1) % len(loop)]))]]
            for k in range(len(loop))
            if edge_lookup[frozenset((loop[k], loop[(k + 1) % len(loop)]))] in cut_vertex
        ]
        if not cut:
            continue
        if len(cut) != 2:
            raise DegenerateSlice(
                f"face {fi} is cut in {len(cut)} edges, expected 0 or 2"
            )
        a, b = sorted(cut)
        mesh_edges.append((a, b))
        edge_faces.append(fi)
        segments_by_face[fi] = (a, b)

    vertices = np.array(points)
    centroid = vertices.mean(axis=0)

    # Mesh faces: per cell, close that cell's segments into one polygon.
    mesh_faces: list[tuple[int, ...]] = []
    face_cells: list[int] = []
    for ci, face_ids in enumerate(p.cells):
        adjacency: dict[int, set[int]] = {}
        for fi in face_ids:
            seg = segments_by_face.get(fi)
            if seg is None:
                continue
            a, b = seg
            adjacency.setdefault(a, set()).add(b)
            adjacency.setdefault(b, set()).add(a)
        if not adjacency:
            continue
        if len(adjacency) < 3:
            raise DegenerateSlice(
                f"cell {ci} is cut in {len(adjacency)} points, too few for a polygon"
            )
        loop = _walk_loop(adjacency, ci)

        # Orient outward: normal away from the slice centroid.
        loop_points = vertices[loop]
        normal = _polygon_normal(loop_points)
        outward = loop_points.mean(axis=0) - centroid
        if float(np.dot(normal, outward)) < 0.0:
            loop = [loop[0]] + loop[1:][::-1]
        mesh_faces.append(tuple(loop))
        face_cells.append(ci)

    return SliceMesh(
        vertices=vertices,
        vertex_source_edges=tuple(source_edges),
        vertex_params=tuple(params),
        edges=tuple(mesh_edges),
        edge_source_faces=tuple(edge_faces),
        faces=tuple(mesh_faces),
        face_source_cells=tuple(face_cells),
    )


def euler_characteristic(m: SliceMesh) -> int:
    """V - E + F; 2 for any nonempty nondegenerate convex section."""
    return len(m.vertices) - len(m.edges) + len(m.faces)
