"""Incidence-complete 4-polytopes and the regular pentachoron.

A Polychoron stores vertices, edges, faces, and cells explicitly
rather than deriving incidence on the fly: the slicer maps every
cross-section element back to the 4-D element it came from, and that
provenance needs stable indices.

The regular pentachoron (5-cell, Schlafli {3,3,3}) is built by the
dimensional cascade: a unit pair on the x axis, pushed down and capped
on each new axis in turn, with each cap height chosen so the new
vertex sits at the common edge length from all earlier ones.  The
resulting closed forms, for edge length ``a``::

    y0 = a / sqrt(3)        cap height on y (equilateral triangle)
    z0 = sqrt(3/8) * a      cap height on z (regular tetrahedron)
    w0 = sqrt(2/5) * a      cap height on w (regular pentachoron)

with the earlier vertices sitting at -y0/2, -z0/3, -w0/4 on each new
axis so the centroid stays at the origin, and the circumradius ends
up equal to w0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

from .rotation import Rotation4

__all__ = [
    "Polychoron",
    "GeometryReport",
    "InvalidEdgeLength",
    "regular_pentachoron",
    "transform",
    "geometry_report",
    "validate_incidence",
]


class InvalidEdgeLength(ValueError):
    """Requested polytope edge length is not a positive finite number."""


@dataclass(frozen=True, eq=False)
class Polychoron:
    """A convex 4-polytope with explicit incidence.

    vertices: (n, 4) float array, rows in (x, y, z, w) order.
    edges: unordered vertex-index pairs, stored (lo, hi), no duplicates.
    faces: cyclically ordered vertex-index loops; consecutive loop
        members (wrapping) must be edges.
    cells: per-cell tuples of face indices whose faces close up into a
        2-manifold (each cell edge shared by exactly two cell faces).
    edge_length_nominal: the construction edge length; sets the scale
        used for slice tolerances.

    Immutable after construction; transform() returns a new value.
    """

    vertices: np.ndarray
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, ...], ...]
    cells: tuple[tuple[int, ...], ...]
    edge_length_nominal: float

    def __post_init__(self) -> None:
        v = np.array(self.vertices, dtype=float)
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "faces", tuple(tuple(f) for f in self.faces))
        object.__setattr__(self, "cells", tuple(tuple(c) for c in self.cells))


@dataclass(frozen=True, eq=False)
class GeometryReport:
    """Derived metrics, recomputed on demand and never stored stale."""

    edge_lengths: np.ndarray
    centroid: np.ndarray
    circumradius: float


def regular_pentachoron(a: float) -> Polychoron:
    """The regular 5-cell with edge length ``a``, centroid at the origin.

    5 vertices, 10 edges, 10 triangular faces, 5 tetrahedral cells;
    every vertex pair is an edge, every vertex triple a face, every
    vertex quadruple a cell.
    """
    a = float(a)
    if not (math.isfinite(a) and a > 0.0):
        raise InvalidEdgeLength(f"edge length must be positive and finite, got {a!r}")

    s3 = math.sqrt(3.0)
    s6 = math.sqrt(6.0)
    s10 = math.sqrt(10.0)
    vertices = np.array(
        [
            [-0.5 * a, -a / (2.0 * s3), -a / (2.0 * s6), -a / (2.0 * s10)],
            [0.5 * a, -a / (2.0 * s3), -a / (2.0 * s6), -a / (2.0 * s10)],
            [0.0, a / s3, -a / (2.0 * s6), -a / (2.0 * s10)],
            [0.0, 0.0, a * s3 / (2.0 * math.sqrt(2.0)), -a / (2.0 * s10)],
            [0.0, 0.0, 0.0, 2.0 * a / s10],
        ]
    )

    edges = tuple(itertools.combinations(range(5), 2))
    faces = tuple(itertools.combinations(range(5), 3))
    face_index = {frozenset(f): i for i, f in enumerate(faces)}
    cells = tuple(
        tuple(sorted(face_index[frozenset(t)] for t in itertools.combinations(quad, 3)))
        for quad in itertools.combinations(range(5), 4)
    )
    return Polychoron(vertices, edges, faces, cells, edge_length_nominal=a)


def transform(p: Polychoron, r: Rotation4) -> Polychoron:
    """Rotate every vertex; incidence is untouched.

    Isometry: edge lengths, centroid norm, and circumradius are
    preserved (up to roundoff).
    """
    return replace(p, vertices=p.vertices @ r.m.T)


def geometry_report(p: Polychoron) -> GeometryReport:
    """Edge lengths, centroid, and circumradius from current coordinates."""
    v = p.vertices
    if p.edges:
        idx = np.array(p.edges)
        lengths = np.linalg.norm(v[idx[:, 0]] - v[idx[:, 1]], axis=1)
    else:
        lengths = np.zeros(0)
    centroid = v.mean(axis=0) if len(v) else np.zeros(4)
    radius = float(np.linalg.norm(v - centroid, axis=1).max()) if len(v) else 0.0
    return GeometryReport(edge_lengths=lengths, centroid=centroid, circumradius=radius)


def _face_boundary(loop: tuple[int, ...]) -> list[frozenset[int]]:
    return [
        frozenset((loop[i], loop[(i + 1) % len(loop)])) for i in range(len(loop))
    ]


def validate_incidence(p: Polychoron) -> list[str]:
    """Check every structural invariant; violations come back as data.

    An empty list means the complex is consistent.  Checks: finite
    coordinates, edge endpoints distinct/in range/unduplicated, face
    loops of length >= 3 whose consecutive vertices are edges, and
    cells whose faces close up (each cell edge covered exactly twice).
    """
    violations: list[str] = []
    n = len(p.vertices)

    if not np.isfinite(p.vertices).all():
        violations.append("vertex coordinates contain non-finite values")

    seen_edges: dict[frozenset[int], int] = {}
    for ei, (i, j) in enumerate(p.edges):
        if not (0 <= i < n and 0 <= j < n):
            violations.append(f"edge {ei} references vertex out of range: ({i}, {j})")
            continue
        if i == j:
            violations.append(f"edge {ei} has identical endpoints ({i})")
            continue
        key = frozenset((i, j))
        if key in seen_edges:
            violations.append(f"edge {ei} duplicates edge {seen_edges[key]}")
        else:
            seen_edges[key] = ei

    edge_set = set(seen_edges)
    for fi, loop in enumerate(p.faces):
        if len(loop) < 3:
            violations.append(f"face {fi} has fewer than 3 vertices")
            continue
        if any(not (0 <= v < n) for v in loop):
            violations.append(f"face {fi} references vertex out of range")
            continue
        for pair in _face_boundary(loop):
            if pair not in edge_set:
                a, b = sorted(pair)
                violations.append(
                    f"face {fi} uses consecutive vertices ({a}, {b}) "
                    "that are not an edge"
                )

    for ci, face_ids in enumerate(p.cells):
        if any(not (0 <= f < len(p.faces)) for f in face_ids):
            violations.append(f"cell {ci} references face out of range")
            continue
        cover: dict[frozenset[int], int] = {}
        for f in face_ids:
            for pair in _face_boundary(p.faces[f]):
                cover[pair] = cover.get(pair, 0) + 1
        for pair, count in sorted(cover.items(), key=lambda kv: sorted(kv[0])):
            if count != 2:
                a, b = sorted(pair)
                violations.append(
                    f"cell {ci} edge ({a}, {b}) is shared by {count} of its "
                    "faces, expected exactly 2"
                )

    return violations
