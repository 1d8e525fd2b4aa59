"""JSON and OBJ encodings for polytopes, meshes, and session state.

All floats go through Python's shortest round-trip repr (the json
module's default), so serialize-then-parse returns bit-identical
doubles and replays are deterministic down to the byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .polytope import Polychoron
from .rotation import Rotation4
from .session import SessionState
from .slicing import SliceMesh

__all__ = [
    "FrameExport",
    "to_json_text",
    "polychoron_to_dict",
    "polychoron_from_dict",
    "mesh_to_dict",
    "mesh_from_dict",
    "session_to_dict",
    "session_from_dict",
    "frame_to_dict",
    "mesh_to_obj",
]


@dataclass(frozen=True, eq=False)
class FrameExport:
    """One exported animation frame: state summary plus its mesh.

    Frame indices are contiguous from 0; the mesh is always the slice
    of the frame's own state, so re-slicing the state reproduces it.
    """

    frame_index: int
    state: SessionState
    mesh: SliceMesh


def to_json_text(obj) -> str:
    """Canonical JSON text: compact separators, insertion key order."""
    return json.dumps(obj, separators=(",", ":"))


def polychoron_to_dict(p: Polychoron) -> dict:
    return {
        "vertices": [[float(x) for x in row] for row in p.vertices],
        "edges": [list(e) for e in p.edges],
        "faces": [list(f) for f in p.faces],
        "cells": [list(c) for c in p.cells],
        "edge_length_nominal": float(p.edge_length_nominal),
    }


def polychoron_from_dict(data: dict) -> Polychoron:
    return Polychoron(
        vertices=np.array(data["vertices"], dtype=float).reshape(-1, 4),
        edges=tuple(tuple(int(i) for i in e) for e in data["edges"]),
        faces=tuple(tuple(int(i) for i in f) for f in data["faces"]),
        cells=tuple(tuple(int(i) for i in c) for c in data["cells"]),
        edge_length_nominal=float(data["edge_length_nominal"]),
    )


def mesh_to_dict(m: SliceMesh) -> dict:
    return {
        "vertices": [[float(x) for x in row] for row in m.vertices],
        "vertex_source_edges": list(m.vertex_source_edges),
        "vertex_params": [float(t) for t in m.vertex_params],
        "edges": [list(e) for e in m.edges],
        "edge_source_faces": list(m.edge_source_faces),
        "faces": [list(f) for f in m.faces],
        "face_source_cells": list(m.face_source_cells),
    }


def mesh_from_dict(data: dict) -> SliceMesh:
    return SliceMesh(
        vertices=np.array(data["vertices"], dtype=float).reshape(-1, 3),
        vertex_source_edges=tuple(int(i) for i in data["vertex_source_edges"]),
        vertex_params=tuple(float(t) for t in data["vertex_params"]),
        edges=tuple(tuple(int(i) for i in e) for e in data["edges"]),
        edge_source_faces=tuple(int(i) for i in data["edge_source_faces"]),
        faces=tuple(tuple(int(i) for i in f) for f in data["faces"]),
        face_source_cells=tuple(int(i) for i in data["face_source_cells"]),
    )


def session_to_dict(s: SessionState) -> dict:
    return {
        "orientation": s.orientation.as_flat(),
        "theta0": float(s.theta0),
        "alpha": float(s.alpha),
        "c0": float(s.c0),
        "step_alpha": float(s.step_alpha),
        "step_c0": float(s.step_c0),
        "base": polychoron_to_dict(s.base),
    }


def session_from_dict(data: dict) -> SessionState:
    return SessionState(
        orientation=Rotation4.from_flat(data["orientation"]),
        theta0=float(data["theta0"]),
        alpha=float(data["alpha"]),
        c0=float(data["c0"]),
        base=polychoron_from_dict(data["base"]),
        step_alpha=float(data["step_alpha"]),
        step_c0=float(data["step_c0"]),
    )


def frame_to_dict(frame: FrameExport) -> dict:
    """FrameExport schema: index, compact state summary, full mesh."""
    return {
        "frame_index": int(frame.frame_index),
        "state": {
            "orientation": frame.state.orientation.as_flat(),
            "alpha": float(frame.state.alpha),
            "c0": float(frame.state.c0),
        },
        "mesh": mesh_to_dict(frame.mesh),
    }


def mesh_to_obj(m: SliceMesh) -> str:
    """Wavefront OBJ text: v records, mesh edges as l records, faces as f.

    Indices are 1-based per the OBJ grammar; coordinates use shortest
    round-trip decimals.
    """
    lines = [f"# pentaslice cross-section: {len(m.vertices)} vertices"]
    for x, y, z in m.vertices:
        lines.append(f"v {float(x)!r} {float(y)!r} {float(z)!r}")
    for i, j in m.edges:
        lines.append(f"l {i + 1} {j + 1}")
    for loop in m.faces:
        lines.append("f " + " ".join(str(i + 1) for i in loop))
    return "\n".join(lines) + "\n"
