"""Session wire protocol: JSON message engine, transport-free.

Client messages::

    {"type": "key", "symbol": "4", "shifted": false}
    {"type": "set_param", "name": "c0", "value": 0.5}
    {"type": "get_state"}
    {"type": "reset"}

Every client message gets exactly one state reply followed by one mesh
reply, or a single error reply::

    {"type": "state", "orientation": [16 doubles], "alpha": ..,
     "beta": .., "c0": .., "theta0": ..}
    {"type": "mesh", "vertices": [[x,y,z]..], "vertex_source_edges": [..],
     "vertex_params": [..], "edges": [[i,j]..], "edge_source_faces": [..],
     "faces": [[..]..], "face_source_cells": [..]}
    {"type": "error", "code": "..", "detail": ".."}

Reply construction is deterministic (fixed key order, shortest
round-trip floats), so replaying a recorded client log against a fresh
engine reproduces byte-identical reply texts.

ProtocolSession is pure request-in/replies-out with no I/O; the
server module pairs it with one WebSocket connection per session.
"""

from __future__ import annotations

import json
import math
from dataclasses import replace

from . import session as _session
from .serialize import mesh_to_dict, to_json_text
from .session import KeyEvent, SessionState
from .slicing import DegenerateSlice

__all__ = ["ProtocolSession", "PARAM_NAMES"]

PARAM_NAMES = ("theta0", "alpha", "c0", "step_alpha", "step_c0")

_CLIENT_TYPES = ("key", "set_param", "get_state", "reset")


class ProtocolSession:
    """One client's session: owns a SessionState, turns requests into replies.

    ``session_kwargs`` are the new_session() arguments used at start
    and on every reset.  handle_text() processes messages strictly in
    call order; callers serialize per session.
    """

    def __init__(self, **session_kwargs):
        self._session_kwargs = dict(session_kwargs)
        self.state: SessionState = _session.new_session(**self._session_kwargs)

    def handle_text(self, text: str) -> list[str]:
        """Process one client message text, returning reply texts in order."""
        try:
            message = json.loads(text)
        except (json.JSONDecodeError, UnicodeDecodeError):
            return [self._error("bad_json", "message is not valid JSON")]
        if not isinstance(message, dict):
            return [self._error("bad_message", "message must be a JSON object")]
        kind = message.get("type")
        if kind == "key":
            return self._handle_key(message)
        if kind == "set_param":
            return self._handle_set_param(message)
        if kind == "get_state":
            return self._state_and_mesh()
        if kind == "reset":
            self.state = _session.new_session(**self._session_kwargs)
            return self._state_and_mesh()
        return [
            self._error(
                "bad_message",
                f"unknown message type {kind!r}; expected one of {list(_CLIENT_TYPES)}",
            )
        ]

    def _handle_key(self, message: dict) -> list[str]:
        symbol = message.get("symbol")
        shifted = message.get("shifted", False)
        if not isinstance(symbol, str) or not isinstance(shifted, bool):
            return [
                self._error(
                    "bad_message", "key message needs string 'symbol' and bool 'shifted'"
                )
            ]
        try:
            self.state = _session.handle_key(self.state, KeyEvent(symbol, shifted))
        except _session.UnknownKey as exc:
            return [self._error("unknown_key", str(exc))]
        return self._state_and_mesh()

    def _handle_set_param(self, message: dict) -> list[str]:
        name = message.get("name")
        value = message.get("value")
        if name not in PARAM_NAMES:
            return [
                self._error(
                    "bad_param", f"unknown parameter {name!r}; expected one of {list(PARAM_NAMES)}"
                )
            ]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            return [self._error("bad_param", f"parameter value must be a number, got {value!r}")]
        value = float(value)
        if not math.isfinite(value):
            return [self._error("bad_param", f"parameter value must be finite, got {value!r}")]
        self.state = replace(self.state, **{name: value})
        return self._state_and_mesh()

    def _state_and_mesh(self) -> list[str]:
        state_text = to_json_text(
            {
                "type": "state",
                "orientation": self.state.orientation.as_flat(),
                "alpha": float(self.state.alpha),
                "beta": float(self.state.beta),
                "c0": float(self.state.c0),
                "theta0": float(self.state.theta0),
            }
        )
        try:
            mesh = _session.current_slice(self.state)
        except DegenerateSlice as exc:
            return [self._error("degenerate_slice", str(exc))]
        mesh_text = to_json_text({"type": "mesh", **mesh_to_dict(mesh)})
        return [state_text, mesh_text]

    @staticmethod
    def _error(code: str, detail: str) -> str:
        return to_json_text({"type": "error", "code": code, "detail": detail})
