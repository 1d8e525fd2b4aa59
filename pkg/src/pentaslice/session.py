"""Keyboard-driven session state machine and script replay.

Key map (lowercase symbol, Shift inverts the rotation keys):

    '2' xy    '3' xz    '4' xw        simple rotations by theta0
    '6' yz    '8' yw    'c' zw        (axis codes 1*2 .. 3*4, hex c=12)
    'y' xy+zw 'z' xz+yw 'w' xw+yz     double rotations by (alpha, beta)
    'k' / 'j'                         raise / lower alpha
    'l' / 'h'                         raise / lower c0

The double-rotation split is a single degree of freedom: beta is
always theta0 - alpha, never stored.  Either angle may go negative;
nothing clamps.

Rotations are extrinsic (world frame fixed), so a key's step R lands
on the accumulated orientation Q as R @ Q.  The state is an immutable
value: every event returns a new SessionState and the base polytope is
never touched, which makes replay deterministic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace as _replace

from .polytope import Polychoron, regular_pentachoron, transform
from .rotation import (
    DoublePlaneId,
    PlaneId,
    Rotation4,
    compose,
    double_rotation,
    simple_rotation,
)
from .slicing import DegenerateSlice, Hyperplane, SliceMesh, slice_polychoron

__all__ = [
    "KeyEvent",
    "SessionState",
    "UnknownKey",
    "ParseError",
    "SIMPLE_KEY_PLANES",
    "DOUBLE_KEY_PLANES",
    "ROTATION_KEYS",
    "PARAMETER_KEYS",
    "ALL_KEYS",
    "new_session",
    "handle_key",
    "current_slice",
    "parse_script",
    "replay",
    "DEFAULT_THETA0",
    "SLICE_EPS_SCALE",
    "DEGENERATE_NUDGE_SCALE",
]

SIMPLE_KEY_PLANES: dict[str, PlaneId] = {
    "2": PlaneId.XY,
    "3": PlaneId.XZ,
    "4": PlaneId.XW,
    "6": PlaneId.YZ,
    "8": PlaneId.YW,
    "c": PlaneId.ZW,
}

DOUBLE_KEY_PLANES: dict[str, DoublePlaneId] = {
    "y": DoublePlaneId.XY_ZW,
    "z": DoublePlaneId.XZ_YW,
    "w": DoublePlaneId.XW_YZ,
}

ROTATION_KEYS = frozenset(SIMPLE_KEY_PLANES) | frozenset(DOUBLE_KEY_PLANES)
PARAMETER_KEYS = frozenset("kjlh")
ALL_KEYS = ROTATION_KEYS | PARAMETER_KEYS

DEFAULT_THETA0 = math.pi / 16

# Slice tolerance and degenerate-retry nudge, both relative to the
# polytope's nominal edge length.
SLICE_EPS_SCALE = 1e-9
DEGENERATE_NUDGE_SCALE = 1e-7


class UnknownKey(ValueError):
    """Key symbol outside the defined command set."""


class ParseError(ValueError):
    """Malformed script token; carries the 0-based token position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"token {position}: {message}")
        self.position = position


@dataclass(frozen=True)
class KeyEvent:
    """One keyboard command: a symbol plus its shift flag.

    The shift flag inverts rotation keys and is ignored for the
    parameter keys k/j/l/h.
    """

    symbol: str
    shifted: bool = False


@dataclass(frozen=True, eq=False)
class SessionState:
    """Live orientation and slicing parameters over an immutable base.

    orientation: cumulative extrinsic rotation Q.
    theta0: per-step simple-rotation angle; also the conserved sum
        alpha + beta for double rotations.
    alpha: first double-rotation angle; beta is derived.
    c0: w coordinate of the slicing hyperplane.
    base: the unrotated polytope, never mutated.
    step_alpha / step_c0: increments applied by k/j and l/h.
    """

    orientation: Rotation4
    theta0: float
    alpha: float
    c0: float
    base: Polychoron
    step_alpha: float
    step_c0: float

    @property
    def beta(self) -> float:
        return self.theta0 - self.alpha


def new_session(
    edge_length: float = 2.0,
    theta0: float = DEFAULT_THETA0,
    alpha: float | None = None,
    c0: float = 0.0,
    step_alpha: float | None = None,
    step_c0: float | None = None,
    base: Polychoron | None = None,
) -> SessionState:
    """Fresh state: identity orientation over a regular pentachoron.

    Defaults: alpha = theta0 / 2 (symmetric double rotation),
    step_alpha = theta0 / 16, step_c0 = 0.05 * edge_length.
    """
    if base is None:
        base = regular_pentachoron(edge_length)
    return SessionState(
        orientation=Rotation4.identity(),
        theta0=float(theta0),
        alpha=float(theta0) / 2.0 if alpha is None else float(alpha),
        c0=float(c0),
        base=base,
        step_alpha=float(theta0) / 16.0 if step_alpha is None else float(step_alpha),
        step_c0=0.05 * base.edge_length_nominal if step_c0 is None else float(step_c0),
    )


def handle_key(s: SessionState, e: KeyEvent) -> SessionState:
    """Apply one key event, returning the next state.

    Rotation keys left-multiply their step onto the orientation
    (negated when shifted); k/j move alpha, l/h move c0.
    """
    sym = e.symbol
    if sym in SIMPLE_KEY_PLANES:
        theta = -s.theta0 if e.shifted else s.theta0
        step = simple_rotation(SIMPLE_KEY_PLANES[sym], theta)
        return _replace(s, orientation=compose(step, s.orientation))
    if sym in DOUBLE_KEY_PLANES:
        sign = -1.0 if e.shifted else 1.0
        step = double_rotation(
            DOUBLE_KEY_PLANES[sym], sign * s.alpha, sign * s.beta
        )
        return _replace(s, orientation=compose(step, s.orientation))
    if sym == "k":
        return _replace(s, alpha=s.alpha + s.step_alpha)
    if sym == "j":
        return _replace(s, alpha=s.alpha - s.step_alpha)
    if sym == "l":
        return _replace(s, c0=s.c0 + s.step_c0)
    if sym == "h":
        return _replace(s, c0=s.c0 - s.step_c0)
    raise UnknownKey(f"unknown key symbol {sym!r}")


def current_slice(s: SessionState) -> SliceMesh:
    """Cross-section of the rotated base at w = c0.

    When the hyperplane lands exactly on a polytope vertex, retries
    once with c0 nudged up by a hair (the stored c0 is untouched); a
    second degeneracy propagates.
    """
    a = s.base.edge_length_nominal
    eps = SLICE_EPS_SCALE * a
    rotated = transform(s.base, s.orientation)
    try:
        return slice_polychoron(rotated, Hyperplane(s.c0), eps)
    except DegenerateSlice:
        nudged = s.c0 + DEGENERATE_NUDGE_SCALE * a
        return slice_polychoron(rotated, Hyperplane(nudged), eps)


_TOKEN_RE = re.compile(r"^(?P<body>\S+?)(?:\*(?P<count>\d+))?$")


def parse_script(text: str) -> list[KeyEvent]:
    """Parse a whitespace-separated key script into events.

    Token grammar: ``symbol`` or ``symbol*N`` with N >= 1 a decimal
    repeat count.  An uppercase letter ('C') or an 'S' prefix ('S2',
    'Sc') marks the event shifted.  Examples: ``4*32``, ``z*15``,
    ``C*3 l``, ``S2``.
    """
    events: list[KeyEvent] = []
    for position, token in enumerate(text.split()):
        match = _TOKEN_RE.match(token)
        if match is None:
            raise ParseError(f"malformed token {token!r}", position)
        body = match.group("body")
        count_text = match.group("count")
        if "*" in body:
            raise ParseError(f"malformed repeat count in {token!r}", position)

        shifted = False
        if body.startswith("S"):
            shifted = True
            body = body[1:]
        if len(body) != 1:
            raise ParseError(f"expected one key symbol, got {body!r}", position)
        if body.isupper():
            shifted = True
            body = body.lower()
        if body not in ALL_KEYS:
            raise ParseError(f"unknown key symbol {body!r}", position)

        if count_text is None:
            count = 1
        else:
            count = int(count_text)
            if count < 1:
                raise ParseError(f"repeat count must be >= 1 in {token!r}", position)
        events.extend([KeyEvent(body, shifted)] * count)
    return events


def replay(s: SessionState, events: list[KeyEvent]) -> list[SessionState]:
    """Fold handle_key over events, keeping every intermediate state.

    The result has one state per event; errors are re-raised with the
    offending event index attached.
    """
    states: list[SessionState] = []
    current = s
    for index, event in enumerate(events):
        try:
            current = handle_key(current, event)
        except UnknownKey as exc:
            err = UnknownKey(f"event {index}: {exc}")
            err.event_index = index
            raise err from exc
        states.append(current)
    return states
