"""Interactive 4-D rotation and hyperplane-slicing workbench.

A geometry kernel for SO(4) simple and double rotations, an exact
regular-pentachoron builder, cross-section meshing by the hyperplane
w = c0, a keyboard-driven session state machine, and export/serving
front ends.
"""

from .polytope import (
    GeometryReport,
    InvalidEdgeLength,
    Polychoron,
    geometry_report,
    regular_pentachoron,
    transform,
    validate_incidence,
)
from .rotation import (
    DegenerateMatrix,
    DoublePlaneId,
    PlaneId,
    Rotation4,
    apply_point,
    compose,
    double_rotation,
    frobenius_distance,
    inverse,
    renormalize,
    simple_rotation,
)
from .session import (
    KeyEvent,
    ParseError,
    SessionState,
    UnknownKey,
    current_slice,
    handle_key,
    new_session,
    parse_script,
    replay,
)
from .slicing import (
    DegenerateSlice,
    Hyperplane,
    ParallelEdge,
    SliceMesh,
    VertexSign,
    classify_vertex,
    euler_characteristic,
    intersect_edge,
    slice_polychoron,
)

__version__ = "0.1.0"

__all__ = [
    "PlaneId",
    "DoublePlaneId",
    "Rotation4",
    "DegenerateMatrix",
    "simple_rotation",
    "double_rotation",
    "compose",
    "inverse",
    "apply_point",
    "renormalize",
    "frobenius_distance",
    "Polychoron",
    "GeometryReport",
    "InvalidEdgeLength",
    "regular_pentachoron",
    "transform",
    "geometry_report",
    "validate_incidence",
    "Hyperplane",
    "SliceMesh",
    "VertexSign",
    "ParallelEdge",
    "DegenerateSlice",
    "classify_vertex",
    "intersect_edge",
    "slice_polychoron",
    "euler_characteristic",
    "KeyEvent",
    "SessionState",
    "UnknownKey",
    "ParseError",
    "new_session",
    "handle_key",
    "current_slice",
    "parse_script",
    "replay",
]
