"""SO(4) rotation algebra on dense 4x4 matrices.

Rotations in 4-D have no axis: the elementary moves are rotations in one
of the six coordinate planes (simple rotations) and simultaneous
rotations in a pair of absolutely perpendicular planes (double
rotations).  Both kinds are built here as explicit special-orthogonal
matrices, together with composition, inversion, and a Gram-Schmidt
renormalization that bounds floating-point drift over long interactive
sessions.

Points are length-4 float arrays in (x, y, z, w) component order;
matrices act on column vectors, so a rotation ``r`` maps ``p`` to
``r.m @ p``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

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
    "ORTHONORMALITY_TOL",
    "RENORMALIZE_TRIGGER",
]

# Construction-time guarantee for every rotation produced by this module.
ORTHONORMALITY_TOL = 1e-9

# compose() renormalizes only past this drift, so single compositions
# stay bit-stable while long sequences cannot accumulate error.
RENORMALIZE_TRIGGER = 1e-12

# Row norms below this inside renormalize() mean the matrix is beyond
# repair and the owning session should reset.
_DEGENERATE_ROW_NORM = 1e-12

_EYE4 = np.eye(4)


class DegenerateMatrix(ValueError):
    """Renormalization met a near-zero row: the matrix is corrupted."""


class PlaneId(enum.Enum):
    """The six coordinate planes, as (first, second) axis indices.

    Each plane also carries the product code of its axis numbers under
    the numbering x=1, y=2, z=3, w=4; the six products are pairwise
    distinct, which is what makes single digit keys (hex for 12) work
    as plane selectors.
    """

    XY = (0, 1)
    XZ = (0, 2)
    XW = (0, 3)
    YZ = (1, 2)
    YW = (1, 3)
    ZW = (2, 3)

    @property
    def axes(self) -> tuple[int, int]:
        return self.value

    @property
    def code(self) -> int:
        i, j = self.value
        return (i + 1) * (j + 1)


class DoublePlaneId(enum.Enum):
    """The three pairs of absolutely perpendicular coordinate planes.

    The two planes of a pair share no axis and cover all four axes, so
    the corresponding simple rotations act on disjoint 2x2 blocks and
    commute.
    """

    XY_ZW = (PlaneId.XY, PlaneId.ZW)
    XZ_YW = (PlaneId.XZ, PlaneId.YW)
    XW_YZ = (PlaneId.XW, PlaneId.YZ)

    @property
    def planes(self) -> tuple[PlaneId, PlaneId]:
        return self.value


@dataclass(frozen=True, eq=False)
class Rotation4:
    """A 4x4 special-orthogonal matrix; the sole carrier of rotation state.

    Angles are consumed at construction and never stored: after a few
    compositions a decomposition into plane angles is ill-defined, so
    the matrix itself is the state.
    """

    m: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.m, dtype=float)
        if m.shape != (4, 4):
            raise ValueError(f"rotation matrix must be 4x4, got {m.shape}")
        if not np.isfinite(m).all():
            raise ValueError("rotation matrix entries must be finite")
        m.flags.writeable = False
        object.__setattr__(self, "m", m)

    @classmethod
    def identity(cls) -> "Rotation4":
        return cls(_EYE4)

    @classmethod
    def from_flat(cls, values, tol: float = ORTHONORMALITY_TOL) -> "Rotation4":
        """Rebuild from 16 doubles, row-major, (x, y, z, w) axis order.

        Raises ValueError if the matrix is not special-orthogonal
        within ``tol``.
        """
        m = np.asarray(values, dtype=float).reshape(4, 4)
        r = cls(m)
        if float(np.linalg.norm(m.T @ m - _EYE4)) > tol:
            raise ValueError("matrix is not orthonormal within tolerance")
        if abs(float(np.linalg.det(m)) - 1.0) > tol:
            raise ValueError("matrix is not a proper rotation (det != +1)")
        return r

    def as_flat(self) -> list[float]:
        """Serialize to 16 doubles, row-major, (x, y, z, w) axis order."""
        return [float(v) for v in self.m.ravel()]


def _check_finite_angle(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def simple_rotation(plane: PlaneId, theta: float) -> Rotation4:
    """Rotation by ``theta`` in one coordinate plane, identity elsewhere.

    The 2x2 block [[cos, -sin], [sin, cos]] lands on the plane's two
    axes, with the first-listed axis on the (cos, -sin) row.
    """
    theta = _check_finite_angle("theta", theta)
    i, j = plane.axes
    c, s = math.cos(theta), math.sin(theta)
    m = np.eye(4)
    m[i, i] = c
    m[i, j] = -s
    m[j, i] = s
    m[j, j] = c
    return Rotation4(m)


def double_rotation(pair: DoublePlaneId, alpha: float, beta: float) -> Rotation4:
    """Simultaneous rotation by ``alpha`` and ``beta`` in two
    absolutely perpendicular planes.

    Equal to the product of the two simple rotations; the factors act
    on disjoint blocks, so their order is irrelevant.
    """
    alpha = _check_finite_angle("alpha", alpha)
    beta = _check_finite_angle("beta", beta)
    first, second = pair.planes
    return Rotation4(simple_rotation(first, alpha).m @ simple_rotation(second, beta).m)


def compose(a: Rotation4, b: Rotation4) -> Rotation4:
    """Matrix product ``a @ b``, renormalized only when drift shows.

    Renormalization is skipped while ``||m^T m - I||_F`` stays at or
    below RENORMALIZE_TRIGGER, keeping short composition chains
    bit-stable; beyond it the result is snapped back to orthonormal.
    """
    m = a.m @ b.m
    if float(np.linalg.norm(m.T @ m - _EYE4)) > RENORMALIZE_TRIGGER:
        return renormalize(Rotation4(m))
    return Rotation4(m)


def inverse(r: Rotation4) -> Rotation4:
    """Inverse rotation; for orthonormal matrices this is the transpose."""
    return Rotation4(r.m.T)


def apply_point(r: Rotation4, p) -> np.ndarray:
    """Transform one point (length-4 array-like, (x, y, z, w) order)."""
    p = np.asarray(p, dtype=float)
    return r.m @ p


def renormalize(r: Rotation4) -> Rotation4:
    """Snap a nearly orthogonal matrix back onto SO(4).

    Modified Gram-Schmidt on the rows in order; the determinant's sign
    is preserved, so proper rotations stay proper.  Idempotent up to
    roundoff on already-orthonormal input.

    Raises DegenerateMatrix when an intermediate row norm falls below
    1e-12, which signals corrupted state rather than ordinary drift.
    """
    m = np.array(r.m, dtype=float)
    for i in range(4):
        row = m[i]
        for k in range(i):
            row = row - np.dot(m[k], row) * m[k]
        norm = float(np.linalg.norm(row))
        if norm < _DEGENERATE_ROW_NORM:
            raise DegenerateMatrix(
                f"row {i} collapsed to norm {norm:.3e} during renormalization"
            )
        m[i] = row / norm
    return Rotation4(m)


def frobenius_distance(a: Rotation4, b: Rotation4) -> float:
    """Frobenius norm of the entrywise difference; zero iff equal."""
    return float(np.linalg.norm(a.m - b.m))
