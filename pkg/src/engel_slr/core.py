"""Engel group structure: group law, left-invariant frame, metrics, causality.

Points are stored in the global coordinates ``(x1, x2, y, z)``.  The
horizontal distribution is spanned by the first two frame fields; the
sub-Lorentzian metric makes ``X1`` unit time-like (and the time orientation)
and ``X2`` unit space-like.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EngelPoint",
    "HorizontalVector",
    "CausalKind",
    "Orientation",
    "CausalClass",
    "IDENTITY",
    "group_mul",
    "group_inv",
    "frame_at",
    "frame_jacobians",
    "lie_bracket",
    "metric_g",
    "ambient_metric_at",
    "classify_vector",
    "horizontality_residual",
    "left_translate_curve",
    "frame_coefficients",
    "sampled_frame_coefficients",
]


@dataclass(frozen=True)
class EngelPoint:
    x1: float
    x2: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x1", "x2", "y", "z"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"EngelPoint.{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

    def __iter__(self):
        return iter((self.x1, self.x2, self.y, self.z))

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.y, self.z])

    @classmethod
    def from_seq(cls, values) -> "EngelPoint":
        x1, x2, y, z = values
        return cls(x1, x2, y, z)


IDENTITY = EngelPoint(0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class HorizontalVector:
    """Horizontal vector ``u1 X1 + u2 X2`` attached at ``base``."""

    u1: float
    u2: float
    base: EngelPoint = IDENTITY

    def __post_init__(self):
        if not (math.isfinite(self.u1) and math.isfinite(self.u2)):
            raise ValueError("frame coefficients must be finite")

    def coordinates(self) -> np.ndarray:
        """The vector in coordinate components ``(dx1, dx2, dy, dz)``."""
        X1, X2, _, _ = frame_at(self.base)
        return self.u1 * X1 + self.u2 * X2


class CausalKind(enum.Enum):
    TIMELIKE = "Timelike"
    SPACELIKE = "Spacelike"
    NULL = "Null"
    ZERO = "Zero"


class Orientation(enum.Enum):
    FUTURE = "FutureDirected"
    PAST = "PastDirected"
    NONE = "NotApplicable"


@dataclass(frozen=True)
class CausalClass:
    kind: CausalKind
    orientation: Orientation = Orientation.NONE

    def __post_init__(self):
        directed = self.kind in (CausalKind.TIMELIKE, CausalKind.NULL)
        if not directed and self.orientation is not Orientation.NONE:
            raise ValueError(f"{self.kind.value} vectors carry no time orientation")

    @property
    def non_spacelike(self) -> bool:
        return self.kind in (CausalKind.TIMELIKE, CausalKind.NULL)

    def __str__(self):
        if self.orientation is Orientation.NONE:
            return self.kind.value
        return f"{self.kind.value}/{self.orientation.value}"


def group_mul(p: EngelPoint, q: EngelPoint) -> EngelPoint:
    x1, x2, y, z = p
    a1, a2, b, c = q
    return EngelPoint(
        x1 + a1,
        x2 + a2,
        y + b + (x1 * a2 - a1 * x2) / 2,
        z + c + x2 * a2 / 2 * (x2 + a2) + x1 * b + x1 * a2 / 2 * (x1 + a1),
    )


def group_inv(p: EngelPoint) -> EngelPoint:
    x1, x2, y, z = p
    # abelian part flips; y-correction vanishes for q = -p; z picks up x1*y
    return EngelPoint(-x1, -x2, -y, x1 * y - z)


def frame_at(p: EngelPoint) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Left-invariant fields ``X1..X4`` at ``p`` as coordinate 4-vectors."""
    x1, x2, _, _ = p
    X1 = np.array([1.0, 0.0, -x2 / 2, 0.0])
    X2 = np.array([0.0, 1.0, x1 / 2, (x1 * x1 + x2 * x2) / 2])
    X3 = np.array([0.0, 0.0, 1.0, x1])
    X4 = np.array([0.0, 0.0, 0.0, 1.0])
    return X1, X2, X3, X4


def frame_jacobians(p: EngelPoint) -> tuple[np.ndarray, ...]:
    """Coordinate Jacobians ``d X_i / dq`` of the frame fields at ``p``.

    ``J[a, b]`` is the derivative of component ``a`` with respect to
    coordinate ``b``.
    """
    x1, x2, _, _ = p
    J1 = np.zeros((4, 4))
    J1[2, 1] = -0.5
    J2 = np.zeros((4, 4))
    J2[2, 0] = 0.5
    J2[3, 0] = x1
    J2[3, 1] = x2
    J3 = np.zeros((4, 4))
    J3[3, 0] = 1.0
    J4 = np.zeros((4, 4))
    return J1, J2, J3, J4


def lie_bracket(i: int, j: int, p: EngelPoint) -> np.ndarray:
    """``[X_i, X_j]`` at ``p`` (1-based indices), ``= DX_j X_i - DX_i X_j``."""
    fields = frame_at(p)
    jac = frame_jacobians(p)
    return jac[j - 1] @ fields[i - 1] - jac[i - 1] @ fields[j - 1]


def metric_g(v: HorizontalVector, w: HorizontalVector) -> float:
    """Sub-Lorentzian inner product on the distribution."""
    if v.base != w.base:
        raise ValueError("horizontal vectors live at different base points")
    return -v.u1 * w.u1 + v.u2 * w.u2


def ambient_metric_at(p: EngelPoint) -> np.ndarray:
    """Coordinate matrix of the Lorentzian extension making the frame orthonormal.

    Built from the dual coframe ``theta^i`` as
    ``-theta1^2 + theta2^2 + theta3^2 + theta4^2``.
    """
    x1, x2, _, _ = p
    coframe = np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [x2 / 2, -x1 / 2, 1.0, 0.0],
            [-x1 * x2 / 2, -x2 * x2 / 2, -x1, 1.0],
        ]
    )
    eta = np.diag([-1.0, 1.0, 1.0, 1.0])
    return coframe.T @ eta @ coframe


def classify_vector(v: HorizontalVector, atol: float = 0.0) -> CausalClass:
    """Causal character of a horizontal vector, with time orientation ``X1``.

    ``atol`` widens the null band ``|-u1^2 + u2^2| <= atol`` for vectors built
    from finite differences.
    """
    if v.u1 == 0 and v.u2 == 0:
        return CausalClass(CausalKind.ZERO)
    q = -v.u1 * v.u1 + v.u2 * v.u2
    if abs(q) <= atol:
        kind = CausalKind.NULL
    elif q < 0:
        kind = CausalKind.TIMELIKE
    else:
        return CausalClass(CausalKind.SPACELIKE)
    # g(v, X1) = -u1 < 0 means future directed
    orientation = Orientation.FUTURE if v.u1 > 0 else Orientation.PAST
    return CausalClass(kind, orientation)


def horizontality_residual(p: EngelPoint, dp) -> tuple[float, float]:
    """Values of the two annihilating one-forms of the distribution on ``dp``."""
    x1, x2, _, _ = p
    d1, d2, dy, dz = dp
    r1 = x2 / 2 * d1 - x1 / 2 * d2 + dy
    r2 = -(x1 * x1 + x2 * x2) / 2 * d2 + dz
    return r1, r2


def frame_coefficients(dp) -> tuple[float, float]:
    """Frame coefficients ``(u1, u2)`` of a horizontal coordinate velocity."""
    return dp[0], dp[1]


def left_translate_curve(x: EngelPoint, curve) -> np.ndarray:
    """Left-translate sampled points (an ``(n, 4)`` array) by ``x``.

    Complex samples are allowed, which gives exact complex-step derivatives.
    """
    pts = np.asarray(curve)
    pts = pts.astype(np.result_type(pts, float), copy=False)
    x1, x2, y, z = x
    a1, a2, b, c = pts[:, 0], pts[:, 1], pts[:, 2], pts[:, 3]
    return np.column_stack(
        [
            x1 + a1,
            x2 + a2,
            y + b + (x1 * a2 - a1 * x2) / 2,
            z + c + x2 * a2 / 2 * (x2 + a2) + x1 * b + x1 * a2 / 2 * (x1 + a1),
        ]
    )


def sampled_frame_coefficients(curve, h: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Central-difference velocities of a uniformly sampled curve.

    Returns ``(u1, u2, residual)`` at the interior samples, where ``residual``
    is the larger of the two horizontality residuals there.
    """
    pts = np.asarray(curve, dtype=float)
    vel = (pts[2:] - pts[:-2]) / (2 * h)
    mid = pts[1:-1]
    x1, x2 = mid[:, 0], mid[:, 1]
    r1 = x2 / 2 * vel[:, 0] - x1 / 2 * vel[:, 1] + vel[:, 2]
    r2 = -(x1 * x1 + x2 * x2) / 2 * vel[:, 1] + vel[:, 3]
    return vel[:, 0], vel[:, 1], np.maximum(np.abs(r1), np.abs(r2))
