"""Explicit horizontal curve families and the reachable-ratio bound.

The families solve the horizontality equations when one of ``x1, x2, y, z``
is frozen.  The ratio ``4y / (-x1^2 + x2^2)`` along time-like Heisenberg-type
geodesics is a function of ``tau = xi3 s / 2`` alone and fills ``(-1, 1)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import CausalClass, CausalKind, EngelPoint, HorizontalVector, Orientation, classify_vector

__all__ = [
    "FamilyTag",
    "CurveFamily",
    "DegenerateFamilyError",
    "family_curve",
    "family_velocity",
    "family_causal_class",
    "reachable_ratio",
    "ratio_profile",
    "TAYLOR_SWITCH",
]

TAYLOR_SWITCH = 1e-4


class FamilyTag(enum.Enum):
    EXAMPLE1 = "Example1"  # x2 frozen
    EXAMPLE2A = "Example2a"  # x1 frozen
    EXAMPLE2B = "Example2b"  # y frozen, x1 = iota x2
    EXAMPLE2C = "Example2c"  # z frozen: only constant curves


class DegenerateFamilyError(ValueError):
    """The family only contains constant curves."""


@dataclass(frozen=True)
class CurveFamily:
    tag: FamilyTag
    x1_0: float = 0.0
    x2_0: float = 0.0
    y_0: float = 0.0
    z_0: float = 0.0
    iota: float = 0.0

    def __post_init__(self):
        if self.tag is FamilyTag.EXAMPLE2B and self.x2_0 != 0 and not math.isclose(self.x1_0, self.iota * self.x2_0):
            raise ValueError("Example2b needs x1_0 = iota * x2_0")

    @classmethod
    def example2b_through(cls, x1_0: float, x2_0: float, y_0: float = 0.0, z_0: float = 0.0) -> "CurveFamily":
        if x2_0 == 0:
            raise ValueError("Example2b needs x2_0 != 0 to define iota = x1_0/x2_0")
        iota = x1_0 / x2_0
        z_base = z_0 - (1 + iota * iota) * x2_0**3 / 6
        return cls(FamilyTag.EXAMPLE2B, x1_0, x2_0, y_0, z_base, iota)


def family_curve(family: CurveFamily, param: float) -> EngelPoint:
    """Point of the family at the free coordinate ``param`` (``x1`` or ``x2``)."""
    f = family
    if f.tag is FamilyTag.EXAMPLE1:
        x1 = param
        return EngelPoint(x1, f.x2_0, -x1 * f.x2_0 / 2 + f.x1_0 * f.x2_0 / 2 + f.y_0, f.z_0)
    if f.tag is FamilyTag.EXAMPLE2A:
        x2 = param
        return EngelPoint(f.x1_0, x2, f.x1_0 * x2 / 2 + f.y_0, x2**3 / 6 + f.x1_0**2 * x2 / 2 + f.z_0)
    if f.tag is FamilyTag.EXAMPLE2B:
        x2 = param
        return EngelPoint(f.iota * x2, x2, f.y_0, (1 + f.iota**2) * x2**3 / 6 + f.z_0)
    raise DegenerateFamilyError("curves with z frozen degenerate to points")


def family_velocity(family: CurveFamily, param: float) -> HorizontalVector:
    """Frame coefficients of ``d/dparam family_curve`` (frame coefficients are ``(x1', x2')``)."""
    base = family_curve(family, param)
    if family.tag is FamilyTag.EXAMPLE1:
        return HorizontalVector(1.0, 0.0, base)
    if family.tag is FamilyTag.EXAMPLE2A:
        return HorizontalVector(0.0, 1.0, base)
    return HorizontalVector(family.iota, 1.0, base)


def family_causal_class(family: CurveFamily) -> CausalClass:
    """Causal character of the nonconstant curves in ``family``.

    The orientation reported is that of increasing ``param``.
    """
    if family.tag is FamilyTag.EXAMPLE2C:
        raise DegenerateFamilyError("curves with z frozen degenerate to points")
    if family.tag is FamilyTag.EXAMPLE1:
        return CausalClass(CausalKind.TIMELIKE, Orientation.FUTURE)
    if family.tag is FamilyTag.EXAMPLE2A:
        return CausalClass(CausalKind.SPACELIKE)
    return classify_vector(HorizontalVector(family.iota, 1.0))


def reachable_ratio(p: EngelPoint) -> float:
    """``4y / (-x1^2 + x2^2)``."""
    denom = -p.x1 * p.x1 + p.x2 * p.x2
    if denom == 0:
        raise ZeroDivisionError("x1^2 = x2^2: ratio undefined on the projected light cone")
    return 4 * p.y / denom


def _sinh_minus_x(x):
    # sum of x^(2k+1)/(2k+1)! for k >= 1; 12 terms reach full precision for |x| < 1
    x2 = x * x
    term = x * x2 / 6
    total = term
    for k in range(2, 14):
        term = term * x2 / ((2 * k) * (2 * k + 1))
        total = total + term
    return total


def ratio_profile(tau):
    """``tau / sinh(tau)^2 - coth(tau)``, odd and decreasing from 1 to -1.

    Below ``|tau| < 1e-4`` the two ``1/tau`` singularities cancel badly, so the
    Taylor polynomial ``-2tau/3 + 4tau^3/45 - 4tau^5/315`` is used instead.
    Above the switch the value is ``-(sinh 2tau - 2tau) / (2 sinh^2 tau)``,
    with ``sinh x - x`` summed as a series for ``|x| < 1`` to avoid the same
    cancellation.
    """
    t = np.asarray(tau, dtype=float)
    small = np.abs(t) < TAYLOR_SWITCH
    safe = np.where(small, 1.0, t)
    sh = np.sinh(safe)
    with np.errstate(over="ignore", invalid="ignore"):
        exact = safe / (sh * sh) - 1 / np.tanh(safe)
        mid = np.abs(safe) < 0.5
        exact = np.where(mid, -_sinh_minus_x(2 * safe) / (2 * sh * sh), exact)
    t2 = t * t
    series = t * (-2 / 3 + t2 * (4 / 45 - t2 * 4 / 315))
    out = np.where(small, series, exact)
    return float(out) if out.ndim == 0 else out
