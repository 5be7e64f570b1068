"""Pontryagin Hamiltonian of the sub-Lorentzian Engel problem and its flow.

The normal extremals solve an eight-dimensional polynomial ODE in
``(x1, x2, y, z, xi1, xi2, xi3, xi4)``.  It is integrated here with a classic
fixed-step Runge-Kutta scheme (or an embedded 4(5) pair on request) and serves
as the reference against which every closed-form geodesic is checked.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy.integrate import solve_ivp

from .core import IDENTITY, CausalKind, EngelPoint

__all__ = [
    "NontrivialityError",
    "DivergenceError",
    "NormalizationWarning",
    "Covector",
    "PhaseState",
    "Trajectory",
    "STATE_COLUMNS",
    "DIVERGENCE_BOUND",
    "hamiltonian_H",
    "zeta",
    "normal_controls",
    "normal_rhs",
    "state_vector",
    "uniform_grid",
    "integrate_normal",
    "integrate_normal_batch",
    "check_H_conservation",
    "reduced_variables",
    "NoSolution",
    "AbnormalCurve",
    "abnormal_analyze",
    "abnormal_normal_lift",
]

STATE_COLUMNS = ("x1", "x2", "y", "z", "xi1", "xi2", "xi3", "xi4")
DIVERGENCE_BOUND = 1e12


class NontrivialityError(ValueError):
    """The multiplier/costate pair vanishes identically."""


class DivergenceError(RuntimeError):
    def __init__(self, last_good_s: float, message: str = ""):
        self.last_good_s = last_good_s
        super().__init__(message or f"integration diverged after s={last_good_s!r}")


class NormalizationWarning(UserWarning):
    """Time-like initial data is not unit speed."""


@dataclass(frozen=True)
class Covector:
    """Costate ``(xi1, xi2, xi3, xi4)`` with multiplier ``xi0`` (-1 normal, 0 abnormal)."""

    xi1: float
    xi2: float
    xi3: float
    xi4: float
    xi0: float = -1.0

    def __post_init__(self):
        if self.xi0 not in (0, -1):
            raise ValueError(f"xi0 must be 0 or -1, got {self.xi0!r}")
        values = self.components()
        if not all(math.isfinite(v) for v in values):
            raise ValueError("costate components must be finite")
        if self.xi0 == 0 and not any(values):
            raise NontrivialityError("(xi0, xi) vanishes identically")

    def components(self) -> tuple[float, float, float, float]:
        return (self.xi1, self.xi2, self.xi3, self.xi4)

    @property
    def normal(self) -> bool:
        return self.xi0 == -1

    def require_nontrivial(self) -> None:
        """Reject the zero costate, whose normal 'extremal' is a constant curve."""
        if not any(self.components()):
            raise NontrivialityError("costate xi = (0, 0, 0, 0) produces no geodesic")

    @classmethod
    def parse(cls, text: str, xi0: float = -1.0) -> "Covector":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected four comma-separated numbers, got {text!r}")
        return cls(*(float(p) for p in parts), xi0=xi0)


@dataclass(frozen=True)
class PhaseState:
    point: EngelPoint
    covector: Covector
    s: float = 0.0

    @classmethod
    def at_origin(cls, covector: Covector) -> "PhaseState":
        return cls(IDENTITY, covector, 0.0)


def state_vector(state: PhaseState) -> np.ndarray:
    return np.array([*state.point, *state.covector.components()], dtype=float)


def _unpack(state: Union[PhaseState, np.ndarray]):
    if isinstance(state, PhaseState):
        return (*state.point, *state.covector.components())
    return tuple(state)


def hamiltonian_H(state: PhaseState, u1: float, u2: float) -> float:
    """Pontryagin function evaluated on an arbitrary control ``(u1, u2)``."""
    x1, x2, _, _ = state.point
    xi1, xi2, xi3, xi4 = state.covector.components()
    xi0 = state.covector.xi0
    return (
        xi0 * (-u1 * u1 + u2 * u2) / 2
        + xi1 * u1
        + xi2 * u2
        + xi3 * (x1 * u2 - x2 * u1) / 2
        + xi4 * (x1 * x1 + x2 * x2) / 2 * u2
    )


def _zeta(x1, x2, xi1, xi2, xi3, xi4):
    z1 = xi1 - x2 / 2 * xi3
    z2 = xi2 + x1 / 2 * xi3 + (x1 * x1 + x2 * x2) / 2 * xi4
    return z1, z2


def zeta(state: Union[PhaseState, np.ndarray]) -> tuple[float, float]:
    """Fibre-linear Hamiltonians of ``X1`` and ``X2``."""
    x1, x2, _, _, xi1, xi2, xi3, xi4 = _unpack(state)
    return _zeta(x1, x2, xi1, xi2, xi3, xi4)


def normal_controls(state) -> tuple[float, float]:
    z1, z2 = zeta(state)
    return -z1, z2


def _rhs(q):
    # Works elementwise, so q may hold scalars or equally shaped arrays.
    x1, x2, y, z, xi1, xi2, xi3, xi4 = q
    z1, z2 = _zeta(x1, x2, xi1, xi2, xi3, xi4)
    r2 = (x1 * x1 + x2 * x2) / 2
    zero = 0.0 * xi3
    return (
        -z1,
        z2,
        (x1 * z2 + x2 * z1) / 2,
        r2 * z2,
        -z2 * (xi3 / 2 + x1 * xi4),
        -xi3 / 2 * z1 - x2 * xi4 * z2,
        zero,
        zero,
    )


def normal_rhs(state: Union[PhaseState, np.ndarray]) -> np.ndarray:
    """Right-hand side of the normal Hamiltonian system (``xi0 = -1``)."""
    if isinstance(state, PhaseState) and not state.covector.normal:
        raise ValueError("normal_rhs needs xi0 = -1")
    return np.array(_rhs(_unpack(state)), dtype=float)


def _H_normal(q) -> np.ndarray:
    z1, z2 = _zeta(q[0], q[1], q[4], q[5], q[6], q[7])
    return (-z1 * z1 + z2 * z2) / 2


def reduced_variables(states: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(zeta1, zeta2, beta)`` along sampled states, ``beta = -(xi3 + x1 xi4)``."""
    q = np.asarray(states, dtype=float).T
    z1, z2 = _zeta(q[0], q[1], q[4], q[5], q[6], q[7])
    return z1, z2, -(q[6] + q[0] * q[7])


@dataclass(frozen=True)
class Trajectory:
    """Samples of a normal extremal; arrays are read-only."""

    s: np.ndarray
    states: np.ndarray
    h: float
    adaptive: bool = False
    case: Optional[str] = None
    initial: Optional[Covector] = None
    H: np.ndarray = field(default=None)

    def __post_init__(self):
        s = np.array(self.s, dtype=float)
        states = np.array(self.states, dtype=float).reshape(len(s), 8)
        if len(s) > 1 and not np.all(np.diff(s) > 0):
            raise ValueError("trajectory samples must have strictly increasing s")
        H = _H_normal(states.T) if self.H is None else np.array(self.H, dtype=float)
        for arr in (s, states, H):
            arr.flags.writeable = False
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "H", H)

    def __len__(self):
        return len(self.s)

    @property
    def H0(self) -> float:
        return float(self.H[0])

    @property
    def drift(self) -> float:
        return check_H_conservation(self)

    @property
    def points(self) -> np.ndarray:
        return self.states[:, :4]

    def point(self, i: int) -> EngelPoint:
        return EngelPoint.from_seq(self.states[i, :4])

    def metadata(self) -> dict:
        xi = self.initial
        return {
            "case": self.case,
            "xi0": None if xi is None else xi.xi0,
            "xi": None if xi is None else list(xi.components()),
            "h": self.h,
            "adaptive": self.adaptive,
            "H0": self.H0,
            "drift": self.drift,
        }


def uniform_grid(s_max: float, h: float) -> list[float]:
    """``0, h, 2h, ...`` up to ``s_max``, with a shortened last step if needed."""
    n_full = int(math.floor(s_max / h + 1e-9))
    grid = [i * h for i in range(n_full + 1)]
    if s_max - grid[-1] > 1e-9 * h:
        grid.append(s_max)
    return grid


def _rk4(q0: np.ndarray, s_max: float, h: float) -> tuple[np.ndarray, np.ndarray]:
    grid = uniform_grid(s_max, h)
    out = np.empty((len(grid), 8))
    q = tuple(float(v) for v in q0)
    out[0] = q
    for i in range(1, len(grid)):
        dt = grid[i] - grid[i - 1]
        k1 = _rhs(q)
        k2 = _rhs(tuple(a + dt / 2 * b for a, b in zip(q, k1)))
        k3 = _rhs(tuple(a + dt / 2 * b for a, b in zip(q, k2)))
        k4 = _rhs(tuple(a + dt * b for a, b in zip(q, k3)))
        q = tuple(a + dt / 6 * (b1 + 2 * b2 + 2 * b3 + b4) for a, b1, b2, b3, b4 in zip(q, k1, k2, k3, k4))
        if not all(math.isfinite(v) and abs(v) <= DIVERGENCE_BOUND for v in q):
            raise DivergenceError(grid[i - 1])
        out[i] = q
    return np.array(grid), out


def _rk45(q0: np.ndarray, s_max: float, h: float, rtol: float, atol: float):
    def escape(_, q):
        return DIVERGENCE_BOUND - np.max(np.abs(q))

    escape.terminal = True
    sol = solve_ivp(
        lambda _, q: _rhs(q),
        (0.0, s_max),
        q0,
        method="RK45",
        rtol=rtol,
        atol=atol,
        first_step=min(h, s_max),
        events=escape,
    )
    if sol.status != 0 or not np.all(np.isfinite(sol.y)):
        raise DivergenceError(float(sol.t[-1]), sol.message)
    return sol.t, sol.y.T


def integrate_normal(
    state0: PhaseState,
    s_max: float,
    h: float = 1e-3,
    adaptive: bool = False,
    *,
    rtol: float = 1e-12,
    atol: float = 1e-13,
    case: Optional[str] = None,
) -> Trajectory:
    """Integrate the normal Hamiltonian system from ``state0`` over ``[0, s_max]``.

    The fixed-step scheme takes steps of ``h`` and shortens the final one to
    land on ``s_max``.  With ``adaptive=True`` an embedded Runge-Kutta 4(5)
    pair chooses the steps and ``h`` only seeds the first one.
    """
    if not h > 0 or not s_max > 0:
        raise ValueError("need h > 0 and s_max > 0")
    cov = state0.covector
    if not cov.normal:
        raise ValueError("integrate_normal needs a normal covector (xi0 = -1)")
    cov.require_nontrivial()
    q0 = state_vector(state0)
    H0 = float(_H_normal(q0))
    if H0 < 0 and abs(2 * H0 + 1) > 1e-9:
        warnings.warn(
            f"time-like data with -zeta1^2 + zeta2^2 = {2 * H0!r} (not unit speed)",
            NormalizationWarning,
            stacklevel=2,
        )
    if adaptive:
        s, states = _rk45(q0, s_max, h, rtol, atol)
    else:
        s, states = _rk4(q0, s_max, h)
    return Trajectory(state0.s + s, states, h, adaptive, case, cov)


def integrate_normal_batch(covectors, s_max: float, h: float = 1e-3) -> list[Trajectory]:
    """Fixed-step RK4 for many costates from the origin at once.

    Same scheme and grid as :func:`integrate_normal`, vectorized across
    costates.  A run that leaves the divergence bound is truncated at its last
    good sample instead of raising.
    """
    if not h > 0 or not s_max > 0:
        raise ValueError("need h > 0 and s_max > 0")
    covs = list(covectors)
    for cov in covs:
        if not cov.normal:
            raise ValueError("integrate_normal_batch needs normal covectors (xi0 = -1)")
        cov.require_nontrivial()
    grid = uniform_grid(s_max, h)
    m = len(covs)
    q = np.zeros((8, m))
    q[4:] = np.array([c.components() for c in covs], dtype=float).T
    out = np.empty((len(grid), 8, m))
    out[0] = q
    alive = np.ones(m, dtype=bool)
    n_good = np.full(m, len(grid))
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(1, len(grid)):
            dt = grid[i] - grid[i - 1]
            k1 = np.array(_rhs(q))
            k2 = np.array(_rhs(q + dt / 2 * k1))
            k3 = np.array(_rhs(q + dt / 2 * k2))
            k4 = np.array(_rhs(q + dt * k3))
            q = q + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            ok = np.all(np.isfinite(q), axis=0) & (np.max(np.abs(q), axis=0) <= DIVERGENCE_BOUND)
            died = alive & ~ok
            n_good[died] = i
            alive &= ok
            q[:, ~alive] = 0.0
            out[i] = q
            if not alive.any():
                break
    s = np.array(grid)
    return [
        Trajectory(s[: n_good[j]], out[: n_good[j], :, j], h, False, None, cov) for j, cov in enumerate(covs)
    ]


def check_H_conservation(traj: Trajectory) -> float:
    """Largest deviation of the normal Hamiltonian from its initial value."""
    if len(traj) == 0:
        raise ValueError("empty trajectory")
    return float(np.max(np.abs(traj.H - traj.H[0])))


@dataclass(frozen=True)
class NoSolution:
    """No abnormal extremal of the requested causal type exists."""

    target: CausalKind
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class AbnormalCurve:
    """Abnormal extremal through the origin.

    ``kind`` is SPACELIKE for ``s -> (0, +-s, 0, +-s^3/6)`` and NULL for the
    constant curve.
    """

    kind: CausalKind
    covector: Covector

    def at(self, s: float, sign: int = 1) -> EngelPoint:
        if self.kind is CausalKind.NULL:
            return IDENTITY
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return EngelPoint(0.0, sign * s, 0.0, sign * s**3 / 6)

    def controls(self, sign: int = 1) -> tuple[float, float]:
        return (0.0, 0.0) if self.kind is CausalKind.NULL else (0.0, float(sign))


def abnormal_analyze(xi: Covector, causal_target: Union[CausalKind, str]):
    """Case analysis of abnormal (``xi0 = 0``) extremals starting at the origin.

    Along an abnormal extremal both ``H_u1`` and ``H_u2`` vanish; at the origin
    this forces ``xi1 = xi2 = 0``, and differentiating gives
    ``u1 (xi3 + xi4 x1) = u2 (xi3 + xi4 x1) = 0``.
    """
    if xi.xi0 != 0:
        raise ValueError("abnormal analysis needs xi0 = 0")
    target = CausalKind(causal_target.capitalize()) if isinstance(causal_target, str) else causal_target
    if xi.xi3 == 0 and xi.xi4 == 0:
        raise NontrivialityError("xi3 = xi4 = 0 forces xi1 = xi2 = 0 along an abnormal extremal")
    if xi.xi1 != 0 or xi.xi2 != 0:
        raise ValueError("abnormal extremals from the origin need xi1 = xi2 = 0 (H_u = 0 there)")
    if target is CausalKind.TIMELIKE:
        return NoSolution(target, "time-like abnormal extremals would need u2 = +-i")
    if target is CausalKind.NULL:
        return AbnormalCurve(CausalKind.NULL, xi)
    if target is CausalKind.SPACELIKE:
        if xi.xi3 != 0:
            # x1 stays at -xi3/xi4, which cannot be the origin
            return NoSolution(target, "space-like abnormal extremals through the origin need xi3 = 0")
        return AbnormalCurve(CausalKind.SPACELIKE, xi)
    raise ValueError(f"unsupported causal target {causal_target!r}")


def abnormal_normal_lift(sign: int = 1) -> Covector:
    """Normal costate whose flow reproduces the space-like abnormal curve."""
    return Covector(0.0, float(sign), 0.0, 0.0)
