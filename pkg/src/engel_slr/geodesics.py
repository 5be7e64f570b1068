"""Closed-form normal geodesics from the origin, one evaluator per case.

Cases follow the sign of ``H = (-xi1^2 + xi2^2)/2`` and the zero pattern of
``(xi3, xi4)``:

* light-like (``H = 0``): ``(t, +-t, 0, +-t^3/3)``, with ``t(s)`` solved from a
  Riccati equation for ``beta``;
* time-like, ``xi3 = xi4 = 0``: straight lines in ``(x1, x2)``;
* time-like, ``xi4 = 0 != xi3``: hyperbolic functions (the Heisenberg case);
* time-like, ``xi4 != 0``: Jacobi elliptic functions of ``beta``.

In the elliptic case ``beta = -(xi3 + x1 xi4)`` solves
``beta'' = beta (beta^2/2 + C1)`` and the coordinates are linear combinations
of ``B_i(s) = int_0^s beta^i``, divided by powers of ``xi4``.  For small
``xi4`` that division amplifies rounding, so the evaluator switches to
``mpmath`` with enough digits to absorb it (see :func:`elliptic_precision`).
"""

from __future__ import annotations

import contextlib
import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import mpmath
import numpy as np
from scipy.integrate import quad, simpson

from .core import IDENTITY, CausalKind, EngelPoint
from .hamiltonian import (
    AbnormalCurve,
    Covector,
    DivergenceError,
    NormalizationWarning,
    PhaseState,
    Trajectory,
    abnormal_analyze,
    integrate_normal,
    uniform_grid,
)
from .special import EllipticModulus, complete_K, elliptic_F, jacobi_scd_epsilon

__all__ = [
    "CASE_TOL",
    "GeodesicCase",
    "WrongCaseError",
    "OutOfDomainError",
    "CausalityError",
    "initial_hamiltonian",
    "classify_case",
    "lightlike_geodesic",
    "lightlike_parameter",
    "lightlike_domain",
    "lightlike_from_covector",
    "timelike_flat",
    "timelike_hyperbolic",
    "EllipticParams",
    "elliptic_precision",
    "elliptic_params",
    "beta_fn",
    "B_integrals",
    "timelike_elliptic",
    "evaluate",
    "GeodesicSamples",
    "sample_geodesic",
    "arclength_flat",
    "curve_length",
]

CASE_TOL = 1e-12


class GeodesicCase(enum.Enum):
    LIGHTLIKE = "LightLike"
    TIMELIKE_FLAT = "TimelikeFlat"
    TIMELIKE_HYPERBOLIC = "TimelikeHyperbolic"
    TIMELIKE_ELLIPTIC = "TimelikeElliptic"
    ABNORMAL_SPACELIKE = "AbnormalSpacelike"
    # normal data with H > 0; no closed form here, routed to the integrator
    SPACELIKE = "Spacelike"


class WrongCaseError(ValueError):
    def __init__(self, message: str, detected: Optional[GeodesicCase] = None):
        self.detected = detected
        super().__init__(message)


class OutOfDomainError(ArithmeticError):
    """``s`` lies outside the pole-free interval of the parameterization."""

    def __init__(self, s, interval: tuple[float, float]):
        self.s = s
        self.interval = interval
        super().__init__(f"s={float(s)!r} outside the valid interval ({interval[0]!r}, {interval[1]!r})")


class CausalityError(ValueError):
    """A sample of a supposedly non-space-like curve is space-like."""


def initial_hamiltonian(xi: Covector) -> float:
    return (-xi.xi1 * xi.xi1 + xi.xi2 * xi.xi2) / 2


def classify_case(xi: Covector, H0: Optional[float] = None) -> GeodesicCase:
    """Case of the geodesic leaving the origin with costate ``xi``."""
    if not xi.normal:
        curve = abnormal_analyze(xi, CausalKind.SPACELIKE)
        if isinstance(curve, AbnormalCurve):
            return GeodesicCase.ABNORMAL_SPACELIKE
        raise WrongCaseError(f"abnormal costate {xi.components()} has no space-like extremal: {curve.reason}")
    xi.require_nontrivial()
    H = initial_hamiltonian(xi) if H0 is None else H0
    if abs(H) <= CASE_TOL:
        return GeodesicCase.LIGHTLIKE
    if H > 0:
        return GeodesicCase.SPACELIKE
    if abs(xi.xi4) > CASE_TOL:
        return GeodesicCase.TIMELIKE_ELLIPTIC
    if abs(xi.xi3) > CASE_TOL:
        return GeodesicCase.TIMELIKE_HYPERBOLIC
    return GeodesicCase.TIMELIKE_FLAT


def _require_case(xi: Covector, expected: GeodesicCase) -> None:
    found = classify_case(xi)
    if found is not expected:
        raise WrongCaseError(f"costate {xi.components()} is {found.value}, not {expected.value}", found)


# ---------------------------------------------------------------- light-like


def lightlike_geodesic(sign: int, t: float) -> EngelPoint:
    """The light-like curve ``(t, sign t, 0, sign t^3/3)``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    # + 0.0 turns a -0.0 at t = 0 into 0.0
    return EngelPoint(t + 0.0, sign * t + 0.0, 0.0, sign * t**3 / 3 + 0.0)


def _lightlike_data(xi: Covector):
    lam = math.copysign(1.0, xi.xi1 * xi.xi2)
    C1 = xi.xi4 * xi.xi2 - xi.xi3 * xi.xi3 / 2
    return lam, C1


def lightlike_parameter(xi: Covector, s: float) -> float:
    """Curve parameter ``t = x1(s)`` of the light-like geodesic with costate ``xi``.

    Along a null extremal ``beta' = lam (beta^2/2 + C1)`` with ``lam = xi2/xi1``.
    Integrating this Riccati equation and using ``x1 = -(beta + xi3)/xi4``
    gives ``x1 = -2 xi2 q / (1 + xi3 q)`` with ``q = tan(a w s)/w``,
    ``tanh(a w s)/w`` or ``a s`` (``a = lam/2``, ``w = sqrt(2|C1|)``), which
    stays finite as ``xi4 -> 0``.
    """
    if xi.xi1 == 0 and xi.xi2 == 0:
        return 0.0
    lo, hi = lightlike_domain(xi)
    if not lo < s < hi:
        raise OutOfDomainError(s, (lo, hi))
    lam, C1 = _lightlike_data(xi)
    a = lam / 2
    if C1 > 0:
        w = math.sqrt(2 * C1)
        th = a * w * s
        return -2 * xi.xi2 * math.sin(th) / (w * math.cos(th) + xi.xi3 * math.sin(th))
    if C1 < 0:
        w = math.sqrt(-2 * C1)
        th = a * w * s
        return -2 * xi.xi2 * math.sinh(th) / (w * math.cosh(th) + xi.xi3 * math.sinh(th))
    return -2 * xi.xi2 * a * s / (1 + xi.xi3 * a * s)


def lightlike_domain(xi: Covector) -> tuple[float, float]:
    """Interval of ``s`` around 0 before the light-like parameter blows up."""
    if xi.xi1 == 0 and xi.xi2 == 0:
        return (-math.inf, math.inf)
    lam, C1 = _lightlike_data(xi)
    a = lam / 2
    if C1 > 0:
        w = math.sqrt(2 * C1)
        delta = math.atan2(xi.xi3, w)
        ends = sorted(((delta - math.pi / 2) / (a * w), (delta + math.pi / 2) / (a * w)))
        return ends[0], ends[1]
    if C1 < 0:
        w = math.sqrt(-2 * C1)
        if w >= abs(xi.xi3):
            return (-math.inf, math.inf)
        blow = math.atanh(-w / xi.xi3) / (a * w)
    elif xi.xi3 == 0:
        return (-math.inf, math.inf)
    else:
        blow = -1 / (xi.xi3 * a)
    return (blow, math.inf) if blow < 0 else (-math.inf, blow)


def lightlike_from_covector(xi: Covector, s: float) -> EngelPoint:
    """Light-like geodesic with costate ``xi`` at arc parameter ``s``."""
    _require_case(xi, GeodesicCase.LIGHTLIKE)
    if xi.xi1 == 0 and xi.xi2 == 0:
        # zeta vanishes at the origin and stays zero: the extremal is constant
        return IDENTITY
    lam, _ = _lightlike_data(xi)
    # x2' = zeta2 = -lam * (-zeta1) = -lam * x1'
    return lightlike_geodesic(-int(lam), lightlike_parameter(xi, s))


# ------------------------------------------------------------------ xi4 = 0


def timelike_flat(xi1: float, xi2: float, s: float) -> EngelPoint:
    """Geodesic for ``xi3 = xi4 = 0``: a straight line in ``(x1, x2)``."""
    if abs(xi1 * xi1 - xi2 * xi2 - 1) > 1e-9:
        warnings.warn("costate is not arc-length normalized (xi1^2 - xi2^2 != 1)", NormalizationWarning, stacklevel=2)
    return EngelPoint(-xi1 * s, xi2 * s, 0.0, (xi1 * xi1 + xi2 * xi2) / 6 * xi2 * s**3)


def _extra_digits(small: float) -> int:
    return 20 + 3 * math.ceil(math.log10(1 / small))


def timelike_hyperbolic(xi: Covector, s: float) -> EngelPoint:
    """Geodesic for ``xi4 = 0 != xi3``.

    With ``A_i = xi_i / xi3`` and ``c, h = cosh, sinh(xi3 s)``.  The cubic
    terms of ``z`` cancel to ``O(s^3)`` near ``s = 0``; for ``|xi3| < 0.05``
    the evaluation runs in extended precision.
    """
    if abs(xi.xi4) > CASE_TOL or abs(xi.xi3) <= CASE_TOL:
        found = classify_case(xi) if any(xi.components()) else None
        raise WrongCaseError("hyperbolic evaluator needs xi4 = 0 and xi3 != 0", found)
    small = abs(xi.xi3) < 0.05
    with mpmath.workdps(_extra_digits(abs(xi.xi3))) if small else contextlib.nullcontext():
        lib = mpmath if small else math
        num = mpmath.mpf if small else float
        x3 = num(xi.xi3)
        A1, A2 = num(xi.xi1) / x3, num(xi.xi2) / x3
        sv = num(s)
        c, h = lib.cosh(x3 * sv), lib.sinh(x3 * sv)
        x1 = -A1 * h + A2 * (c - 1)
        x2 = -A1 * (c - 1) + A2 * h
        y = (A2 * A2 - A1 * A1) * (x3 * sv - h) / 2
        P = A1 * (A1 * A1 + 3 * A2 * A2)
        Q = A2 * (3 * A1 * A1 + A2 * A2)
        z = (
            A2 * (A1 * A1 + A2 * A2) * c * c * h
            - 2 * A2**3 * h**3 / 3
            - P * c**3 / 3
            + P * c * c / 2
            - Q * h * c / 2
            + A2 * (A1 * A1 - A2 * A2) * x3 * sv / 2
            - P / 6
        )
        return EngelPoint(float(x1), float(x2), float(y), float(z))


# ----------------------------------------------------------------- xi4 != 0


def elliptic_precision(xi4: float) -> int:
    """Decimal digits used for the elliptic closed form (0 means double precision)."""
    if abs(xi4) >= 0.05:
        return 0
    return _extra_digits(abs(xi4))


def _precision(dps: int):
    return mpmath.workdps(dps) if dps else contextlib.nullcontext()


@dataclass(frozen=True)
class EllipticParams:
    """Constants of the ``xi4 != 0`` solution.

    ``beta`` is ``sqrt(2R) cs(v) nd(v)`` with ``v = (F - sigma sqrt(2R) s)/2``,
    ``R = rho_norm = sqrt(C2)`` and modulus ``k^2 = (R - C1)/(2R)``.
    ``D1..D4`` are the offsets that make every ``B_i`` vanish at ``s = 0``.
    Numbers are floats, or ``mpmath.mpf`` when ``dps > 0``.
    """

    xi: Covector
    C1: object
    C2: object
    disc: object  # C2 - C1^2 = xi4^2 (xi1^2 - xi2^2)
    k2: object
    kp2: object
    g_frak: object
    phi1: object
    F_const: object
    K: object
    rho_norm: object
    sign_beta_dot: int
    beta0: object
    beta_dot0: object
    D1: object
    D2: object
    D3: object
    D4: object
    dps: int = 0

    @property
    def modulus(self) -> EllipticModulus:
        return EllipticModulus(self.k2, self.kp2)

    @property
    def speed(self):
        """``sqrt(2 R) = 1/(sqrt 2 g)``, the rate of the elliptic argument ``2v``."""
        return 1 / (math.sqrt(2) * self.g_frak) if not self.dps else 1 / (mpmath.sqrt(2) * self.g_frak)

    def domain(self) -> tuple[float, float]:
        """Largest open ``s``-interval around 0 free of poles of ``cs``."""
        with _precision(self.dps):
            c = self.speed
            if self.sign_beta_dot > 0:
                return float((self.F_const - 4 * self.K) / c), float(self.F_const / c)
            return float(-self.F_const / c), float((4 * self.K - self.F_const) / c)


def _G(sn, cn, dn, eps_v, v, k2):
    # antiderivative of cs^2 nd^2 (up to the factor in B2)
    return v - 2 * eps_v - cn * dn / sn + k2 * sn * cn / dn


def _psi1(sn, dn, lib):
    # ln(k'^2 + cs^2) = 2 ln(dn/|sn|)
    return 2 * lib.log(dn / abs(sn))


def elliptic_params(xi: Covector, dps: Optional[int] = None) -> EllipticParams:
    """Derived constants for the elliptic case (time-like data, ``xi4 != 0``)."""
    if not xi.normal or abs(xi.xi4) <= CASE_TOL:
        raise WrongCaseError("elliptic case needs normal data with xi4 != 0", None if not xi.normal else classify_case(xi))
    if initial_hamiltonian(xi) >= -CASE_TOL:
        raise WrongCaseError(
            f"costate {xi.components()} is not time-like; the elliptic closed form needs H < 0",
            classify_case(xi),
        )
    if dps is None:
        dps = elliptic_precision(xi.xi4)
    with _precision(dps):
        lib = mpmath if dps else math
        num = mpmath.mpf if dps else float
        x1, x2, x3, x4 = (num(v) for v in xi.components())
        C1 = x4 * x2 - x3 * x3 / 2
        disc = x4 * x4 * (x1 * x1 - x2 * x2)
        C2 = C1 * C1 + disc
        R = lib.sqrt(C2)
        # R -/+ C1 without cancellation: their product is disc
        if C1 >= 0:
            r_plus = R + C1
            r_minus = disc / r_plus
        else:
            r_minus = R - C1
            r_plus = disc / r_minus
        k2, kp2 = r_minus / (2 * R), r_plus / (2 * R)
        g_frak = 1 / (2 * lib.sqrt(R))
        c = lib.sqrt(2 * R)
        # beta(0) = -xi3 = c cot(phi1/2), phi1 in (0, 2 pi)
        phi1 = 2 * lib.atan2(c, -x3)
        m = EllipticModulus(k2, kp2)
        F = elliptic_F(phi1, m)
        K = complete_K(m)
        sigma = 1 if xi.xi4 * xi.xi1 > 0 else -1
        v0 = F / 2
        sn, cn, dn, eps_v = jacobi_scd_epsilon(v0, m)
        beta0 = c * cn / (sn * dn)
        beta_dot0 = sigma * lib.sqrt((beta0 * beta0 / 2 + C1) ** 2 + disc)
        params = EllipticParams(
            xi=xi,
            C1=C1,
            C2=C2,
            disc=disc,
            k2=k2,
            kp2=kp2,
            g_frak=g_frak,
            phi1=phi1,
            F_const=F,
            K=K,
            rho_norm=R,
            sign_beta_dot=sigma,
            beta0=beta0,
            beta_dot0=beta_dot0,
            D1=-sigma * _psi1(sn, dn, lib),
            D2=2 * sigma * c * _G(sn, cn, dn, eps_v, v0, k2),
            D3=-2 * beta_dot0,
            D4=-num(4) / 3 * beta0 * beta_dot0,
            dps=dps,
        )
    return params


def _elliptic_state(p: EllipticParams, s, branch: int = 1):
    """``(beta, beta_dot, B1, B2, B3, B4)`` at ``s`` in the working number type.

    ``branch = -1`` evaluates through the mirrored argument ``-v`` (using the
    parity of cs, nd and the Jacobi epsilon function); both branches describe
    the same curve.
    """
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    lib = mpmath if p.dps else math
    num = mpmath.mpf if p.dps else float
    s = num(s)
    c = lib.sqrt(2 * p.rho_norm)
    sigma = p.sign_beta_dot
    w = p.F_const - sigma * c * s
    if not 0 < w < 4 * p.K:
        raise OutOfDomainError(s, p.domain())
    vb = branch * w / 2
    sn, cn, dn, eps_v = jacobi_scd_epsilon(vb, p.modulus)
    if sn == 0:
        raise OutOfDomainError(s, p.domain())
    beta = branch * c * cn / (sn * dn)
    beta_dot = sigma * lib.sqrt((beta * beta / 2 + p.C1) ** 2 + p.disc)
    B1 = sigma * _psi1(sn, dn, lib) + p.D1
    B2 = -2 * sigma * c * branch * _G(sn, cn, dn, eps_v, vb, p.k2) + p.D2
    B3 = 2 * beta_dot - 2 * p.C1 * B1 + p.D3
    B4 = num(4) / 3 * (beta * beta_dot - 2 * p.C1 * B2 - p.C2 * s) + p.D4
    return beta, beta_dot, B1, B2, B3, B4


def beta_fn(params: EllipticParams, s: float, branch: int = 1) -> float:
    """``beta(s) = -(xi3 + x1(s) xi4)`` along the elliptic geodesic."""
    with _precision(params.dps):
        return float(_elliptic_state(params, s, branch)[0])


def _quadrature_B(p: EllipticParams, s):
    def beta(t):
        return _elliptic_state(p, t)[0]

    if p.dps:
        return tuple(mpmath.quad(lambda t, i=i: beta(t) ** i, [0, s]) for i in range(1, 5))
    out = []
    for i in range(1, 5):
        val, _ = quad(lambda t, i=i: beta(t) ** i, 0.0, s, epsabs=1e-14, epsrel=1e-13, limit=200)
        out.append(val)
    return tuple(out)


def B_integrals(params: EllipticParams, s: float, method: str = "closed", branch: int = 1) -> tuple[float, ...]:
    """``B_i(s) = int_0^s beta^i`` for ``i = 1..4``.

    ``method="closed"`` uses the elliptic-function antiderivatives,
    ``method="quadrature"`` integrates ``beta^i`` numerically.
    """
    with _precision(params.dps):
        if method == "closed":
            values = _elliptic_state(params, s, branch)[2:]
        elif method == "quadrature":
            _elliptic_state(params, s)  # domain check
            values = _quadrature_B(params, s)
        else:
            raise ValueError(f"unknown method {method!r}")
        return tuple(float(v) for v in values)


def timelike_elliptic(
    xi: Covector,
    s: float,
    method: str = "closed",
    params: Optional[EllipticParams] = None,
    branch: int = 1,
) -> EngelPoint:
    """Time-like geodesic for ``xi4 != 0`` at arc parameter ``s``."""
    p = params if params is not None else elliptic_params(xi)
    with _precision(p.dps):
        num = mpmath.mpf if p.dps else float
        x3, x4 = num(xi.xi3), num(xi.xi4)
        C1 = p.C1
        sv = num(s)
        beta, _, *B = _elliptic_state(p, sv, branch)
        if method == "quadrature":
            B = _quadrature_B(p, sv)
        elif method != "closed":
            raise ValueError(f"unknown method {method!r}")
        B1, B2, B3, B4 = B
        # beta(0) = -xi3; differencing against the evaluated beta(0) keeps x1(0) = 0 exactly
        x1 = -(beta - p.beta0) / x4
        x2 = (B2 + 2 * C1 * sv) / (2 * x4)
        y = -(B3 + 2 * C1 * B1 + x3 * B2 + 2 * C1 * x3 * sv) / (2 * x4 * x4) - x1 * x2 / 2
        z = (B4 + 2 * C1 * B2 + 2 * x3 * B3 + 4 * C1 * x3 * B1 + x3 * x3 * B2 + 2 * C1 * x3 * x3 * sv) / (
            4 * x4**3
        ) + x2**3 / 6
        return EngelPoint(float(x1), float(x2), float(y), float(z))


# ----------------------------------------------------------------- dispatch


def evaluate(xi: Covector, s: float, case: Optional[GeodesicCase] = None) -> EngelPoint:
    """Closed-form geodesic point for any case that has one."""
    found = classify_case(xi)
    if case is not None and case is not found:
        raise WrongCaseError(f"costate {xi.components()} is {found.value}, not {case.value}", found)
    if found is GeodesicCase.LIGHTLIKE:
        return lightlike_from_covector(xi, s)
    if found is GeodesicCase.TIMELIKE_FLAT:
        return timelike_flat(xi.xi1, xi.xi2, s)
    if found is GeodesicCase.TIMELIKE_HYPERBOLIC:
        return timelike_hyperbolic(xi, s)
    if found is GeodesicCase.TIMELIKE_ELLIPTIC:
        return timelike_elliptic(xi, s)
    if found is GeodesicCase.ABNORMAL_SPACELIKE:
        return abnormal_analyze(xi, CausalKind.SPACELIKE).at(s)
    raise WrongCaseError("space-like normal geodesics have no closed form; integrate them numerically", found)


@dataclass(frozen=True)
class GeodesicSamples:
    case: GeodesicCase
    s: np.ndarray
    points: np.ndarray
    domain: Optional[tuple[float, float]] = None
    clipped: bool = False
    covector: Optional[Covector] = None


def sample_geodesic(
    xi: Covector,
    s_max: float,
    h: float,
    case: Optional[GeodesicCase] = None,
) -> GeodesicSamples:
    """Sample a geodesic on ``0, h, 2h, ..., s_max``.

    Samples past a pole of the parameterization are dropped and reported via
    ``clipped`` and ``domain``.  Space-like normal data is integrated.
    """
    if not s_max > 0 or not h > 0:
        raise ValueError("need s_max > 0 and h > 0")
    found = classify_case(xi)
    if case is not None and case is not found:
        raise WrongCaseError(f"costate {xi.components()} is {found.value}, not {case.value}", found)
    if found is GeodesicCase.SPACELIKE:
        traj = integrate_normal(PhaseState.at_origin(xi), s_max, h, case=found.value)
        return GeodesicSamples(found, np.array(traj.s), np.array(traj.points), None, False, xi)
    grid = uniform_grid(s_max, h)
    domain = None
    if found is GeodesicCase.TIMELIKE_ELLIPTIC:
        params = elliptic_params(xi)
        domain = params.domain()

        def point(s):
            return timelike_elliptic(xi, s, params=params)

    elif found is GeodesicCase.LIGHTLIKE:
        domain = lightlike_domain(xi)

        def point(s):
            return lightlike_from_covector(xi, s)

    else:

        def point(s):
            return evaluate(xi, s, found)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NormalizationWarning)
        kept = [s for s in grid if domain is None or domain[0] < s < domain[1]]
        pts = []
        for s in kept:
            try:
                pts.append(tuple(point(s)))
            except (OutOfDomainError, ZeroDivisionError, OverflowError, ValueError):
                break
    clipped = len(pts) < len(grid)
    return GeodesicSamples(found, np.array(kept[: len(pts)]), np.array(pts).reshape(-1, 4), domain, clipped, xi)


# ------------------------------------------------------------------- length


def arclength_flat(endpoint: EngelPoint) -> float:
    """Length ``sqrt(x1^2 - x2^2)`` of the flat time-like geodesic to ``endpoint``."""
    q = endpoint.x1**2 - endpoint.x2**2
    if q < 0:
        raise ValueError("x1^2 < x2^2: not the endpoint of a flat time-like geodesic")
    return math.sqrt(q)


def curve_length(curve, s: Optional[Sequence[float]] = None, *, tol: float = 1e-9) -> float:
    """Sub-Lorentzian length of a horizontal non-space-like curve.

    ``curve`` is a :class:`Trajectory` (whose controls are ``(-zeta1, zeta2)``)
    or an ``(n, 4)`` array of samples at parameters ``s`` (default ``0..1``),
    differentiated numerically.  Raises :class:`CausalityError` when some
    sample has ``-u1^2 + u2^2 > tol``.
    """
    if isinstance(curve, Trajectory):
        t = np.asarray(curve.s)
        q = np.asarray(curve.states).T
        u1 = -(q[4] - q[1] / 2 * q[6])
        u2 = q[5] + q[0] / 2 * q[6] + (q[0] ** 2 + q[1] ** 2) / 2 * q[7]
    else:
        pts = np.asarray(curve, dtype=float)
        t = np.linspace(0.0, 1.0, len(pts)) if s is None else np.asarray(s, dtype=float)
        if len(pts) < 2:
            return 0.0
        order = 2 if len(pts) > 2 else 1
        u1 = np.gradient(pts[:, 0], t, edge_order=order)
        u2 = np.gradient(pts[:, 1], t, edge_order=order)
    if len(t) < 2:
        return 0.0
    sq = -u1 * u1 + u2 * u2
    if np.any(sq > tol):
        i = int(np.argmax(sq))
        raise CausalityError(f"space-like velocity at sample {i} (g = {sq[i]!r})")
    speed = np.sqrt(np.clip(-sq, 0.0, None))
    if len(t) < 3:
        return float(np.trapezoid(speed, t)) if hasattr(np, "trapezoid") else float(np.trapz(speed, t))
    return float(simpson(speed, x=t))
