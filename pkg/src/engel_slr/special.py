"""Real-argument elliptic integrals and Jacobi elliptic functions.

Everything here is driven by one arithmetic-geometric mean (descending Landen)
sequence per modulus: the incomplete integral of the first kind runs the
amplitude forward through the sequence, the Jacobi amplitude runs it backward,
and the Jacobi epsilon function is accumulated from the same amplitudes.

All routines accept either Python floats or ``mpmath.mpf`` values.  With
``mpf`` input the computation is carried out at the current ``mpmath``
working precision, which the geodesic evaluators use to absorb cancellation
in nearly degenerate parameter regimes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath

__all__ = [
    "EllipticDomainError",
    "PoleError",
    "EllipticModulus",
    "complete_K",
    "complete_E",
    "elliptic_F",
    "elliptic_E_amplitude",
    "elliptic_E_incomplete",
    "jacobi_amplitude",
    "jacobi_scd",
    "jacobi_scd_epsilon",
    "jacobi_quotients",
    "jacobi_cs",
    "jacobi_nd",
    "jacobi_tn",
    "inverse_cn",
]

# Below this distance from k^2 = 0 or k^2 = 1 the trigonometric / hyperbolic
# closed forms replace the AGM (double precision only).
DEGENERATE_TOL = 1e-12


class EllipticDomainError(ValueError):
    """Argument or modulus outside the real domain of an elliptic function."""


class PoleError(ArithmeticError):
    """A Jacobi quotient was evaluated at (or numerically on top of) a pole."""

    def __init__(self, function: str, u, pole):
        self.function = function
        self.u = u
        self.pole = pole
        super().__init__(f"{function} has a pole at u={float(pole)!r} (evaluated at u={float(u)!r})")


class _FloatLib:
    sqrt = staticmethod(math.sqrt)
    sin = staticmethod(math.sin)
    cos = staticmethod(math.cos)
    tan = staticmethod(math.tan)
    asin = staticmethod(math.asin)
    acos = staticmethod(math.acos)
    atan = staticmethod(math.atan)
    atan2 = staticmethod(math.atan2)
    tanh = staticmethod(math.tanh)
    cosh = staticmethod(math.cosh)
    asinh = staticmethod(math.asinh)
    atanh = staticmethod(math.atanh)
    log = staticmethod(math.log)
    exp = staticmethod(math.exp)
    pi = math.pi
    eps = 2.0**-52
    degenerate_tol = DEGENERATE_TOL
    key = "float"

    @staticmethod
    def mpf(x):
        return float(x)

    @staticmethod
    def nint(x):
        return float(round(x))

    @staticmethod
    def sech(x):
        return 1.0 / math.cosh(x)


class _MpLib:
    key = "mp"

    def __getattr__(self, name):
        return getattr(mpmath.mp, name)

    @property
    def pi(self):
        return +mpmath.mp.pi

    @property
    def eps(self):
        return mpmath.mp.eps

    @property
    def degenerate_tol(self):
        return mpmath.mp.eps * 16


_FLOAT = _FloatLib()
_MP = _MpLib()


def _lib(*values):
    for v in values:
        if isinstance(v, mpmath.mpf):
            return _MP
    return _FLOAT


@dataclass(frozen=True)
class EllipticModulus:
    """Modulus ``k`` stored through ``k2 = k**2`` and its complement ``kp2``.

    Keeping the complement separately avoids forming ``1 - k2`` when ``k2``
    is within rounding of 1.
    """

    k2: float
    kp2: float

    def __post_init__(self):
        lib = _lib(self.k2, self.kp2)
        if not (0 <= self.k2 <= 1) or not (0 <= self.kp2 <= 1):
            raise EllipticDomainError(f"k^2={self.k2!r} outside [0, 1]")
        if abs(self.k2 + self.kp2 - 1) > 8 * lib.eps:
            raise EllipticDomainError("k^2 and k'^2 do not sum to 1")

    @classmethod
    def from_k2(cls, k2, kp2=None):
        if k2 > 1 or k2 < 0:
            raise EllipticDomainError(f"k^2={k2!r} outside [0, 1]")
        if kp2 is None:
            kp2 = 1 - k2
        return cls(k2, kp2)

    @classmethod
    def from_k(cls, k):
        return cls.from_k2(k * k)

    @property
    def k(self):
        return _lib(self.k2).sqrt(self.k2)

    @property
    def kp(self):
        return _lib(self.kp2).sqrt(self.kp2)


def _modulus(k) -> EllipticModulus:
    if isinstance(k, EllipticModulus):
        return k
    return EllipticModulus.from_k(k)


def _regime(m: EllipticModulus, lib) -> str:
    if m.k2 <= lib.degenerate_tol:
        return "trig"
    if m.kp2 <= lib.degenerate_tol:
        return "hyp"
    return "agm"


@lru_cache(maxsize=256)
def _agm_cached(k2, kp2, key, prec):
    lib = _MP if key == "mp" else _FLOAT
    a, b, c = lib.mpf(1), lib.sqrt(kp2), lib.sqrt(k2)
    seq = [(a, b, c)]
    while abs(c) > lib.eps * a:
        a, b, c = (a + b) / 2, lib.sqrt(a * b), (a - b) / 2
        seq.append((a, b, c))
        if len(seq) > 80:
            raise RuntimeError("AGM failed to converge")
    # E(k)/K(k) = 1 - sum 2^(n-1) c_n^2
    ratio = 1 - sum(2 ** (n - 1) * cn * cn for n, (_, _, cn) in enumerate(seq))
    return tuple(seq), ratio


def _agm(m: EllipticModulus, lib):
    prec = mpmath.mp.prec if lib is _MP else 53
    return _agm_cached(m.k2, m.kp2, lib.key, prec)


def complete_K(k):
    """Complete elliptic integral of the first kind, ``K(k)``."""
    m = _modulus(k)
    lib = _lib(m.k2, m.kp2)
    regime = _regime(m, lib)
    if regime == "trig":
        return lib.pi / 2
    if regime == "hyp":
        if m.kp2 == 0:
            return lib.mpf(math.inf)
        # K = L + k'^2 (L - 1)/4 + O(k'^4 L) with L = log(4/k')
        L = lib.log(4 / lib.sqrt(m.kp2))
        return L + m.kp2 * (L - 1) / 4
    seq, _ = _agm(m, lib)
    return lib.pi / (2 * seq[-1][0])


def complete_E(k):
    """Complete elliptic integral of the second kind, ``E(k)``."""
    m = _modulus(k)
    lib = _lib(m.k2, m.kp2)
    regime = _regime(m, lib)
    if regime == "trig":
        return lib.pi / 2
    if regime == "hyp":
        if m.kp2 == 0:
            return lib.mpf(1)
        # E = 1 + k'^2 (L - 1/2)/2 + O(k'^4 L)
        L = lib.log(4 / lib.sqrt(m.kp2))
        return 1 + m.kp2 * (L - lib.mpf(1) / 2) / 2
    _, ratio = _agm(m, lib)
    return complete_K(m) * ratio


def _forward_amplitudes(phi, m, lib):
    """Landen amplitudes phi_0 = phi, phi_1, ..., phi_N (forward recursion)."""
    seq, _ = _agm(m, lib)
    two_pi = 2 * lib.pi
    phis = [phi]
    for a, b, _ in seq[:-1]:
        psi = lib.atan2(b * lib.sin(phi), a * lib.cos(phi))
        psi += two_pi * lib.nint((phi - psi) / two_pi)
        phi = phi + psi
        phis.append(phi)
    return seq, phis


def elliptic_F(phi, k):
    """Incomplete elliptic integral of the first kind ``F(phi, k)``.

    Valid for every real ``phi``; outside ``[-pi/2, pi/2]`` the result follows
    ``F(phi + pi, k) = F(phi, k) + 2 K(k)``.
    """
    m = _modulus(k)
    lib = _lib(phi, m.k2, m.kp2)
    phi = lib.mpf(phi)
    regime = _regime(m, lib)
    if regime == "trig":
        return phi
    if regime == "hyp":
        if abs(phi) >= lib.pi / 2:
            raise EllipticDomainError("F(phi, 1) diverges for |phi| >= pi/2")
        return lib.atanh(lib.sin(phi))
    seq, phis = _forward_amplitudes(phi, m, lib)
    n = len(seq) - 1
    return phis[-1] / (2**n * seq[-1][0])


def elliptic_E_amplitude(phi, k):
    """Incomplete elliptic integral of the second kind of amplitude ``phi``."""
    m = _modulus(k)
    lib = _lib(phi, m.k2, m.kp2)
    phi = lib.mpf(phi)
    regime = _regime(m, lib)
    if regime == "trig":
        return phi
    if regime == "hyp":
        # sin phi, quasi-periodically continued with E(phi + pi) = E(phi) + 2
        turns = lib.nint(phi / lib.pi)
        return lib.sin(phi - turns * lib.pi) + 2 * turns
    seq, phis = _forward_amplitudes(phi, m, lib)
    n = len(seq) - 1
    f = phis[-1] / (2**n * seq[-1][0])
    _, ratio = _agm(m, lib)
    return ratio * f + sum(seq[j][2] * lib.sin(phis[j]) for j in range(1, n + 1))


def _backward_amplitudes(u, m, lib):
    """Amplitudes phi_N, ..., phi_0 = am(u) from the descending recursion."""
    seq, ratio = _agm(m, lib)
    n = len(seq) - 1
    phi = 2**n * seq[-1][0] * u
    phis = [phi]
    for j in range(n, 0, -1):
        a, _, c = seq[j]
        phi = (phi + lib.asin(c / a * lib.sin(phi))) / 2
        phis.append(phi)
    phis.reverse()
    return seq, ratio, phis


def jacobi_amplitude(u, k):
    """Jacobi amplitude ``am(u, k)``."""
    m = _modulus(k)
    lib = _lib(u, m.k2, m.kp2)
    u = lib.mpf(u)
    regime = _regime(m, lib)
    if regime == "trig":
        return u
    if regime == "hyp":
        return 2 * lib.atan(lib.tanh(u / 2))
    _, _, phis = _backward_amplitudes(u, m, lib)
    return phis[0]


def elliptic_E_incomplete(u, k):
    """Jacobi epsilon ``E(u, k)``, the integral of ``dn(t, k)**2`` over ``[0, u]``.

    Equal to the second-kind integral of amplitude ``am(u, k)``.
    """
    m = _modulus(k)
    lib = _lib(u, m.k2, m.kp2)
    u = lib.mpf(u)
    regime = _regime(m, lib)
    if regime == "trig":
        return u
    if regime == "hyp":
        return lib.tanh(u)
    seq, ratio, phis = _backward_amplitudes(u, m, lib)
    return ratio * u + sum(seq[j][2] * lib.sin(phis[j]) for j in range(1, len(seq)))


def jacobi_scd(u, k):
    """Return ``(sn, cn, dn)`` at ``(u, k)``."""
    m = _modulus(k)
    lib = _lib(u, m.k2, m.kp2)
    u = lib.mpf(u)
    regime = _regime(m, lib)
    if regime == "trig":
        return lib.sin(u), lib.cos(u), lib.mpf(1)
    if regime == "hyp":
        sech = 1 / lib.cosh(u)
        return lib.tanh(u), sech, sech
    _, _, phis = _backward_amplitudes(u, m, lib)
    sn, cn = lib.sin(phis[0]), lib.cos(phis[0])
    # cn^2 + k'^2 sn^2 avoids the cancellation in 1 - k^2 sn^2 near k = 1
    dn = lib.sqrt(cn * cn + m.kp2 * sn * sn)
    return sn, cn, dn


def jacobi_scd_epsilon(u, k):
    """``(sn, cn, dn, E)`` from a single amplitude sweep; ``E`` is Jacobi epsilon."""
    m = _modulus(k)
    lib = _lib(u, m.k2, m.kp2)
    u = lib.mpf(u)
    regime = _regime(m, lib)
    if regime != "agm":
        sn, cn, dn = jacobi_scd(u, m)
        return sn, cn, dn, elliptic_E_incomplete(u, m)
    seq, ratio, phis = _backward_amplitudes(u, m, lib)
    sn, cn = lib.sin(phis[0]), lib.cos(phis[0])
    dn = lib.sqrt(cn * cn + m.kp2 * sn * sn)
    eps_u = ratio * u + sum(seq[j][2] * lib.sin(phis[j]) for j in range(1, len(seq)))
    return sn, cn, dn, eps_u


def _nearest_pole(u, period, offset, lib):
    return offset + period * lib.nint((u - offset) / period)


def _tiny(u, lib):
    return 4 * lib.eps * max(1, abs(u))


def jacobi_cs(u, k):
    """``cn/sn``; raises :class:`PoleError` at the zeros ``2nK`` of ``sn``."""
    m = _modulus(k)
    lib = _lib(u, m.k2, m.kp2)
    sn, cn, _ = jacobi_scd(u, m)
    if abs(sn) <= _tiny(u, lib):
        big_k = complete_K(m)
        pole = 0 * u if big_k == math.inf else _nearest_pole(u, 2 * big_k, 0, lib)
        raise PoleError("cs", u, pole)
    return cn / sn


def jacobi_nd(u, k):
    """``1/dn``, finite for every real ``u`` when ``k < 1``."""
    return 1 / jacobi_scd(u, k)[2]


def jacobi_tn(u, k):
    """``sn/cn``; raises :class:`PoleError` at the zeros ``(2n+1)K`` of ``cn``."""
    m = _modulus(k)
    lib = _lib(u, m.k2, m.kp2)
    sn, cn, _ = jacobi_scd(u, m)
    if abs(cn) <= _tiny(u, lib):
        big_k = complete_K(m)
        raise PoleError("tn", u, _nearest_pole(u, 2 * big_k, big_k, lib))
    return sn / cn


def jacobi_quotients(u, k):
    """Return ``(cs, nd, tn)`` at ``(u, k)``.

    Raises :class:`PoleError` when ``sn`` (for cs) or ``cn`` (for tn) vanishes
    to working precision; use :func:`jacobi_cs` and friends for one quotient.
    """
    return jacobi_cs(u, k), jacobi_nd(u, k), jacobi_tn(u, k)


def inverse_cn(y, k):
    """Inverse of ``cn`` on ``[0, 2K]``: ``cn^-1(y, k) = F(arccos y, k)``."""
    if abs(y) > 1:
        raise EllipticDomainError(f"cn^-1 needs |y| <= 1, got {y!r}")
    lib = _lib(y)
    return elliptic_F(lib.acos(y), k)
