import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import ellipe, ellipeinc, ellipk, ellipkinc

from engel_slr.special import (
    EllipticDomainError,
    EllipticModulus,
    PoleError,
    complete_E,
    complete_K,
    elliptic_E_amplitude,
    elliptic_E_incomplete,
    elliptic_F,
    inverse_cn,
    jacobi_amplitude,
    jacobi_cs,
    jacobi_nd,
    jacobi_quotients,
    jacobi_tn,
    jacobi_scd,
    jacobi_scd_epsilon,
)
from oracles import scipy_jacobi

moduli = st.floats(0.0, 0.999999)
args = st.floats(-30.0, 30.0)


def test_F_trivial_values():
    assert elliptic_F(0.7, 0.0) == 0.7
    assert elliptic_F(math.pi / 2, 0.6) == pytest.approx(complete_K(0.6), abs=1e-15)
    assert complete_K(0.0) == pytest.approx(math.pi / 2, abs=0)


def test_F_against_quadrature():
    k = 0.8
    ref, _ = quad(lambda t: 1 / math.sqrt(1 - k * k * math.sin(t) ** 2), 0, 1.0, epsabs=1e-13, epsrel=1e-13)
    assert abs(elliptic_F(1.0, k) - ref) < 1e-12


def test_epsilon_against_quadrature_of_dn2():
    k = 0.6
    ref, _ = quad(lambda t: jacobi_scd(t, k)[2] ** 2, 0, 1.3, epsabs=1e-13, epsrel=1e-13)
    assert abs(elliptic_E_incomplete(1.3, k) - ref) < 1e-12


def test_epsilon_degenerate_moduli():
    for u in (-2.0, 0.3, 4.1):
        assert elliptic_E_incomplete(u, 0.0) == pytest.approx(u, abs=1e-15)
        assert elliptic_E_incomplete(u, 1.0) == pytest.approx(math.tanh(u), abs=1e-15)


def test_scd_trivial_values():
    assert jacobi_scd(0.0, 0.7) == (0.0, 1.0, 1.0)
    u = 0.9
    assert jacobi_scd(u, 0.0) == pytest.approx((math.sin(u), math.cos(u), 1.0), abs=1e-15)
    sech = 1 / math.cosh(u)
    assert jacobi_scd(u, 1.0) == pytest.approx((math.tanh(u), sech, sech), abs=1e-15)


def test_quotient_values():
    k = 0.7
    assert abs(jacobi_cs(complete_K(k), k)) < 1e-15
    assert jacobi_nd(0.0, k) == 1.0
    assert jacobi_tn(0.5, 0.0) == pytest.approx(math.tan(0.5), abs=1e-15)
    assert jacobi_tn(0.5, 0.0) == pytest.approx(0.5463024898437905, abs=1e-15)
    sn, cn, dn = jacobi_scd(0.3, k)
    assert jacobi_quotients(0.3, k) == pytest.approx((cn / sn, 1 / dn, sn / cn), rel=1e-15)


def test_quotient_pole_errors():
    k = 0.5
    with pytest.raises(PoleError) as info:
        jacobi_quotients(0.0, k)
    assert info.value.function == "cs"
    assert info.value.pole == 0
    # cn vanishes at odd multiples of K
    with pytest.raises(PoleError) as info:
        jacobi_quotients(3 * complete_K(k), k)
    assert info.value.function == "tn"
    assert float(info.value.pole) == pytest.approx(3 * complete_K(k))


def test_quotient_pole_of_tn_at_K():
    k = 0.5
    with pytest.raises(PoleError):
        jacobi_quotients(complete_K(k), k)


def test_inverse_cn():
    k = 0.75
    assert inverse_cn(1.0, k) == 0.0
    assert inverse_cn(0.0, k) == pytest.approx(complete_K(k), abs=1e-15)
    for y in np.linspace(-1, 1, 41):
        u = inverse_cn(y, k)
        assert 0 <= u <= 2 * complete_K(k) + 1e-15
        assert abs(jacobi_scd(u, k)[1] - y) < 1e-10
    with pytest.raises(EllipticDomainError):
        inverse_cn(1.5, k)


def test_modulus_domain():
    with pytest.raises(EllipticDomainError):
        elliptic_F(0.3, 1.2)
    with pytest.raises(EllipticDomainError):
        EllipticModulus.from_k2(-0.1)
    with pytest.raises(EllipticDomainError):
        EllipticModulus(0.5, 0.6)
    m = EllipticModulus.from_k2(0.25)
    assert (m.k, m.kp) == pytest.approx((0.5, math.sqrt(0.75)))


def test_complementary_modulus_kept_exact():
    # k'^2 = 1e-20 cannot be written as 1 - k^2 in doubles
    m = EllipticModulus(1.0, 1e-20)
    assert complete_K(m) == pytest.approx(math.log(4 / 1e-10), rel=1e-15)
    assert complete_E(m) == pytest.approx(1.0, rel=1e-15)
    assert complete_K(EllipticModulus(1.0, 0.0)) == math.inf


def test_K_asymptotics_join_the_agm():
    # just above and below the switch to the logarithmic form
    for kp2 in (2e-12, 5e-13):
        with mpmath.workdps(40):
            ref_K = mpmath.ellipk(1 - mpmath.mpf(kp2))
            ref_E = mpmath.ellipe(1 - mpmath.mpf(kp2))
        m = EllipticModulus(1 - kp2, kp2)
        assert complete_K(m) == pytest.approx(float(ref_K), rel=1e-13)
        assert complete_E(m) == pytest.approx(float(ref_E), rel=1e-13)


def test_complete_integrals_against_scipy():
    for m in np.linspace(0, 0.999, 37):
        k = math.sqrt(m)
        assert complete_K(k) == pytest.approx(ellipk(m), rel=1e-14)
        assert complete_E(k) == pytest.approx(ellipe(m), rel=1e-14)


@given(phi=args, m=moduli)
def test_incomplete_integrals_against_scipy(phi, m):
    # pass k^2 itself: rounding sqrt(m)^2 near 1 moves F by ~1e-12
    k = EllipticModulus.from_k2(m)
    assert elliptic_F(phi, k) == pytest.approx(ellipkinc(phi, m), rel=1e-12, abs=1e-13)
    assert elliptic_E_amplitude(phi, k) == pytest.approx(ellipeinc(phi, m), rel=1e-12, abs=1e-13)


@given(u=args, m=moduli)
def test_jacobi_against_scipy(u, m):
    k = EllipticModulus.from_k2(m)
    ref = scipy_jacobi(u, m)
    got = jacobi_scd_epsilon(u, k)
    assert np.allclose(got[:3], ref[:3], rtol=0, atol=1e-12)
    assert got[3] == pytest.approx(ref[3], rel=1e-12, abs=1e-12)
    assert got[:3] == pytest.approx(jacobi_scd(u, k), abs=1e-15)
    assert got[3] == pytest.approx(elliptic_E_incomplete(u, k), abs=1e-13)


@given(u=args, m=moduli)
def test_pythagorean_identities(u, m):
    k = math.sqrt(m)
    sn, cn, dn = jacobi_scd(u, k)
    assert abs(sn * sn + cn * cn - 1) < 1e-12
    assert abs(dn * dn + m * sn * sn - 1) < 1e-12


@given(u=st.floats(-10, 10), m=moduli)
def test_periodicity(u, m):
    k = math.sqrt(m)
    K = complete_K(k)
    sn, cn, dn = jacobi_scd(u, k)
    sn4, cn4, _ = jacobi_scd(u + 4 * K, k)
    assert abs(sn4 - sn) < 1e-10 and abs(cn4 - cn) < 1e-10
    assert abs(jacobi_scd(u + 2 * K, k)[2] - dn) < 1e-10


@given(phi=args, m=moduli)
def test_oddness(phi, m):
    k = math.sqrt(m)
    assert elliptic_F(-phi, k) == -elliptic_F(phi, k)
    assert elliptic_E_incomplete(-phi, k) == pytest.approx(-elliptic_E_incomplete(phi, k), abs=1e-15)


@given(phi=st.floats(-6, 6), m=moduli)
def test_amplitude_inverts_F(phi, m):
    k = math.sqrt(m)
    assert jacobi_amplitude(elliptic_F(phi, k), k) == pytest.approx(phi, abs=1e-11)


@settings(max_examples=40)
@given(u=st.floats(-5, 5), m=st.floats(0.01, 0.99))
def test_derivatives_by_central_differences(u, m):
    k = math.sqrt(m)
    h = 1e-5
    sn, cn, dn = jacobi_scd(u, k)
    fwd, bwd = np.array(jacobi_scd(u + h, k)), np.array(jacobi_scd(u - h, k))
    fd = (fwd - bwd) / (2 * h)
    exact = np.array([cn * dn, -sn * dn, -m * sn * cn])
    assert np.all(np.abs(fd - exact) <= 1e-6 * np.maximum(np.abs(exact), 1e-2))


def test_mpmath_backend_matches_mpmath_reference():
    with mpmath.workdps(40):
        u, m = mpmath.mpf("0.8"), mpmath.mpf("0.3")
        sn, cn, dn = jacobi_scd(u, mpmath.sqrt(m))
        assert isinstance(sn, mpmath.mpf)
        assert abs(sn - mpmath.ellipfun("sn", u, m=m)) < mpmath.mpf(10) ** -35
        assert abs(dn - mpmath.ellipfun("dn", u, m=m)) < mpmath.mpf(10) ** -35
        assert abs(elliptic_F(u, mpmath.sqrt(m)) - mpmath.ellipf(u, m)) < mpmath.mpf(10) ** -35
        eps = elliptic_E_incomplete(u, mpmath.sqrt(m))
        assert abs(eps - mpmath.ellipe(mpmath.asin(sn), m)) < mpmath.mpf(10) ** -35


def test_near_unit_modulus_switches_smoothly():
    u = 1.7
    just_below = jacobi_scd(u, EllipticModulus(1 - 1e-11, 1e-11))
    hyperbolic = jacobi_scd(u, 1.0)
    assert np.allclose(just_below, hyperbolic, atol=1e-10)
