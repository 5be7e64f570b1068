import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from engel_slr.core import CausalClass, CausalKind, EngelPoint, Orientation, classify_vector, horizontality_residual
from engel_slr.geodesics import timelike_hyperbolic
from engel_slr.hamiltonian import Covector
from engel_slr.reachability import (
    TAYLOR_SWITCH,
    CurveFamily,
    DegenerateFamilyError,
    FamilyTag,
    family_causal_class,
    family_curve,
    family_velocity,
    ratio_profile,
    reachable_ratio,
)

coord = st.floats(-3, 3)


def test_family_values():
    fam = CurveFamily(FamilyTag.EXAMPLE2B, iota=2.0, y_0=0.4)
    assert tuple(family_curve(fam, 1.0)) == pytest.approx((2, 1, 0.4, 5 / 6))
    a = CurveFamily(FamilyTag.EXAMPLE2A, x1_0=1.0)
    assert tuple(family_curve(a, 2.0)) == pytest.approx((1, 2, 1, 8 / 6 + 1))
    e1 = CurveFamily(FamilyTag.EXAMPLE1, x1_0=1.0, x2_0=2.0, y_0=0.5, z_0=-1.0)
    assert family_curve(e1, 1.0) == EngelPoint(1, 2, 0.5, -1)
    assert tuple(family_curve(e1, 3.0)) == (3, 2, -1.5, -1)


def test_family_classes():
    assert family_causal_class(CurveFamily(FamilyTag.EXAMPLE1)) == CausalClass(CausalKind.TIMELIKE, Orientation.FUTURE)
    assert family_causal_class(CurveFamily(FamilyTag.EXAMPLE2A)).kind is CausalKind.SPACELIKE
    assert family_causal_class(CurveFamily(FamilyTag.EXAMPLE2B, iota=1.0)).kind is CausalKind.NULL
    assert family_causal_class(CurveFamily(FamilyTag.EXAMPLE2B, iota=-2.0)) == CausalClass(CausalKind.TIMELIKE, Orientation.PAST)
    assert family_causal_class(CurveFamily(FamilyTag.EXAMPLE2B, iota=0.5)).kind is CausalKind.SPACELIKE


def test_frozen_z_family_is_degenerate():
    fam = CurveFamily(FamilyTag.EXAMPLE2C)
    with pytest.raises(DegenerateFamilyError):
        family_curve(fam, 1.0)
    with pytest.raises(DegenerateFamilyError):
        family_causal_class(fam)


def test_example2b_constructor():
    fam = CurveFamily.example2b_through(2.0, 1.0, 0.3, 1.0)
    assert fam.iota == 2.0
    assert tuple(family_curve(fam, 1.0)) == pytest.approx((2, 1, 0.3, 1.0))
    with pytest.raises(ValueError):
        CurveFamily.example2b_through(1.0, 0.0)
    with pytest.raises(ValueError):
        CurveFamily(FamilyTag.EXAMPLE2B, 1.0, 1.0, iota=2.0)


@given(st.sampled_from([FamilyTag.EXAMPLE1, FamilyTag.EXAMPLE2A, FamilyTag.EXAMPLE2B]), coord, coord, coord, coord, coord, coord)
def test_families_are_horizontal(tag, x1, x2, y, z, iota, t):
    fam = CurveFamily(tag, iota * x2 if tag is FamilyTag.EXAMPLE2B else x1, x2, y, z, iota)
    h = 1e-6
    # complex step: exact derivative of a polynomial curve
    p = family_curve(fam, t)
    d = np.array(
        [(b - a) / (2 * h) for a, b in zip(family_curve(fam, t - h), family_curve(fam, t + h))]
    )
    r = horizontality_residual(p, d)
    assert max(map(abs, r)) < 1e-6 * max(1, np.max(np.abs(d)) * 10)
    v = family_velocity(fam, t)
    assert np.allclose(v.coordinates(), d, atol=1e-6 * max(1, np.max(np.abs(d))))
    assert classify_vector(v) == family_causal_class(fam)


def test_reachable_ratio():
    assert reachable_ratio(EngelPoint(2, 1, 0.75, 0)) == -1.0
    with pytest.raises(ZeroDivisionError):
        reachable_ratio(EngelPoint(1, 1, 1, 0))


def test_ratio_profile_values():
    assert ratio_profile(0.0) == 0.0
    assert ratio_profile(30.0) == pytest.approx(-1.0, abs=1e-12)
    assert ratio_profile(-30.0) == pytest.approx(1.0, abs=1e-12)
    assert ratio_profile(1e-6) == pytest.approx(-2e-6 / 3, rel=1e-10)


@pytest.mark.parametrize("tau", [1e-8, 5e-5, TAYLOR_SWITCH * 0.999, TAYLOR_SWITCH * 1.001, 1e-3, 0.3, 1.0, 4.0, 20.0, 500.0])
def test_ratio_profile_against_mpmath(tau):
    assert ratio_profile(tau) == pytest.approx(oracles.ratio_profile_mp(tau), rel=1e-13, abs=1e-300)
    assert ratio_profile(-tau) == -ratio_profile(tau)


def test_ratio_profile_monotone_and_bounded():
    tau = np.arange(-10_000, 10_001) * 1e-3
    prof = ratio_profile(tau)
    assert np.all(np.diff(prof) < 0)
    assert np.all(np.abs(prof) < 1)
    assert np.array_equal(prof, -ratio_profile(-tau))


def test_hyperbolic_endpoints_obey_the_profile():
    rng = np.random.default_rng(8)
    for xi in oracles.random_timelike(rng, 40, "hyperbolic"):
        s = float(rng.uniform(0.05, 3.0))
        ratio = reachable_ratio(timelike_hyperbolic(Covector(*xi), s))
        assert abs(ratio) < 1
        assert ratio == pytest.approx(ratio_profile(xi[2] * s / 2), abs=1e-9)
