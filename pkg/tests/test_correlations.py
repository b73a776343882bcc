import math

import numpy as np
import pytest

from xxz_ssb.correlations import (
    Method,
    SpinCorrelators,
    correlators_at,
    correlators_limit,
    xx_nn,
    xx_nn_limit,
    zz_nn,
    zz_nn_limit,
)
from xxz_ssb.errors import DerivativeError, DomainError, UnsupportedSeparation
from xxz_ssb.oracle import extrapolated_correlators

from conftest import free_fermion_txx, free_fermion_tzz

HEISENBERG_NN = (1 - 4 * math.log(2)) / 3


def test_zz_ferro():
    assert zz_nn(-2.0) == 1.0


@pytest.mark.parametrize("method", list(Method))
def test_zz_xx_point(method, xx_point):
    assert zz_nn(0.0, method) == pytest.approx(xx_point["tzz"], abs=1e-8)


def test_zz_heisenberg_limit():
    assert zz_nn(1.0) == pytest.approx(HEISENBERG_NN, abs=1e-6)


def test_xx_values(xx_point):
    assert xx_nn(-1.5) == 0.0
    assert xx_nn(0.0) == pytest.approx(xx_point["txx"], abs=1e-10)
    # SU(2) symmetry at the isotropic point
    assert xx_nn(1.0) == pytest.approx(zz_nn(1.0), abs=1e-4)
    assert xx_nn(1.0) == pytest.approx(HEISENBERG_NN, abs=1e-4)


def test_heisenberg_against_ed():
    ed = extrapolated_correlators(1.0, rs=(1,))[1]
    # logarithmic finite-size corrections at the isotropic point
    assert ed.tzz == pytest.approx(HEISENBERG_NN, abs=1e-2)
    assert ed.txx == pytest.approx(HEISENBERG_NN, abs=1e-2)


def test_method_agreement_on_grid():
    for d in np.linspace(-0.99, 0.99, 100):
        a = zz_nn(d, Method.ANALYTIC)
        f = zz_nn(d, Method.FINITE_DIFF)
        assert abs(a - f) < 1e-6, d


def test_both_methods_checked():
    assert zz_nn(0.3, "both") == pytest.approx(zz_nn(0.3), abs=1e-12)


def test_derivative_error_raised(monkeypatch):
    import xxz_ssb.correlations as corr

    monkeypatch.setattr(corr, "_fd_slope", lambda d: 0.0)
    with pytest.raises(DerivativeError):
        zz_nn(0.3, Method.BOTH)


def test_finite_difference_unavailable_at_endpoint():
    with pytest.raises(DomainError):
        zz_nn(1.0, Method.FINITE_DIFF)


def test_transition_is_double_valued():
    for f in (zz_nn, xx_nn):
        with pytest.raises(DomainError):
            f(-1.0)
    with pytest.raises(DomainError):
        correlators_at(-1.0)


def test_zz_jump_at_transition():
    assert zz_nn_limit("left") == 1.0
    right = zz_nn_limit("right")
    assert abs(right - 1.0) > 0.5
    assert right == pytest.approx(0.0, abs=1e-3)
    assert xx_nn_limit("left") == 0.0
    assert xx_nn_limit("right") == pytest.approx(-0.5, abs=1e-3)


@pytest.mark.parametrize("d", [-3.0, -2.0, -1.2])
@pytest.mark.parametrize("ssb", [False, True])
def test_ferro_independent_of_r(d, ssb):
    vals = {correlators_at(d, r, ssb) for r in (1, 2, 3)}
    assert {(c.txx, c.tzz, c.m) for c in vals} == {(0.0, 1.0, 1.0 if ssb else 0.0)}


def test_broken_branch_sign():
    assert correlators_at(-2.0, 3, ssb=True).m == 1.0
    assert correlators_at(-2.0, 3, ssb=True, branch=-1).m == -1.0
    assert correlators_at(-2.0, 3, ssb=False).m == 0.0


def test_critical_has_no_magnetization():
    assert correlators_at(-0.5, 1, ssb=True).m == 0.0


def test_correlators_at_xx_point(xx_point):
    c = correlators_at(0.0, 1)
    assert (c.txx, c.tzz, c.m) == pytest.approx((xx_point["txx"], xx_point["tzz"], 0.0), abs=1e-10)
    assert not c.approximate


def test_unsupported_separation():
    for r in (0, 4):
        with pytest.raises(UnsupportedSeparation):
            correlators_at(0.0, r)


@pytest.mark.parametrize("d", [-0.5, 0.0, 0.5])
def test_bethe_nn_matches_ed(d):
    ed = extrapolated_correlators(d)[1]
    assert zz_nn(d) == pytest.approx(ed.tzz, abs=1e-2)
    assert xx_nn(d) == pytest.approx(ed.txx, abs=1e-2)


def test_longer_range_from_ed_is_flagged():
    c = correlators_at(0.5, 2)
    assert c.approximate and c.r == 2


def test_longer_range_size_sequences_agree():
    # two independent size sequences extrapolate to the same limit
    a = extrapolated_correlators(0.5, sizes=(8, 12, 16))
    b = extrapolated_correlators(0.5, sizes=(8, 10, 12, 14))
    for r in (2, 3):
        assert a[r].tzz == pytest.approx(b[r].tzz, abs=0.02)
        assert a[r].txx == pytest.approx(b[r].txx, abs=0.02)


@pytest.mark.parametrize("r", [2, 3])
def test_longer_range_against_free_fermions(r):
    c = correlators_at(0.0, r)
    assert c.txx == pytest.approx(free_fermion_txx(r), abs=1e-2)
    assert c.tzz == pytest.approx(free_fermion_tzz(r), abs=1e-2)


def test_limits_by_side():
    assert correlators_limit("left", 1, ssb=True).m == 1.0
    assert correlators_limit("right", 1).tzz == pytest.approx(0.0, abs=1e-3)


def test_spin_correlators_validation():
    with pytest.raises(DomainError):
        SpinCorrelators(r=1, txx=0.1, tyy=0.3, tzz=0.0)
    with pytest.raises(DomainError):
        SpinCorrelators.uniform(1, 0.0, 1.5)


def test_pre_max_concurrence_can_be_negative_in_gapless_phase():
    from xxz_ssb.entanglement import concurrence_ssb

    # free fermions: |txx_2| - (1 - tzz_2)/2 = 0.405 - 0.5
    exact = abs(free_fermion_txx(2)) - 0.5
    c_tilde, c = concurrence_ssb(correlators_at(0.0, 2, ssb=True))
    assert exact < -0.09
    assert c_tilde == pytest.approx(exact, abs=1e-2)
    assert c == 0.0
    # nearest neighbours stay non-negative
    assert concurrence_ssb(correlators_at(-0.999, 1, ssb=True))[0] > 0
