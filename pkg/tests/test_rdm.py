import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xxz_ssb.correlations import SpinCorrelators, correlators_at
from xxz_ssb.errors import DomainError, PhysicalityError
from xxz_ssb.rdm import build_one_site, build_two_spin


def test_polarised_product_state():
    rho = build_two_spin(SpinCorrelators.uniform(1, 0.0, 1.0, 1.0))
    np.testing.assert_allclose(rho.entries, np.diag([1, 0, 0, 0]), atol=1e-15)


def test_cat_state_mixture():
    rho = build_two_spin(SpinCorrelators.uniform(1, 0.0, 1.0, 0.0))
    np.testing.assert_allclose(rho.entries, np.diag([0.5, 0, 0, 0.5]), atol=1e-15)


def test_xx_point_spectrum():
    txx, tzz = -0.6366, -0.4053
    lam = np.sort(build_two_spin(SpinCorrelators.uniform(1, txx, tzz)).eigenvalues)
    # closed-form X-state spectrum: (1+tzz)/4 twice, (1-tzz)/4 +- txx/2
    expected = np.sort([(1 + tzz) / 4, (1 + tzz) / 4, (1 - tzz) / 4 + txx / 2, (1 - tzz) / 4 - txx / 2])
    np.testing.assert_allclose(lam, expected, atol=1e-14)
    np.testing.assert_allclose(lam, np.sort([0.1487, 0.1487, 0.0350, 0.6683]), atol=2e-3)


def test_matches_xxz_layout():
    txx, tzz = -0.3, 0.2
    rho = build_two_spin(SpinCorrelators.uniform(1, txx, tzz)).entries
    expected = 0.25 * np.array([
        [1 + tzz, 0, 0, 0],
        [0, 1 - tzz, 2 * txx, 0],
        [0, 2 * txx, 1 - tzz, 0],
        [0, 0, 0, 1 + tzz],
    ])
    np.testing.assert_allclose(rho, expected, atol=1e-15)


def test_magnetised_diagonal():
    txx, tzz, m = -0.1, 0.2, 0.3
    rho = build_two_spin(SpinCorrelators.uniform(1, txx, tzz, m)).entries
    np.testing.assert_allclose(np.diag(rho).real, [(1 + tzz + 2 * m) / 4, (1 - tzz) / 4, (1 - tzz) / 4, (1 + tzz - 2 * m) / 4])
    assert rho[1, 2] == pytest.approx(txx / 2)


def test_unphysical_rejected():
    with pytest.raises(PhysicalityError):
        build_two_spin(SpinCorrelators.uniform(1, -1.0, 1.0))


@pytest.mark.parametrize("m,x", [(0.0, 0.5), (1.0, 1.0), (0.5, 0.75)])
def test_one_site(m, x):
    rho = build_one_site(m)
    assert rho.x == x
    assert sum(rho.eigenvalues) == 1.0


def test_one_site_domain():
    with pytest.raises(DomainError):
        build_one_site(1.01)


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-3.0, max_value=0.99), st.booleans())
def test_model_states_are_physical(d, ssb):
    if abs(d + 1.0) < 1e-9:
        d = -1.0 - 1e-6
    rho = build_two_spin(correlators_at(d, 1, ssb))
    assert np.allclose(rho.entries, rho.entries.conj().T, atol=0)
    assert np.trace(rho.entries).real == pytest.approx(1.0, abs=1e-12)
    assert rho.eigenvalues.min() >= -1e-9


@given(
    st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1),
)
def test_partial_trace_is_one_site(txx, tzz, m):
    c = SpinCorrelators.uniform(1, txx, tzz, m)
    rho = build_two_spin(c, check=False)
    for keep in (0, 1):
        np.testing.assert_allclose(rho.partial_trace(keep), build_one_site(m).entries, atol=1e-14)
