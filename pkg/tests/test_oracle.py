import math

import numpy as np
import pytest

from xxz_ssb.entanglement import wootters_concurrence
from xxz_ssb.errors import DegeneracyError, DomainError, FitError, ResourceError
from xxz_ssb.oracle import (
    Boundary,
    FiniteChainSpec,
    diagonalize,
    extrapolate,
    extrapolated_energy_per_site,
    full_space_energy,
    measure,
    select_state,
    two_site_rdm,
)

from conftest import dense_xxz, free_fermion_tzz


def test_two_site_singlet():
    sol = diagonalize(FiniteChainSpec(2, 1.0, Boundary.OPEN))
    assert sol.energy == pytest.approx(-3.0, abs=1e-12)
    assert sol.degeneracy == 1
    rho = two_site_rdm(sol.state, 2, 0, 1)
    assert wootters_concurrence(rho) == pytest.approx(1.0, abs=1e-10)


def test_ferro_ground_space():
    sol = diagonalize(FiniteChainSpec(8, -2.0))
    assert sol.energy_per_site == pytest.approx(-2.0, abs=1e-12)
    assert sol.degeneracy == 2
    assert sorted(sol.sectors) == [-8, 8]
    # product states are minimal in the full spectrum
    full = np.linalg.eigvalsh(dense_xxz(8, -2.0, periodic=True))
    assert full[0] == pytest.approx(sol.energy, abs=1e-10)
    assert full[2] > full[0] + 1e-3


def test_ferro_measurements():
    sol = diagonalize(FiniteChainSpec(8, -2.0))
    sym, brk = measure(sol, 1, symmetrize=True), measure(sol, 1, symmetrize=False)
    assert (sym.m, sym.tzz) == pytest.approx((0.0, 1.0), abs=1e-12)
    assert (brk.m, brk.tzz) == pytest.approx((1.0, 1.0), abs=1e-12)
    for symmetrize in (True, False):
        rho = two_site_rdm(select_state(sol, symmetrize), 8, 0, 1)
        assert wootters_concurrence(rho) == pytest.approx(0.0, abs=1e-10)


def test_xx_small_ring():
    sol = diagonalize(FiniteChainSpec(4, 0.0))
    assert abs(sol.energy_per_site + 4 / math.pi) < 0.15


@pytest.mark.parametrize("n", [3, 4, 6, 8])
@pytest.mark.parametrize("delta", [-0.7, 0.0, 0.6])
@pytest.mark.parametrize("boundary", list(Boundary))
def test_sector_minimum_is_full_minimum(n, delta, boundary):
    sol = diagonalize(FiniteChainSpec(n, delta, boundary))
    full = np.linalg.eigvalsh(dense_xxz(n, delta, periodic=boundary is Boundary.PERIODIC))
    assert sol.energy == pytest.approx(full[0], abs=1e-10)
    assert full_space_energy(sol.spec, sol.state).real == pytest.approx(sol.energy, abs=1e-10)


def test_sector_restriction():
    sol = diagonalize(FiniteChainSpec(6, 0.3, sector=2))
    assert sol.sectors == (2,)
    full = np.linalg.eigvalsh(dense_xxz(6, 0.3, periodic=True))
    assert sol.energy >= full[0] - 1e-12


def test_sparse_path_matches_dense():
    # n = 14 goes through ARPACK
    sol = diagonalize(FiniteChainSpec(14, 0.2), seed=5)
    again = diagonalize(FiniteChainSpec(14, 0.2), seed=11)
    assert sol.energy == pytest.approx(again.energy, abs=1e-9)
    assert sol.residual < 1e-10


@pytest.mark.parametrize("r", [1, 2, 3])
def test_u1_and_translation_invariance(r):
    from xxz_ssb.oracle import site_correlators

    sol = diagonalize(FiniteChainSpec(10, 0.4, sector=0))
    c = site_correlators(sol.state, 10, r)
    np.testing.assert_allclose(c["xx"], c["yy"], atol=1e-10)
    for key in ("xx", "zz"):
        assert np.ptp(c[key]) < 1e-8


def test_xx_ring_correlator():
    sol = diagonalize(FiniteChainSpec(12, 0.0, sector=0))
    assert measure(sol, 1).tzz == pytest.approx(free_fermion_tzz(1), abs=0.02)


def test_extrapolated_energy():
    assert extrapolated_energy_per_site(0.0) / 4 == pytest.approx(-1 / math.pi, abs=5e-3)


def test_extrapolate_examples():
    assert extrapolate([(8, 0.3), (12, 0.3), (16, 0.3)]) == pytest.approx(0.3, abs=1e-14)
    a, b = -0.7, 2.5
    assert extrapolate([(n, a + b / n**2) for n in (8, 10, 12, 14)]) == pytest.approx(a, abs=1e-10)


def test_extrapolate_rejects_bad_fit():
    with pytest.raises(FitError):
        extrapolate([(8, 0.0), (10, 1.0), (12, 0.0), (14, 1.0)])
    with pytest.raises(DomainError):
        extrapolate([(8, 0.0), (10, 1.0)])


def test_resource_and_domain_errors():
    with pytest.raises(ResourceError):
        FiniteChainSpec(18, 0.0)
    with pytest.raises(DomainError):
        FiniteChainSpec(2, 0.0, Boundary.PERIODIC)
    with pytest.raises(DomainError):
        FiniteChainSpec(6, 0.0, sector=1)


def test_isotropic_ferro_multiplet():
    sol = diagonalize(FiniteChainSpec(6, -1.0))
    assert sol.degeneracy == 7
    with pytest.raises(DegeneracyError):
        measure(sol, 1)


def test_separation_bounds():
    sol = diagonalize(FiniteChainSpec(4, 0.0))
    with pytest.raises(DomainError):
        measure(sol, 4)
