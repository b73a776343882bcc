import math

import numpy as np
import pytest

SX = np.array([[0.0, 1.0], [1.0, 0.0]])
SY = np.array([[0.0, -1j], [1j, 0.0]])
SZ = np.diag([1.0, -1.0])


def site_op(op, i, n):
    out = np.array([[1.0]])
    for k in range(n):
        out = np.kron(out, op if k == i else np.eye(2))
    return out


def dense_xxz(n, delta, periodic=True):
    """Full 2^n Hamiltonian built from Kronecker products (independent of the package)."""
    bonds = [(i, (i + 1) % n) for i in range(n)] if periodic else [(i, i + 1) for i in range(n - 1)]
    h = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for i, j in bonds:
        for op, coup in ((SX, 1.0), (SY, 1.0), (SZ, delta)):
            h += coup * site_op(op, i, n) @ site_op(op, j, n)
    return h


def free_fermion_txx(r):
    """<sx_0 sx_r> of the XX ring at half filling, Toeplitz-determinant form."""
    def g(m):
        return 0.0 if m == 0 else 2.0 / (math.pi * m) * math.sin(math.pi * m / 2.0)

    mat = np.array([[g(j - i + 1) for j in range(r)] for i in range(r)])
    return (-1) ** r * np.linalg.det(mat)


def free_fermion_tzz(r):
    return 0.0 if r % 2 == 0 else -(2.0 / (math.pi * r)) ** 2


def free_fermion_e0(n_modes=200_000):
    """Energy per site / 4 of the XX chain from a filled Fermi sea (midpoint sum)."""
    k = (np.arange(n_modes) + 0.5) * 2 * math.pi / n_modes - math.pi
    eps = 4.0 * np.cos(k)
    return float(np.minimum(eps, 0.0).mean()) / 4.0


@pytest.fixture(scope="session")
def xx_point():
    return {"txx": -2.0 / math.pi, "tzz": -4.0 / math.pi ** 2, "e0": -1.0 / math.pi}
