"""Reduced density matrices assembled from correlators.

Two-site basis order is ``|uu>, |ud>, |du>, |dd>`` (``u`` = spin up,
``sz = +1``), i.e. the ``kron`` ordering with ``|u> = (1, 0)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correlations import SpinCorrelators
from .errors import DomainError, PhysicalityError

POSITIVITY_TOL = 1e-9

IDENTITY = np.eye(2)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
SIGMA_Y = np.array([[0.0, -1j], [1j, 0.0]])
SIGMA_Z = np.diag([1.0, -1.0])


@dataclass(frozen=True)
class TwoSpinRDM:
    entries: np.ndarray

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    def partial_trace(self, keep: int) -> np.ndarray:
        """One-site matrix of site ``keep`` (0 or 1)."""
        t = self.entries.reshape(2, 2, 2, 2)
        return np.einsum("ijkj->ik", t) if keep == 0 else np.einsum("jijk->ik", t)


@dataclass(frozen=True)
class OneSiteRDM:
    m: float

    @property
    def x(self) -> float:
        return 0.5 * (1.0 + self.m)

    @property
    def eigenvalues(self) -> tuple[float, float]:
        return self.x, 1.0 - self.x

    @property
    def entries(self) -> np.ndarray:
        return np.diag([self.x, 1.0 - self.x])


def build_two_spin(c: SpinCorrelators, check: bool = True) -> TwoSpinRDM:
    """``rho = 1/4 [I + pz sz.I + qz I.sz + sum_u t_uu s_u.s_u]``.

    Raises :class:`PhysicalityError` if an eigenvalue falls below -1e-9.
    """
    rho = (
        np.kron(IDENTITY, IDENTITY)
        + c.pz * np.kron(SIGMA_Z, IDENTITY)
        + c.qz * np.kron(IDENTITY, SIGMA_Z)
        + c.txx * np.kron(SIGMA_X, SIGMA_X)
        + c.tyy * np.kron(SIGMA_Y, SIGMA_Y)
        + c.tzz * np.kron(SIGMA_Z, SIGMA_Z)
    ) / 4.0
    out = TwoSpinRDM(rho.astype(complex))
    if check:
        lam = out.eigenvalues.min()
        if lam < -POSITIVITY_TOL:
            raise PhysicalityError(f"two-spin density matrix has eigenvalue {lam:.3e} (correlators {c})")
    return out


def build_one_site(m: float) -> OneSiteRDM:
    if abs(m) > 1.0:
        raise DomainError(f"m={m} outside [-1, 1]")
    return OneSiteRDM(float(m))
