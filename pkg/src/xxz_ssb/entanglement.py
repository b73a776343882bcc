"""Two-site concurrence and one-site von Neumann entropy.

The closed forms hold for density matrices of the XXZ form (only
``sz``-magnetizations and diagonal correlators)::

    c_tilde     = (2|txx| - (1 + tzz)) / 2
    c_tilde_ssb = (2|txx| - sqrt((1 + tzz)^2 - (pz + qz)^2)) / 2

and the concurrence is ``max(0, .)`` of either.  The general Wootters
construction serves as an independent check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correlations import SpinCorrelators
from .errors import DomainError, NumericalError
from .rdm import SIGMA_Y, TwoSpinRDM, build_two_spin

RADICAND_TOL = 1e-12
_YY = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class ConcurrenceReport:
    r: int
    c_tilde: float
    c: float
    c_tilde_ssb: float
    c_ssb: float
    wootters: float


def concurrence_symmetric(c: SpinCorrelators) -> tuple[float, float]:
    """``(c_tilde, max(0, c_tilde))``; magnetizations are ignored."""
    c_tilde = 0.5 * (2.0 * abs(c.txx) - (1.0 + c.tzz))
    return c_tilde, max(0.0, c_tilde)


def concurrence_ssb(c: SpinCorrelators) -> tuple[float, float]:
    """``(c_tilde_ssb, max(0, c_tilde_ssb))`` including the magnetization term."""
    radicand = (1.0 + c.tzz) ** 2 - (c.pz + c.qz) ** 2
    if radicand < -RADICAND_TOL:
        raise DomainError(f"negative radicand {radicand:.3e}: (1+tzz)^2 < (pz+qz)^2")
    c_tilde = 0.5 * (2.0 * abs(c.txx) - math.sqrt(max(radicand, 0.0)))
    return c_tilde, max(0.0, c_tilde)


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(rho)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def wootters_concurrence(rho: TwoSpinRDM | np.ndarray) -> float:
    """Concurrence ``max(0, l1 - l2 - l3 - l4)`` of a two-qubit state.

    The ``l_i`` are the square roots of the eigenvalues of
    ``rho (sy sy) rho* (sy sy)``, obtained here as singular values of
    ``sqrt(rho) (sy sy) sqrt(rho)*`` to avoid square roots of rounding noise.
    """
    m = np.asarray(getattr(rho, "entries", rho), dtype=complex)
    spectrum = np.linalg.eigvals(m @ _YY @ m.conj() @ _YY)
    if spectrum.real.min() < -1e-9:
        raise NumericalError(f"rho rho~ has eigenvalue {spectrum.real.min():.3e}")
    root = _psd_sqrt(m)
    lam = np.linalg.svd(root @ _YY @ root.conj(), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_report(c: SpinCorrelators) -> ConcurrenceReport:
    c_tilde, conc = concurrence_symmetric(c)
    c_tilde_ssb, conc_ssb = concurrence_ssb(c)
    return ConcurrenceReport(c.r, c_tilde, conc, c_tilde_ssb, conc_ssb, wootters_concurrence(build_two_spin(c)))


def entropy_one_site(m: float, base: float = 2.0) -> float:
    """Von Neumann entropy of one site with magnetization ``m``.

    Bits by default; pass ``base=math.e`` for nats.
    """
    if abs(m) > 1.0:
        raise DomainError(f"m={m} outside [-1, 1]")
    s = 0.0
    for p in (0.5 * (1.0 + m), 0.5 * (1.0 - m)):
        if p > 0.0:
            s -= p * math.log(p)
    return s / math.log(base)
