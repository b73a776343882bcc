"""Thermodynamic-limit ground-state energy of the spin-1/2 XXZ chain.

Conventions: ``H = sum_i (sx sx + sy sy + delta sz sz)`` with Pauli
matrices, and ``e0`` is the energy per site divided by four, so that
``<sz_i sz_{i+1}> = 4 de0/d(delta)``.

In the gapless phase the Bethe-ansatz energy is

    e0 = delta/4 + sin(pi nu)/(2 pi) * int_C dx coth(nu x) / sinh(x)

with ``delta = cos(pi nu)`` and ``C`` the horizontal line ``Im x = 1/2``.
The line integral is done on the real parameter ``t`` (``x = t + i/2``)
with the adaptive Gauss-Kronrod rule in :mod:`xxz_ssb.quadrature`.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, QuadratureError
from .quadrature import integrate

log = logging.getLogger(__name__)

DELTA_MIN = -3.0
DELTA_MAX = 1.0

CONTOUR_SHIFT = 0.5
#: truncation of the contour parameter; tail bounded by 2 exp(-T)
TRUNCATION = 40.0
QUAD_TOL = 1e-12
MAX_QUAD_ERROR = 1e-10
MAX_IMAG_RESIDUE = 1e-10
#: nu used in place of the delta -> 1 limit
NU_LIMIT = 1e-6

# below this |nu x| the series for coth(y) - y/sinh(y)**2 is used
_SERIES_CUTOFF = 1e-3


class Branch(str, enum.Enum):
    FERROMAGNETIC = "ferromagnetic"
    CRITICAL = "critical"


@dataclass(frozen=True)
class BetheParams:
    nu: float

    @property
    def delta(self) -> float:
        return math.cos(math.pi * self.nu)


@dataclass(frozen=True)
class EnergyDensity:
    """Ground-state energy per site divided by 4.

    ``imag_residue`` is the imaginary part of the (scaled) contour integral
    that was discarded; ``quad_error`` is the quadrature error estimate in
    the units of ``e0``.
    """

    e0: float
    branch: Branch
    quad_error: float = 0.0
    imag_residue: float = 0.0
    nu: float | None = None


def check_delta(delta: float) -> float:
    delta = float(delta)
    if not math.isfinite(delta) or not DELTA_MIN <= delta <= DELTA_MAX:
        raise DomainError(f"delta={delta!r} outside supported range [{DELTA_MIN}, {DELTA_MAX}]")
    return delta


def nu_of_delta(delta: float) -> BetheParams:
    """Invert ``delta = cos(pi nu)`` on the principal branch, ``0 < nu < 1``."""
    delta = float(delta)
    if not -1.0 < delta < 1.0:
        raise DomainError(f"delta={delta!r}: nu is defined only for -1 < delta < 1")
    return BetheParams(math.acos(delta) / math.pi)


def _nu_for(delta: float) -> float:
    # delta == 1 is only reachable as a limit
    if delta == DELTA_MAX:
        return NU_LIMIT
    return nu_of_delta(delta).nu


def _contour(t: np.ndarray) -> np.ndarray:
    return t + 1j * CONTOUR_SHIFT


def _energy_integrand(nu: float):
    pref = math.sin(math.pi * nu) / (2.0 * math.pi)

    def f(t):
        x = _contour(t)
        return pref / (np.sinh(x) * np.tanh(nu * x))

    return f


def _coth_minus_y_csch2(y: np.ndarray) -> np.ndarray:
    """``coth(y) - y / sinh(y)**2`` without cancellation at small ``|y|``."""
    y = np.asarray(y, dtype=complex)
    out = np.empty_like(y)
    small = np.abs(y) < _SERIES_CUTOFF
    ys = y[small]
    y2 = ys * ys
    out[small] = ys * (2.0 / 3.0 + y2 * (-4.0 / 45.0 + y2 * (4.0 / 315.0)))
    yl = y[~small]
    sh = np.sinh(yl)
    out[~small] = np.cosh(yl) / sh - yl / (sh * sh)
    return out


def _cos_minus_sinc(nu: float) -> float:
    """``pi cos(pi nu) - sin(pi nu)/nu``, accurate for small ``nu``."""
    a = math.pi * nu
    if a < 1e-3:
        a2 = a * a
        return math.pi * a2 * (-1.0 / 3.0 + a2 / 30.0)
    return math.pi * math.cos(a) - math.sin(a) / nu


def _slope_integrand(nu: float):
    """Integrand of d/dnu of the scaled contour integral (times 2 pi)."""
    c = math.pi * math.cos(math.pi * nu)
    d = _cos_minus_sinc(nu)

    def f(t):
        x = _contour(t)
        y = nu * x
        sh = np.sinh(y)
        # pi cos(pi nu) coth(y) - sin(pi nu) x / sinh(y)^2, regrouped
        return (c * _coth_minus_y_csch2(y) + d * y / (sh * sh)) / np.sinh(x)

    return f


def _contour_integral(f, tol: float) -> tuple[float, float, float]:
    res = integrate(f, -TRUNCATION, TRUNCATION, abstol=tol)
    cap = max(MAX_QUAD_ERROR, tol)
    if res.error > cap:
        raise QuadratureError(f"quadrature error {res.error:.3e} exceeds {cap:.0e}")
    if abs(res.value.imag) > MAX_IMAG_RESIDUE:
        raise QuadratureError(f"imaginary residue {res.value.imag:.3e} exceeds {MAX_IMAG_RESIDUE:.0e}")
    return res.value.real, res.error, res.value.imag


def ground_energy(delta: float, tol: float = QUAD_TOL) -> EnergyDensity:
    """Ground-state energy density ``e0(delta)`` for ``delta`` in ``[-3, 1]``.

    For ``delta <= -1`` the fully polarised state gives ``e0 = delta/4``.
    ``delta = 1`` is evaluated at ``nu = 1e-6``; the bias is far below the
    quadrature tolerance in practice.
    """
    delta = check_delta(delta)
    if delta <= -1.0:
        log.debug("ferromagnetic branch: e0=%r (printed-sign variant -delta/4=%r)", delta / 4, -delta / 4)
        return EnergyDensity(delta / 4.0, Branch.FERROMAGNETIC)
    nu = _nu_for(delta)
    value, err, imag = _contour_integral(_energy_integrand(nu), tol)
    return EnergyDensity(math.cos(math.pi * nu) / 4.0 + value, Branch.CRITICAL, err, imag, nu)


def energy_slope(delta: float, tol: float = QUAD_TOL) -> tuple[float, float]:
    """``de0/d(delta)`` by differentiating under the integral sign.

    Returns ``(slope, error_estimate)``.  Uses ``dnu/ddelta = -1/(pi sin(pi nu))``.
    """
    delta = check_delta(delta)
    if delta <= -1.0:
        return 0.25, 0.0
    nu = _nu_for(delta)
    value, err, _ = _contour_integral(_slope_integrand(nu), tol)
    dnu = -1.0 / (math.pi * math.sin(math.pi * nu))
    scale = abs(dnu) / (2.0 * math.pi)
    return 0.25 + dnu * value / (2.0 * math.pi), scale * err
