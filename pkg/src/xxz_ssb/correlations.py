"""Spin correlators of the infinite chain.

Nearest-neighbour values follow from the ground-state energy through the
Hellmann-Feynman relations

    tzz = 4 de0/d(delta),    txx = tyy = (4 e0 - delta tzz) / 2.

In the ferromagnetic phase (``delta < -1``) the ground space is spanned by
the two fully polarised states, so ``txx = 0`` and ``tzz = 1`` at every
separation.  Separations 2 and 3 in the gapless phase come from
finite-size extrapolated exact diagonalization.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .bethe import NU_LIMIT, check_delta, energy_slope, ground_energy
from .errors import DerivativeError, DomainError, UnsupportedSeparation

TRANSITION = -1.0
#: offset used for one-sided evaluation at the transition
ONE_SIDED_EPS = 1e-6
FD_STEP = 1e-4
METHOD_AGREEMENT = 1e-6
MAX_SEPARATION = 3


class Method(str, enum.Enum):
    ANALYTIC = "analytic"
    FINITE_DIFF = "finite_diff"
    BOTH = "both"


class Side(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class SpinCorrelators:
    """Two-point functions ``<s^u_i s^u_{i+r}>`` and site magnetizations.

    ``pz`` and ``qz`` are ``<sz>`` on the first and second site.
    ``approximate`` marks values obtained by finite-size extrapolation.
    """

    r: int
    txx: float
    tyy: float
    tzz: float
    pz: float = 0.0
    qz: float = 0.0
    approximate: bool = False

    def __post_init__(self):
        if abs(self.txx - self.tyy) > 1e-8:
            raise DomainError(f"txx={self.txx} and tyy={self.tyy} differ; U(1) symmetry requires equality")
        for name in ("txx", "tzz", "pz", "qz"):
            if abs(getattr(self, name)) > 1.0 + 1e-9:
                raise DomainError(f"{name}={getattr(self, name)} outside [-1, 1]")

    @property
    def m(self) -> float:
        return 0.5 * (self.pz + self.qz)

    @classmethod
    def uniform(cls, r: int, txx: float, tzz: float, m: float = 0.0, approximate: bool = False):
        return cls(r=r, txx=txx, tyy=txx, tzz=tzz, pz=m, qz=m, approximate=approximate)


def _check_side_of_transition(delta: float) -> float:
    delta = check_delta(delta)
    if delta == TRANSITION:
        raise DomainError("delta=-1 is double-valued; use the one-sided *_limit functions")
    return delta


def _fd_slope(delta: float) -> float:
    # keep both stencils inside the open interval (-1, 1)
    h = min(FD_STEP, (1.0 - abs(delta)) / 4.0)

    def central(step):
        return (ground_energy(delta + step).e0 - ground_energy(delta - step).e0) / (2.0 * step)

    return (4.0 * central(h / 2.0) - central(h)) / 3.0


def zz_nn(delta: float, method: Method | str = Method.ANALYTIC) -> float:
    """Nearest-neighbour ``<sz sz>`` from ``4 de0/d(delta)``.

    ``method="both"`` evaluates the analytic and finite-difference routes
    and raises :class:`DerivativeError` if they differ by more than 1e-6.
    """
    delta = _check_side_of_transition(delta)
    method = Method(method)
    if delta < TRANSITION:
        return 1.0
    if method is not Method.ANALYTIC and delta == 1.0:
        raise DomainError("finite differences are not available at the delta=1 endpoint")
    analytic = fd = None
    if method in (Method.ANALYTIC, Method.BOTH):
        analytic = 4.0 * energy_slope(delta)[0]
    if method in (Method.FINITE_DIFF, Method.BOTH):
        fd = 4.0 * _fd_slope(delta)
    if method is Method.BOTH and abs(analytic - fd) > METHOD_AGREEMENT:
        raise DerivativeError(
            f"analytic ({analytic:.10f}) and finite-difference ({fd:.10f}) slopes disagree at delta={delta}"
        )
    return analytic if analytic is not None else fd


def xx_nn(delta: float) -> float:
    """Nearest-neighbour ``<sx sx> = <sy sy> = (4 e0 - delta tzz)/2``."""
    delta = _check_side_of_transition(delta)
    if delta < TRANSITION:
        return 0.0
    e0 = ground_energy(delta).e0
    # at delta = 1 the energy is evaluated at nu = NU_LIMIT; use the matching delta
    d_eff = math.cos(math.pi * NU_LIMIT) if delta == 1.0 else delta
    return 0.5 * (4.0 * e0 - d_eff * zz_nn(delta))


def limit_point(side: Side | str) -> float:
    side = Side(side)
    return TRANSITION - ONE_SIDED_EPS if side is Side.LEFT else TRANSITION + ONE_SIDED_EPS


def zz_nn_limit(side: Side | str) -> float:
    return zz_nn(limit_point(side))


def xx_nn_limit(side: Side | str) -> float:
    return xx_nn(limit_point(side))


def correlators_at(delta: float, r: int = 1, ssb: bool = False, branch: int = 1) -> SpinCorrelators:
    """Correlators at separation ``r`` in ``{1, 2, 3}``.

    With ``ssb`` in the ferromagnetic phase the state is the polarised one
    with ``m = branch`` (``+1`` by default); otherwise ``m = 0``.
    """
    delta = _check_side_of_transition(delta)
    if r not in range(1, MAX_SEPARATION + 1):
        raise UnsupportedSeparation(f"r={r}: only separations 1..{MAX_SEPARATION} are supported")
    if branch not in (1, -1):
        raise DomainError(f"branch={branch} must be +1 or -1")
    if delta < TRANSITION:
        return SpinCorrelators.uniform(r, 0.0, 1.0, float(branch) if ssb else 0.0)
    if r == 1:
        return SpinCorrelators.uniform(1, xx_nn(delta), zz_nn(delta))
    from .oracle import extrapolated_correlators

    return extrapolated_correlators(delta, rs=(1, 2, 3))[r]


def correlators_limit(side: Side | str, r: int = 1, ssb: bool = False, branch: int = 1) -> SpinCorrelators:
    return correlators_at(limit_point(side), r, ssb, branch)
