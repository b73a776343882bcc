"""Entanglement, spontaneous symmetry breaking and non-analyticity in the XXZ chain."""
from .bethe import Branch, EnergyDensity, ground_energy, nu_of_delta
from .correlations import (
    Method,
    SpinCorrelators,
    correlators_at,
    correlators_limit,
    xx_nn,
    zz_nn,
)
from .entanglement import (
    ConcurrenceReport,
    concurrence_report,
    concurrence_ssb,
    concurrence_symmetric,
    entropy_one_site,
    wootters_concurrence,
)
from .errors import *  # noqa: F401,F403
from .rdm import OneSiteRDM, TwoSpinRDM, build_one_site, build_two_spin
from .scanner import NonAnalyticityReport, SweepResult, classify_origin, detect, scan, sweep

__version__ = "0.1.0"
