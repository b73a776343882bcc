"""Parameter sweeps over delta and detection of non-analytic points.

The transition point ``delta = -1`` is never placed on the grid.  When a
sweep straddles it, every signal is also evaluated at ``-1 -/+ 1e-6`` and
stored as a pair of one-sided limits.

Detection works on the uniformly spaced grid points of each side of the
transition plus the one-sided pair.  A candidate jump is a first
difference that exceeds ``jump_threshold`` *and* dominates its neighbours
by ``SPIKE_RATIO``; a candidate kink is the same test applied to second
differences (slope changes).  The neighbour test is what keeps smooth
but steep signals, e.g. a square-root onset, from being reported as
jumps on a coarse grid.  Adjacent candidates are merged into one report.
"""
from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .bethe import ground_energy
from .correlations import ONE_SIDED_EPS, TRANSITION, correlators_at, limit_point
from .entanglement import concurrence_ssb, concurrence_symmetric, entropy_one_site
from .errors import DomainError, MissingSeries

SIGNALS = ("e0", "tzz", "txx", "c_tilde", "c", "c_tilde_ssb", "c_ssb", "entropy_sym", "entropy_ssb")
#: series obtained through max(0, .) and the series before clipping
PRE_MAX = {"c": "c_tilde", "c_ssb": "c_tilde_ssb"}
ENERGY_SIGNALS = ("e0",)

SPIKE_RATIO = 4.0
THRESHOLD_FACTOR = 10.0
FLOOR = 1e-9
CLIP_TOL = 1e-12
MIN_POINTS = 16
SPARSE_FRACTION = 0.1

SSB_NOTE = (
    "no clipping at this point: the slope break is carried by the correlators and "
    "magnetization, but the jump of tzz is compensated by the pz+qz term, so the "
    "signal still points to a continuous transition"
)
POLICY_NOTE = "jump/kink thresholds are a numerical policy, not a physical criterion"


class Kind(str, enum.Enum):
    JUMP = "Jump"
    KINK = "Kink"
    NONE = "None"


class Origin(str, enum.Enum):
    MAX_OPERATION = "MaxOperation"
    MATRIX_ELEMENTS = "MatrixElements"
    NOT_APPLICABLE = "NotApplicable"


class Order(str, enum.Enum):
    FIRST = "FirstOrder"
    SECOND = "SecondOrder"
    NONE = "None"


@dataclass
class SweepResult:
    grid: np.ndarray
    signals: dict[str, np.ndarray]
    limits: dict[str, tuple[float, float]] = field(default_factory=dict)
    break_at: float | None = None
    r: int = 1
    ssb: bool = False

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        if np.any(np.diff(self.grid) <= 0):
            raise DomainError("sweep grid must be strictly increasing")
        self.signals = {k: np.asarray(v, dtype=float) for k, v in self.signals.items()}
        for name, values in self.signals.items():
            if values.shape != self.grid.shape:
                raise DomainError(f"series {name!r} has {values.size} values for {self.grid.size} grid points")

    def segments(self) -> list[np.ndarray]:
        """Index arrays of the grid on each side of the break."""
        idx = np.arange(self.grid.size)
        if self.break_at is None:
            return [idx]
        return [idx[self.grid < self.break_at], idx[self.grid > self.break_at]]

    @property
    def spacing(self) -> float:
        return float(np.median(np.diff(self.grid)))

    def rounded(self, digits: int = 12) -> "SweepResult":
        """Copy with every value rounded to ``digits`` significant digits."""
        def rnd(v):
            return float(f"{v:.{digits}g}")

        return SweepResult(
            np.array([rnd(v) for v in self.grid]),
            {k: np.array([rnd(v) for v in s]) for k, s in self.signals.items()},
            {k: (rnd(a), rnd(b)) for k, (a, b) in self.limits.items()},
            self.break_at,
            self.r,
            self.ssb,
        )

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "ssb": self.ssb,
            "break_at": self.break_at,
            "grid": self.grid.tolist(),
            "signals": {k: v.tolist() for k, v in self.signals.items()},
            "limits": {k: list(v) for k, v in self.limits.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SweepResult":
        return cls(
            np.array(data["grid"]),
            {k: np.array(v) for k, v in data["signals"].items()},
            {k: (float(v[0]), float(v[1])) for k, v in data.get("limits", {}).items()},
            data.get("break_at"),
            int(data.get("r", 1)),
            bool(data.get("ssb", False)),
        )


@dataclass
class NonAnalyticityReport:
    location: float
    kind: Kind
    signal: str
    left_value: float
    right_value: float
    left_slope: float
    right_slope: float
    origin: Origin = Origin.NOT_APPLICABLE
    implied_order: Order = Order.NONE
    jump_threshold: float = 0.0
    slope_threshold: float = 0.0
    note: str = POLICY_NOTE

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("kind", "origin", "implied_order"):
            out[key] = out[key].value
        return out


def point_signals(delta: float, r: int = 1, branch: int = 1) -> dict[str, float]:
    """All sweep signals at one value of delta."""
    sym = correlators_at(delta, r, ssb=False)
    brk = correlators_at(delta, r, ssb=True, branch=branch)
    c_tilde, c = concurrence_symmetric(sym)
    c_tilde_ssb, c_ssb = concurrence_ssb(brk)
    return {
        "e0": ground_energy(delta).e0,
        "tzz": sym.tzz,
        "txx": sym.txx,
        "c_tilde": c_tilde,
        "c": c,
        "c_tilde_ssb": c_tilde_ssb,
        "c_ssb": c_ssb,
        "entropy_sym": entropy_one_site(sym.m),
        "entropy_ssb": entropy_one_site(brk.m),
    }


def default_workers() -> int:
    cap = os.environ.get("XXZ_THREADS")
    n = os.cpu_count() or 1
    return max(1, min(n, int(cap))) if cap else n


def _evaluate(delta: float, r: int, branch: int) -> dict[str, float]:
    try:
        return point_signals(delta, r, branch)
    except Exception as exc:
        raise type(exc)(f"sweep point delta={delta!r}: {exc}") from exc


def sweep(
    lo: float,
    hi: float,
    n_points: int,
    r: int = 1,
    ssb: bool = False,
    branch: int = 1,
    workers: int | None = None,
) -> SweepResult:
    """Evaluate every signal on ``linspace(lo, hi, n_points)``.

    A grid point falling exactly on ``delta = -1`` is dropped; the
    transition is represented by one-sided limits instead.  ``ssb`` is
    recorded on the result and selects the default mode for scanning.
    """
    if not -3.0 <= lo < hi < 1.0:
        raise DomainError(f"range=({lo}, {hi}) must satisfy -3 <= lo < hi < 1")
    if n_points < MIN_POINTS:
        raise DomainError(f"n_points={n_points} must be at least {MIN_POINTS}")
    grid = np.linspace(lo, hi, n_points)
    grid = grid[np.abs(grid - TRANSITION) > 2 * ONE_SIDED_EPS]
    crosses = lo < TRANSITION < hi
    points = list(grid)
    if crosses:
        points += [limit_point("left"), limit_point("right")]
    workers = workers or default_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda d: _evaluate(d, r, branch), points))
    else:
        rows = [_evaluate(d, r, branch) for d in points]
    signals = {name: np.array([row[name] for row in rows[: grid.size]]) for name in SIGNALS}
    limits = {}
    if crosses:
        left, right = rows[-2], rows[-1]
        limits = {name: (left[name], right[name]) for name in SIGNALS}
    return SweepResult(grid, signals, limits, TRANSITION if crosses else None, r, ssb)


def _robust_scale(values: list[np.ndarray], floor: float) -> float:
    mags = np.abs(np.concatenate(values)) if values else np.zeros(0)
    big = mags[mags > floor]
    # a handful of isolated non-zero differences on a flat background are
    # the features themselves, not the noise scale
    if big.size < SPARSE_FRACTION * mags.size:
        return 0.0
    return float(np.median(big))


def _neighbour_max(arr: np.ndarray, k: int, offsets: tuple[int, ...]) -> float:
    vals = [abs(arr[k + o]) for o in offsets if 0 <= k + o < arr.size]
    return max(vals) if vals else 0.0


@dataclass
class _Candidate:
    location: float
    kind: Kind
    score: float
    report: NonAnalyticityReport
    at_break: bool = False


def _thresholds(sw: SweepResult, y: np.ndarray, jump_threshold, slope_threshold):
    floor = FLOOR * max(1.0, float(np.max(np.abs(y))) if y.size else 1.0)
    d_parts, dd_parts = [], []
    for seg in sw.segments():
        ys = y[seg]
        d_parts.append(np.diff(ys))
        dd_parts.append(np.diff(ys, 2) if ys.size >= 3 else np.zeros(0))
    jt = jump_threshold if jump_threshold is not None else max(THRESHOLD_FACTOR * _robust_scale(d_parts, floor), floor)
    st = slope_threshold if slope_threshold is not None else max(THRESHOLD_FACTOR * _robust_scale(dd_parts, floor), floor)
    return jt, st, d_parts, dd_parts


def detect(
    sw: SweepResult,
    signal: str,
    jump_threshold: float | None = None,
    slope_threshold: float | None = None,
) -> list[NonAnalyticityReport]:
    """Locate jumps and kinks of one series.

    ``jump_threshold`` is in units of the signal, ``slope_threshold`` in
    units of a second difference on the sweep grid.  By default both are
    ten times the median non-negligible first/second difference.
    """
    if signal not in sw.signals:
        raise MissingSeries(f"signal {signal!r} not in sweep (have {sorted(sw.signals)})")
    x, y = sw.grid, sw.signals[signal]
    h = sw.spacing
    jt, st, d_parts, dd_parts = _thresholds(sw, y, jump_threshold, slope_threshold)

    def make(location, kind, lv, rv, ls, rs):
        return NonAnalyticityReport(
            float(location), kind, signal, float(lv), float(rv), float(ls), float(rs),
            jump_threshold=jt, slope_threshold=st,
        )

    cands: list[_Candidate] = []
    for seg, d, dd in zip(sw.segments(), d_parts, dd_parts):
        xs, ys = x[seg], y[seg]
        for k in range(d.size):
            if abs(d[k]) > jt and abs(d[k]) > SPIKE_RATIO * _neighbour_max(d, k, (-1, 1)):
                ls = d[k - 1] / h if k > 0 else np.nan
                rs = d[k + 1] / h if k + 1 < d.size else np.nan
                loc = 0.5 * (xs[k] + xs[k + 1])
                cands.append(_Candidate(loc, Kind.JUMP, abs(d[k]) / jt, make(loc, Kind.JUMP, ys[k], ys[k + 1], ls, rs)))
        for k in range(dd.size):
            if abs(dd[k]) > st and abs(dd[k]) > SPIKE_RATIO * _neighbour_max(dd, k, (-2, 2)):
                p = k + 1
                loc = xs[p]
                rep = make(loc, Kind.KINK, ys[p], ys[p], d[p - 1] / h, d[p] / h)
                cands.append(_Candidate(loc, Kind.KINK, abs(dd[k]) / st, rep))

    if sw.break_at is not None and signal in sw.limits:
        left_seg, right_seg = sw.segments()
        lv, rv = sw.limits[signal]
        xl, xr = sw.break_at - ONE_SIDED_EPS, sw.break_at + ONE_SIDED_EPS
        has_left, has_right = left_seg.size > 0, right_seg.size > 0
        yl = y[left_seg[-1]] if has_left else lv
        yr = y[right_seg[0]] if has_right else rv
        ls = (lv - yl) / (xl - x[left_seg[-1]]) if has_left else np.nan
        rs = (yr - rv) / (x[right_seg[0]] - xr) if has_right else np.nan
        jump = abs(rv - lv)
        if jump > jt and jump > SPIKE_RATIO * max(abs(lv - yl), abs(yr - rv)):
            rep = make(sw.break_at, Kind.JUMP, lv, rv, ls, rs)
            cands.append(_Candidate(sw.break_at, Kind.JUMP, jump / jt, rep, at_break=True))
        elif has_left and has_right:
            bend = abs(rs - ls) * h
            near = max(
                abs(dd_parts[0][-1]) if dd_parts[0].size else 0.0,
                abs(dd_parts[1][0]) if dd_parts[1].size else 0.0,
            )
            if bend > st and bend > SPIKE_RATIO * near:
                rep = make(sw.break_at, Kind.KINK, lv, rv, ls, rs)
                cands.append(_Candidate(sw.break_at, Kind.KINK, bend / st, rep, at_break=True))

    reports = []
    for cluster in _clusters(cands, 2.5 * h):
        kind = Kind.JUMP if any(c.kind is Kind.JUMP for c in cluster) else Kind.KINK
        pool = [c for c in cluster if c.at_break] or [c for c in cluster if c.kind is kind]
        best = max(pool, key=lambda c: c.score)
        rep = best.report
        rep.kind = kind
        rep.implied_order = _implied_order(signal, kind)
        reports.append(rep)
    return reports


def _clusters(cands: list[_Candidate], width: float) -> list[list[_Candidate]]:
    out: list[list[_Candidate]] = []
    for c in sorted(cands, key=lambda c: c.location):
        if out and c.location - out[-1][-1].location <= width:
            out[-1].append(c)
        else:
            out.append([c])
    return out


def _implied_order(signal: str, kind: Kind) -> Order:
    if kind is Kind.NONE:
        return Order.NONE
    # a kink in the energy itself is a jump in its first derivative
    if signal in ENERGY_SIGNALS:
        return Order.FIRST
    return Order.FIRST if kind is Kind.JUMP else Order.SECOND


def _local_values(sw: SweepResult, name: str, location: float) -> np.ndarray:
    """Values of a series adjacent to ``location``, one-sided limits included."""
    x, y = sw.grid, sw.signals[name]
    h = sw.spacing
    near = np.abs(x - location) <= 2.5 * h
    vals = list(y[near])
    if sw.break_at is not None and abs(location - sw.break_at) <= 2.5 * h and name in sw.limits:
        vals.extend(sw.limits[name])
    return np.array(vals)


def classify_origin(sw: SweepResult, report: NonAnalyticityReport) -> NonAnalyticityReport:
    """Attribute a detected non-analyticity to clipping or to the matrix elements.

    For a clipped series (``c = max(0, c_tilde)``), the non-analyticity is
    due to the max operation when clipping is active next to the location,
    i.e. the post-max series departs from its pre-max companion there.
    Otherwise the post-max series coincides with the pre-max one around the
    point, and the non-analyticity is inherited from the density-matrix
    elements.  Series without a max operation are classified as
    matrix-element driven.
    """
    if report.kind is Kind.NONE:
        report.origin = Origin.NOT_APPLICABLE
        report.implied_order = Order.NONE
        return report
    companion = PRE_MAX.get(report.signal, report.signal)
    for name in (report.signal, companion):
        if name not in sw.signals:
            raise MissingSeries(f"series {name!r} required to classify {report.signal!r} is missing")
    post = _local_values(sw, report.signal, report.location)
    pre = _local_values(sw, companion, report.location)
    if companion != report.signal and np.any(np.abs(post - pre) > CLIP_TOL):
        report.origin = Origin.MAX_OPERATION
        report.note = "clipping by max(0, .) is active next to this point; " + POLICY_NOTE
    else:
        report.origin = Origin.MATRIX_ELEMENTS
        if report.signal == "c_ssb":
            report.note = SSB_NOTE + "; " + POLICY_NOTE
    return report


def scan(
    sw: SweepResult,
    signal: str,
    jump_threshold: float | None = None,
    slope_threshold: float | None = None,
) -> list[NonAnalyticityReport]:
    """``detect`` followed by ``classify_origin`` on every report."""
    return [classify_origin(sw, rep) for rep in detect(sw, signal, jump_threshold, slope_threshold)]
