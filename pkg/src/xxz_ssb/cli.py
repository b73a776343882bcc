"""Command-line front end.

Subcommands::

    xxz-ssb point  --delta 0 --r 1
    xxz-ssb sweep  --range -2:0 --points 400 --r 1,2,3 --ssb --format csv
    xxz-ssb oracle --sites 8 --delta -2 --boundary periodic
    xxz-ssb scan   --range -1.5:-0.5 --signal c --mode symmetric

Floats are written with 12 significant digits so that identical
invocations give byte-identical files.  Exit status is 1 for invalid
parameters and 2 for numerical failures.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass

from . import oracle as ed
from .bethe import ground_energy
from .correlations import correlators_at
from .entanglement import concurrence_report, entropy_one_site, wootters_concurrence
from .errors import NumericalFailure, XXZError
from .scanner import SIGNALS, SweepResult, scan, sweep

DIGITS = 12
R_SIGNALS = ("tzz", "txx", "c_tilde", "c", "c_tilde_ssb", "c_ssb")
SHARED_SIGNALS = ("e0", "entropy_sym", "entropy_ssb")
# options whose values may legitimately start with '-'
_NUMERIC_OPTIONS = ("--range", "--delta")


class ConfigError(XXZError, ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    delta: float | None = None
    range: tuple[float, float] | None = None
    n_points: int = 400
    r_list: tuple[int, ...] = (1,)
    ssb: bool = False
    branch: int = 1
    fmt: str = "json"
    output: str | None = None
    jump_threshold: float | None = None
    slope_threshold: float | None = None
    seed: int = 0
    sites: int = 8
    boundary: str = "periodic"
    sector: int | None = None
    signal: str = "c"
    mode: str = "symmetric"
    input: str | None = None

    def validate(self) -> None:
        need = {
            "point": ("delta",),
            "sweep": ("range",),
            "oracle": ("delta",),
            "scan": () if self.input else ("range",),
        }[self.subcommand]
        for name in need:
            if getattr(self, name) is None:
                raise ConfigError(f"--{name} is required for '{self.subcommand}'")
        if self.range is not None and not self.range[0] < self.range[1]:
            raise ConfigError(f"--range {self.range[0]}:{self.range[1]} must have lo < hi")
        if self.n_points < 16:
            raise ConfigError(f"--points {self.n_points} must be at least 16")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"--format {self.fmt!r} must be csv or json")
        if self.fmt == "csv" and self.subcommand != "sweep":
            raise ConfigError("--format csv is only available for 'sweep'")
        if self.subcommand == "scan" and len(self.r_list) != 1:
            raise ConfigError("--r takes a single separation for 'scan'")

    def echo(self) -> dict:
        out = asdict(self)
        if out["range"] is not None:
            out["range"] = list(out["range"])
        out["r_list"] = list(out["r_list"])
        return out


def _fmt(v) -> str:
    return f"{v:.{DIGITS}g}"


def _round(obj):
    """Round every float in a JSON-able structure to 12 significant digits."""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(_fmt(obj))
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _dump_json(obj) -> str:
    return json.dumps(_round(obj), indent=2, allow_nan=False) + "\n"


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--range {text!r} must look like lo:hi") from None


def _parse_r_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--r {text!r} must be a comma-separated list of integers") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xxz-ssb", description="Entanglement and symmetry breaking across the XXZ ferromagnetic transition")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(p, with_range=True):
        if with_range:
            p.add_argument("--range", type=_parse_range, help="delta interval lo:hi")
            p.add_argument("--points", dest="n_points", type=int, default=400)
        p.add_argument("--r", dest="r_list", type=_parse_r_list, default=(1,), help="separations, e.g. 1,2,3")
        p.add_argument("--ssb", action="store_true", help="use the symmetry-broken state (m=+1) by default")
        p.add_argument("--branch", type=int, choices=(1, -1), default=1, help="sign of m in the broken state")
        p.add_argument("--format", dest="fmt", default="json")
        p.add_argument("--output", "-o", help="output file (default: stdout)")

    p = sub.add_parser("point", help="all quantities at one delta")
    p.add_argument("--delta", type=float)
    common(p, with_range=False)

    p = sub.add_parser("sweep", help="tabulate all signals over a delta range")
    common(p)

    p = sub.add_parser("oracle", help="exact diagonalization of a finite chain")
    p.add_argument("--delta", type=float)
    p.add_argument("--sites", type=int, default=8)
    p.add_argument("--boundary", choices=("periodic", "open"), default="periodic")
    p.add_argument("--sector", type=int, help="total magnetization n_up - n_down")
    p.add_argument("--seed", type=int, default=0, help="start vector seed for the sparse eigensolver")
    common(p, with_range=False)

    p = sub.add_parser("scan", help="detect and classify non-analyticities of one signal")
    common(p)
    p.add_argument("--signal", default="c", help=f"one of {', '.join(SIGNALS)} (or c_tilde/c/entropy with --mode)")
    p.add_argument("--mode", choices=("symmetric", "ssb"), default=None)
    p.add_argument("--input", help="re-use a sweep written with 'sweep --format json'")
    p.add_argument("--jump-threshold", type=float)
    p.add_argument("--slope-threshold", type=float)
    return parser


def _normalise_argv(argv: list[str]) -> list[str]:
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _NUMERIC_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(_normalise_argv(list(sys.argv[1:] if argv is None else argv)))
    values = {k: v for k, v in vars(ns).items() if v is not None}
    if ns.subcommand == "scan" and ns.mode is None:
        values["mode"] = "ssb" if ns.ssb else "symmetric"
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


# ---------------------------------------------------------------- commands


def _point(cfg: RunConfig) -> str:
    energy = ground_energy(cfg.delta)
    out = {"config": cfg.echo(), "delta": cfg.delta, "branch": energy.branch.value, "e0": energy.e0,
           "quad_error": energy.quad_error}
    for r in cfg.r_list:
        sym = correlators_at(cfg.delta, r, ssb=False)
        brk = correlators_at(cfg.delta, r, ssb=True, branch=cfg.branch)
        rep_sym, rep_brk = concurrence_report(sym), concurrence_report(brk)
        out.update({
            f"tzz_{r}": sym.tzz,
            f"txx_{r}": sym.txx,
            f"c_tilde_{r}": rep_sym.c_tilde,
            f"c_{r}": rep_sym.c,
            f"c_tilde_ssb_{r}": rep_brk.c_tilde_ssb,
            f"c_ssb_{r}": rep_brk.c_ssb,
            f"wootters_{r}": rep_sym.wootters,
            f"wootters_ssb_{r}": rep_brk.wootters,
            f"approximate_{r}": sym.approximate,
        })
        m_sym, m_brk = sym.m, brk.m
    out["entropy_sym"] = entropy_one_site(m_sym)
    out["entropy_ssb"] = entropy_one_site(m_brk)
    return _dump_json(out)


def _sweeps(cfg: RunConfig) -> dict[int, SweepResult]:
    lo, hi = cfg.range
    return {r: sweep(lo, hi, cfg.n_points, r=r, ssb=cfg.ssb, branch=cfg.branch).rounded(DIGITS) for r in cfg.r_list}


def _sweep_csv(sweeps: dict[int, SweepResult]) -> str:
    first = next(iter(sweeps.values()))
    header = ["delta", "e0"]
    for r in sweeps:
        header += [f"{name}_{r}" for name in R_SIGNALS]
    header += ["entropy_sym", "entropy_ssb"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for i, delta in enumerate(first.grid):
        row = [_fmt(delta), _fmt(first.signals["e0"][i])]
        for sw in sweeps.values():
            row += [_fmt(sw.signals[name][i]) for name in R_SIGNALS]
        row += [_fmt(first.signals[name][i]) for name in ("entropy_sym", "entropy_ssb")]
        writer.writerow(row)
    return buf.getvalue()


def _sweep_json(cfg: RunConfig, sweeps: dict[int, SweepResult]) -> str:
    first = next(iter(sweeps.values()))
    series = {"e0": first.signals["e0"].tolist()}
    limits = {}
    reports = []
    for r, sw in sweeps.items():
        for name in R_SIGNALS:
            series[f"{name}_{r}"] = sw.signals[name].tolist()
            if name in sw.limits:
                limits[f"{name}_{r}"] = list(sw.limits[name])
        for name in SIGNALS:
            reports += [dict(rep.to_dict(), r=r) for rep in scan(sw, name, cfg.jump_threshold, cfg.slope_threshold)]
    for name in SHARED_SIGNALS:
        series[name] = first.signals[name].tolist()
        if name in first.limits:
            limits[name] = list(first.limits[name])
    out = {
        "config": cfg.echo(),
        "break_at": first.break_at,
        "grid": first.grid.tolist(),
        "series": series,
        "limits": limits,
        "reports": reports,
    }
    return _dump_json(out)


def sweep_from_json(data: dict, r: int) -> SweepResult:
    """Rebuild a single-separation :class:`SweepResult` from sweep JSON output."""
    series, limits = data["series"], data.get("limits", {})
    signals, lims = {}, {}
    for name in SIGNALS:
        key = name if name in SHARED_SIGNALS else f"{name}_{r}"
        if key not in series:
            raise ConfigError(f"--input has no series {key!r}; was the sweep run with --r {r}?")
        signals[name] = series[key]
        if key in limits:
            lims[name] = tuple(limits[key])
    return SweepResult(data["grid"], signals, lims, data.get("break_at"), r, bool(data["config"].get("ssb", False)))


def resolve_signal(signal: str, mode: str) -> str:
    """Map ``c``/``c_tilde``/``entropy`` to the symmetric or SSB series."""
    if signal in SIGNALS and signal not in ("c", "c_tilde"):
        return signal
    if signal == "entropy":
        return "entropy_ssb" if mode == "ssb" else "entropy_sym"
    if signal in ("c", "c_tilde"):
        return f"{signal}_ssb" if mode == "ssb" else signal
    raise ConfigError(f"--signal {signal!r} is not one of {', '.join(SIGNALS)}")


def _scan(cfg: RunConfig) -> str:
    r = cfg.r_list[0]
    if cfg.input:
        with open(cfg.input, encoding="utf-8") as fh:
            sw = sweep_from_json(json.load(fh), r)
    else:
        sw = _sweeps(cfg)[r]
    name = resolve_signal(cfg.signal, cfg.mode)
    reports = [rep.to_dict() for rep in scan(sw, name, cfg.jump_threshold, cfg.slope_threshold)]
    return _dump_json({"config": cfg.echo(), "signal": name, "r": r, "reports": reports})


def _oracle(cfg: RunConfig) -> str:
    spec = ed.FiniteChainSpec(cfg.sites, cfg.delta, ed.Boundary(cfg.boundary), cfg.sector)
    sol = ed.diagonalize(spec, seed=cfg.seed)
    out = {
        "config": cfg.echo(),
        "energy": sol.energy,
        "energy_per_site": sol.energy_per_site,
        "e0": sol.energy_per_site / 4.0,
        "degeneracy": sol.degeneracy,
        "sectors": list(sol.sectors),
        "residual": sol.residual,
    }
    for label, symmetrize in (("symmetric", True), ("broken", False)):
        psi = ed.select_state(sol, symmetrize)
        block = {}
        for r in cfg.r_list:
            c = ed.measure(sol, r, symmetrize)
            rho = ed.two_site_rdm(psi, cfg.sites, 0, r % cfg.sites)
            block[str(r)] = {"txx": c.txx, "tyy": c.tyy, "tzz": c.tzz, "m": c.m,
                             "concurrence": wootters_concurrence(rho)}
        block["entropy"] = entropy_one_site(max(-1.0, min(1.0, ed.measure(sol, 1, symmetrize).m)))
        out[label] = block
    return _dump_json(out)


def run(cfg: RunConfig) -> str:
    """Execute a validated configuration and return the rendered output."""
    if cfg.subcommand == "point":
        return _point(cfg)
    if cfg.subcommand == "sweep":
        sweeps = _sweeps(cfg)
        return _sweep_csv(sweeps) if cfg.fmt == "csv" else _sweep_json(cfg, sweeps)
    if cfg.subcommand == "scan":
        return _scan(cfg)
    if cfg.subcommand == "oracle":
        return _oracle(cfg)
    raise ConfigError(f"unknown subcommand {cfg.subcommand!r}")


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
        text = run(cfg)
    except SystemExit as exc:
        # argparse usage errors and --help
        return int(exc.code or 0)
    except NumericalFailure as exc:
        print(f"xxz-ssb: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (XXZError, OSError) as exc:
        print(f"xxz-ssb: error: {exc}", file=sys.stderr)
        return 1
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
