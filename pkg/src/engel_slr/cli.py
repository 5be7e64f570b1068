"""``engel-slr`` command line.

Exit codes: 0 ok, 1 usage, 2 wrong case or trivial costate, 3 divergence,
4 verification failure, 5 I/O error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .core import CausalKind
from .geodesics import (
    GeodesicCase,
    WrongCaseError,
    initial_hamiltonian,
    sample_geodesic,
)
from .hamiltonian import (
    Covector,
    DivergenceError,
    NontrivialityError,
    PhaseState,
    abnormal_analyze,
    integrate_normal,
    uniform_grid,
)
from .tables import GEODESIC_COLUMNS, PROJECTION_COLUMNS, Table, trajectory_table, write_table
from .verify import FIG1_COVECTORS, FIG2_COVECTORS, SUITES, parse_tolerance_overrides, run_verify

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_WRONG_CASE = 2
EXIT_DIVERGENCE = 3
EXIT_VERIFY = 4
EXIT_IO = 5

FIGURES = {
    "fig1": ("Heisenberg-type geodesics (xi4 = 0)", FIG1_COVECTORS),
    "fig2": ("elliptic geodesics (xi4 != 0)", FIG2_COVECTORS),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    xi: Optional[Covector] = None
    s_max: float = 1.0
    h: float = 0.01
    case: Optional[GeodesicCase] = None
    fmt: str = "csv"
    out: Optional[str] = None
    tolerances: dict = field(default_factory=dict)
    suites: Optional[list] = None
    adaptive: bool = False
    sign: int = 1
    figure: Optional[str] = None
    render: bool = True
    n_random: int = 50

    def __post_init__(self):
        if not (self.s_max > 0 and math.isfinite(self.s_max)):
            raise UsageError("--smax must be a positive number")
        if not (self.h > 0 and math.isfinite(self.h)):
            raise UsageError("--step must be a positive number")


def _covector(text: str, abnormal: bool) -> Covector:
    try:
        return Covector.parse(text, xi0=0.0 if abnormal else -1.0)
    except NontrivialityError:
        raise
    except ValueError as err:
        raise UsageError(f"--xi: {err}") from None


def _case(text: Optional[str]) -> Optional[GeodesicCase]:
    if text is None:
        return None
    for case in GeodesicCase:
        if text.lower() in (case.value.lower(), case.name.lower()):
            return case
    raise UsageError(f"--case must be one of {', '.join(c.value for c in GeodesicCase)}")


def _emit(table: Table, cfg: RunConfig) -> None:
    if cfg.out is None:
        write_table(sys.stdout, table, cfg.fmt)
    else:
        write_table(cfg.out, table, cfg.fmt)


def _xi_meta(xi: Covector) -> dict:
    return {"xi0": xi.xi0, "xi": list(xi.components())}


def cmd_geodesic(cfg: RunConfig) -> int:
    xi = cfg.xi
    grid = uniform_grid(cfg.s_max, cfg.h)
    if not xi.normal:
        curve = abnormal_analyze(xi, CausalKind.SPACELIKE)
        if not curve:
            print(f"wrong case: {curve.reason}", file=sys.stderr)
            return EXIT_WRONG_CASE
        rows = [(s, *curve.at(s, cfg.sign)) for s in grid]
        meta = {"case": GeodesicCase.ABNORMAL_SPACELIKE.value, **_xi_meta(xi), "h": cfg.h, "H0": None, "drift": None}
        _emit(Table(GEODESIC_COLUMNS, np.array(rows), meta), cfg)
        return EXIT_OK
    samples = sample_geodesic(xi, cfg.s_max, cfg.h, case=cfg.case)
    if samples.clipped:
        lo, hi = samples.domain if samples.domain else (float("nan"), float("nan"))
        print(
            f"clipped: samples stop at s={samples.s[-1]!r}; valid interval is ({lo!r}, {hi!r})",
            file=sys.stderr,
        )
    meta = {
        "case": samples.case.value,
        **_xi_meta(xi),
        "h": cfg.h,
        "H0": initial_hamiltonian(xi),
        "drift": None,
        "domain": None if samples.domain is None else list(samples.domain),
        "clipped": samples.clipped,
    }
    _emit(Table(GEODESIC_COLUMNS, np.column_stack([samples.s, samples.points]), meta), cfg)
    return EXIT_OK


def cmd_integrate(cfg: RunConfig) -> int:
    xi = cfg.xi
    if not xi.normal:
        raise UsageError("integrate solves the normal system; drop --abnormal")
    case = cfg.case.value if cfg.case else None
    try:
        from .geodesics import classify_case

        case = case or classify_case(xi).value
    except WrongCaseError:
        pass
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        traj = integrate_normal(PhaseState.at_origin(xi), cfg.s_max, cfg.h, cfg.adaptive, case=case)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _emit(trajectory_table(traj), cfg)
    print(f"H0={traj.H0!r} drift={traj.drift:.3e} samples={len(traj)}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    try:
        report = run_verify(cfg.suites, cfg.tolerances, cfg.n_random)
    except KeyError as err:
        raise UsageError(str(err.args[0])) from None
    text = report.to_json() + "\n"
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    for r in report.results:
        if not r.passed:
            print(f"FAIL {r.suite}/{r.name}: {r.measured:.3e} > {r.tolerance:.3e}", file=sys.stderr)
    print(f"{len(report.results) - sum(not r.passed for r in report.results)}/{len(report.results)} checks passed", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERIFY


def _slug(xi: Sequence[float]) -> str:
    return "_".join(f"{v:.6g}".replace("-", "m").replace(".", "p") for v in xi)


def cmd_plot_data(cfg: RunConfig) -> int:
    """Write one ``x1,x2`` CSV per costate and, when possible, a PNG of all of them."""
    out_dir = cfg.out or "."
    os.makedirs(out_dir, exist_ok=True)
    if cfg.figure is not None:
        title, sets = FIGURES[cfg.figure]
        prefix = cfg.figure
    else:
        title, sets, prefix = "custom costate", (cfg.xi.components(),), "custom"
    curves = []
    written = []
    for i, comps in enumerate(sets, start=1):
        xi = Covector(*comps)
        samples = sample_geodesic(xi, cfg.s_max, cfg.h)
        if samples.clipped:
            print(f"clipped {comps}: valid interval {samples.domain}", file=sys.stderr)
        meta = {"case": samples.case.value, **_xi_meta(xi), "h": cfg.h, "s_max": cfg.s_max}
        path = os.path.join(out_dir, f"{prefix}_{i}_{_slug(comps)}.{cfg.fmt}")
        write_table(path, Table(PROJECTION_COLUMNS, samples.points[:, :2], meta), cfg.fmt)
        written.append(path)
        label = "xi(0)=(" + ", ".join(f"{v:.4g}" for v in comps) + ")"
        curves.append((label, samples.points[:, :2]))
    if cfg.render:
        from .plotting import have_matplotlib, render_projections

        if have_matplotlib():
            path = os.path.join(out_dir, f"{prefix}.png")
            render_projections(path, curves, title)
            written.append(path)
        else:
            print("matplotlib not installed; skipping the PNG", file=sys.stderr)
    for path in written:
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="engel-slr", description="Geodesics of the sub-Lorentzian Engel group.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, smax_default, step_default):
        p.add_argument("--smax", type=float, default=smax_default, help="final arc parameter (default %(default)s)")
        p.add_argument("--step", type=float, default=step_default, help="sampling / integration step (default %(default)s)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="output path (stdout if omitted; a directory for plot-data)")

    g = sub.add_parser("geodesic", help="sample a closed-form geodesic from the origin")
    g.add_argument("--xi", required=True, help="initial costate a,b,c,d")
    g.add_argument("--abnormal", action="store_true", help="treat --xi as an abnormal costate (xi0 = 0)")
    g.add_argument("--sign", type=int, choices=(1, -1), default=1, help="branch of the abnormal curve")
    g.add_argument("--case", help="expected case; a mismatch exits with code 2")
    common(g, 1.0, 0.01)

    i = sub.add_parser("integrate", help="integrate the normal Hamiltonian system with RK4")
    i.add_argument("--xi", required=True, help="initial costate a,b,c,d")
    i.add_argument("--adaptive", action="store_true", help="embedded RK4(5) instead of fixed steps")
    i.add_argument("--case", help="case tag stored in the metadata")
    common(i, 1.0, 1e-3)

    v = sub.add_parser("verify", help="run the invariant battery and print a JSON report")
    v.add_argument("--suite", action="append", choices=SUITES, help="run only this suite (repeatable)")
    v.add_argument("--tolerance", action="append", default=[], metavar="KEY=VAL", help="override a tolerance")
    v.add_argument("--n-random", type=int, default=50, help="random costates per case (default %(default)s)")
    v.add_argument("--out", help="report path (stdout if omitted)")

    p = sub.add_parser("plot-data", help="write (x1, x2) projections for the built-in figure sets")
    p.add_argument("figure", nargs="?", choices=sorted(FIGURES), help="built-in parameter set")
    p.add_argument("--xi", help="single custom costate instead of a built-in set")
    p.add_argument("--no-render", action="store_true", help="skip the PNG even if matplotlib is available")
    common(p, 2.0, 0.01)
    return parser


def _config(args) -> RunConfig:
    cmd = args.command
    if cmd == "verify":
        try:
            tolerances = parse_tolerance_overrides(args.tolerance)
        except ValueError as err:
            raise UsageError(str(err)) from None
        if args.n_random < 1:
            raise UsageError("--n-random must be at least 1")
        return RunConfig(cmd, out=args.out, tolerances=tolerances, suites=args.suite, n_random=args.n_random)
    if cmd == "plot-data":
        if (args.figure is None) == (args.xi is None):
            raise UsageError("plot-data needs exactly one of a figure name (fig1, fig2) or --xi")
        xi = None if args.xi is None else _covector(args.xi, False)
        return RunConfig(
            cmd, xi, args.smax, args.step, fmt=args.format, out=args.out, figure=args.figure, render=not args.no_render
        )
    xi = _covector(args.xi, getattr(args, "abnormal", False))
    return RunConfig(
        cmd,
        xi,
        args.smax,
        args.step,
        case=_case(args.case),
        fmt=args.format,
        out=args.out,
        adaptive=getattr(args, "adaptive", False),
        sign=getattr(args, "sign", 1),
    )


COMMANDS = {"geodesic": cmd_geodesic, "integrate": cmd_integrate, "verify": cmd_verify, "plot-data": cmd_plot_data}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[cfg.command](cfg)
    except UsageError as err:
        print(f"engel-slr: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except NontrivialityError as err:
        print(f"wrong case: {err}", file=sys.stderr)
        return EXIT_WRONG_CASE
    except WrongCaseError as err:
        print(f"wrong case: {err}", file=sys.stderr)
        return EXIT_WRONG_CASE
    except DivergenceError as err:
        print(f"diverged: last good s={err.last_good_s!r}", file=sys.stderr)
        return EXIT_DIVERGENCE
    except OSError as err:
        print(f"I/O error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
