"""``jonesurf`` command line.

Exit codes: 0 success, 1 a FAILED verdict, 2 bad input, 3 a resource limit.
Every number printed is exact; rationals appear as ``a/b``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .bracket import BracketLimits, bracket_bruteforce, colored_jones
from .conjecture import (EssentialityOracle, OracleError, PipelineConfig, check_strong_slope,
                         load_slopes)
from .degrees import (UNKNOT_JS, UNKNOT_JX, Calibration, FitError, degree_sequence,
                      detect_unknot, slopes_from_sequence)
from .diagram import PDError, load_pd
from .errors import ResourceLimitError
from .laurent import degrees_t
from .hilbert import HilbertLimits, hilbert_basis, read_matrix, verify_basis
from .normal import (TriangulationError, boundary_data, euler_characteristic,
                     fundamental_surfaces, load_triangulation)
from .normal import SurfaceError
from .sheets import (SlopeError, Slope, SurfaceStats, check_divisibility, is_characteristic,
                     jones_surface_predicate, load_table)

DATA_DIR = Path(__file__).parent / "data"
SUBDIRS = ("", "knots", "triangulations")


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    n_max: int = 8
    p_max: int = 6
    tail: int = 0
    bracket: BracketLimits = field(default_factory=BracketLimits)
    hilbert: HilbertLimits = field(default_factory=HilbertLimits)
    calibration: Calibration = field(default_factory=Calibration)
    as_json: bool = False
    fixtures: Path = DATA_DIR

    def __post_init__(self):
        for name in ("n_max", "p_max"):
            if getattr(self, name) < 1:
                raise InputError(f"{name.replace('_', '-')} must be positive")
        if self.tail < 0:
            raise InputError("tail must be non-negative")

    def resolve(self, name: str) -> Path:
        """Find ``name`` as given, else inside the fixtures directory."""
        p = Path(name)
        if p.exists():
            return p
        for sub in SUBDIRS:
            cand = self.fixtures / sub / name
            if cand.exists():
                return cand
        raise InputError(f"no such file: {name}")


def _fmt(x) -> str:
    return str(Fraction(x))


def _emit(cfg: RunConfig, payload: dict, text: str, out) -> None:
    if cfg.as_json:
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


# -- commands -------------------------------------------------------------------

def cmd_jones(cfg: RunConfig, args, out) -> int:
    d = load_pd(cfg.resolve(args.pd))
    bracket = bracket_bruteforce if args.brute_force else None
    poly = colored_jones(d, args.n, cfg.bracket, bracket=bracket)
    hi, lo = degrees_t(poly)
    payload = {"knot": d.name, "n": args.n, "variable": "q = t^(1/4)",
               "terms": [[e, c] for e, c in sorted(poly)], "text": str(poly),
               "d_plus": _fmt(hi), "d_minus": _fmt(lo)}
    _emit(cfg, payload, f"{poly}\nd+ = {_fmt(hi)}  d- = {_fmt(lo)}  (powers of t)", out)
    return 0


def cmd_slopes(cfg: RunConfig, args, out) -> int:
    d = load_pd(cfg.resolve(args.pd))
    rows = degree_sequence(d, cfg.n_max, cfg.bracket)
    data = slopes_from_sequence(rows, cfg.p_max, cfg.tail, calibration=cfg.calibration)
    payload = data.to_json()
    payload["knot"] = d.name
    payload["degrees"] = [[n, _fmt(hi), _fmt(lo)] for n, hi, lo in rows]
    payload["unknot_test"] = {"jx_is_1": detect_unknot(data, UNKNOT_JX, "jx"),
                              "js_is_0": detect_unknot(data, UNKNOT_JS, "js")}
    lines = [f"knot {d.name}"]
    for key in ("js", "js_star", "jx", "jx_star"):
        lines.append(f"{key:8s} {{{', '.join(payload[key])}}}")
    lines.append(f"period   {data.period}")
    lines.append(f"n_K      {data.n_K}")
    lines.append(f"unknot   jx = {{1}}: {payload['unknot_test']['jx_is_1']}, "
                 f"js = {{0}}: {payload['unknot_test']['js_is_0']}")
    if data.provisional:
        lines.append(f"note     provisional from {data.samples} samples")
    _emit(cfg, payload, "\n".join(lines), out)
    return 0


def cmd_check_divide(cfg: RunConfig, args, out) -> int:
    slope = Slope.parse(args.slope)
    stats = SurfaceStats(slope, args.boundary, args.chi, args.sheets)
    rep = check_divisibility(stats, args.period)
    char = is_characteristic(stats, args.period)
    payload = {"slope": str(slope), "boundary_count": stats.boundary_count, "chi": stats.euler,
               "sheets": stats.sheets, "period": args.period,
               "b_divides_p2": rep.b_divides_p2,
               "sheets_divides_2p2chi": rep.sheets_divides_2p2chi,
               "integral_when_p1": rep.integral_when_p1, "characteristic": char, "ok": rep.ok}
    lines = [f"b | p^2            {rep.b_divides_p2}",
             f"b|dS| | 2p^2 chi   {rep.sheets_divides_2p2chi}",
             f"characteristic     {char}"]
    if rep.integral_when_p1 is not None:
        lines.append(f"p = 1 integrality  {rep.integral_when_p1}")
    if args.jx:
        jx = [Fraction(v) for v in args.jx]
        ok = jones_surface_predicate(stats, jx, args.side)
        payload["jones_surface"] = ok
        lines.append(f"jones surface      {ok}")
    _emit(cfg, payload, "\n".join(lines), out)
    return 0 if rep.ok else 1


def cmd_hilbert(cfg: RunConfig, args, out) -> int:
    sys_ = read_matrix(cfg.resolve(args.matrix))
    basis = hilbert_basis(sys_, cfg.hilbert, method=args.method)
    payload = {"unknowns": sys_.unknowns, "equations": sys_.equations,
               "basis": [list(v) for v in basis]}
    lines = [" ".join(map(str, v)) for v in basis]
    code = 0
    if args.verify is not None:
        rep = verify_basis(sys_, basis, args.verify)
        payload["verified"] = {"bound": args.verify, "ok": rep.ok, "message": str(rep)}
        lines.append(f"# {rep}")
        code = 0 if rep.ok else 1
    _emit(cfg, payload, "\n".join(lines), out)
    return code


def cmd_fundamental(cfg: RunConfig, args, out) -> int:
    tri = load_triangulation(cfg.resolve(args.tri))
    rows, lines = [], []
    for s in fundamental_surfaces(tri, cfg.hilbert):
        row = {"coords": list(s.coords), "admissible": s.admissible, "chi": None,
               "slope": None, "sheets": None, "boundary_count": 0}
        if s.admissible:
            row["chi"] = euler_characteristic(tri, s)
        try:
            bd = boundary_data(tri, s)
            row.update(slope=None if bd.slope is None else str(bd.slope),
                       sheets=bd.sheets, boundary_count=bd.boundary_count)
        except SurfaceError:
            pass
        rows.append(row)
        lines.append(f"{' '.join(map(str, s.coords))}  admissible={s.admissible} chi={row['chi']} "
                     f"slope={row['slope']} sheets={row['sheets']}")
    payload = {"triangulation": tri.name, "tetrahedra": tri.size, "surfaces": rows}
    _emit(cfg, payload, "\n".join(lines), out)
    return 0


def cmd_check_conjecture(cfg: RunConfig, args, out) -> int:
    tri = load_triangulation(cfg.resolve(args.tri))
    if args.slopes:
        source = load_slopes(cfg.resolve(args.slopes))
    elif args.pd:
        source = load_pd(cfg.resolve(args.pd))
    else:
        raise InputError("check-conjecture needs --pd or --slopes")
    if args.assume_essential:
        oracle = EssentialityOracle.assume_essential()
    elif args.oracle:
        oracle = EssentialityOracle.load(cfg.resolve(args.oracle))
    else:
        raise InputError("give --oracle FILE or --assume-essential")
    pcfg = PipelineConfig(cfg.n_max, cfg.p_max, cfg.tail, cfg.hilbert)
    report = check_strong_slope(source, tri, oracle, pcfg)
    if cfg.as_json:
        out.write(report.dumps())
    else:
        lines = [f"overall  {report.status.value}"]
        for v in report.verdicts:
            w = "" if v.witness is None else f"  witness chi={v.witness['chi']} sheets={v.witness['sheets']}"
            lines.append(f"{v.side} slope {v.slope}: {v.status.value}{w}")
        if not report.membership.ok:
            lines.append("missing slopes: " + ", ".join(str(s) for s in report.membership.missing))
        out.write("\n".join(lines) + "\n")
    return 1 if report.status.failed else 0


def cmd_table1(cfg: RunConfig, args, out) -> int:
    path = cfg.resolve(args.table) if args.table else cfg.fixtures / "table1.csv"
    rows, lines, all_ok = [], [], True
    for r in load_table(path):
        entry = {"knot": r.knot, "period": r.period}
        cells = []
        for side, s in zip(("max", "min"), r.sides()):
            rep = check_divisibility(s, r.period)
            char = is_characteristic(s, r.period)
            all_ok &= rep.ok and char
            entry[side] = {"slope": str(s.slope), "boundary_count": s.boundary_count,
                           "chi": s.euler, "sheets": s.sheets,
                           "b_divides_p2": rep.b_divides_p2,
                           "sheets_divides_2p2chi": rep.sheets_divides_2p2chi,
                           "characteristic": char}
            cells.append(f"{side} {str(s.slope):>6s} chi={s.euler:3d} sheets={s.sheets} "
                         f"div={'ok' if rep.ok else 'FAIL'} char={'ok' if char else 'FAIL'}")
        rows.append(entry)
        lines.append(f"{r.knot:5s} p={r.period}  " + "  |  ".join(cells))
    payload = {"rows": rows, "all_ok": all_ok}
    _emit(cfg, payload, "\n".join(lines), out)
    return 0 if all_ok else 1


COMMANDS = {
    "jones": cmd_jones,
    "slopes": cmd_slopes,
    "check-divide": cmd_check_divide,
    "hilbert": cmd_hilbert,
    "fundamental": cmd_fundamental,
    "check-conjecture": cmd_check_conjecture,
    "table1": cmd_table1,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--fixtures", type=Path, default=DATA_DIR,
                        help="directory searched for relative input names")
    common.add_argument("--n-max", "--nmax", dest="n_max", type=int, default=8)
    common.add_argument("--p-max", "--pmax", dest="p_max", type=int, default=6)
    common.add_argument("--tail", type=int, default=0,
                        help="ignore colors n <= TAIL when fitting")
    common.add_argument("--max-states", type=int, default=None)
    common.add_argument("--max-frontier", type=int, default=None)
    common.add_argument("--calibration-scale", default="1")
    common.add_argument("--calibration-shift", default="0")

    parser = argparse.ArgumentParser(prog="jonesurf", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jones", parents=[common], help="colored Jones polynomial J_K(n)")
    p.add_argument("--pd", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--brute-force", action="store_true",
                   help="expand every Kauffman state instead of the sweep")

    p = sub.add_parser("slopes", parents=[common], help="Jones slopes, linear terms and period")
    p.add_argument("--pd", required=True)

    p = sub.add_parser("check-divide", parents=[common], help="divisibility tests for one surface")
    p.add_argument("--slope", required=True, help="a/b")
    p.add_argument("--boundary", type=int, required=True, help="number of boundary components")
    p.add_argument("--chi", type=int, required=True)
    p.add_argument("--sheets", type=int, default=None)
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--jx", nargs="*", default=None)
    p.add_argument("--side", choices=("max", "min"), default="max")

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert basis of A x = 0, x >= 0")
    p.add_argument("--matrix", required=True)
    p.add_argument("--method", choices=("pottier", "completion"), default="pottier")
    p.add_argument("--verify", type=int, default=None, metavar="BOUND")

    p = sub.add_parser("fundamental", parents=[common], help="fundamental normal surfaces")
    p.add_argument("--tri", required=True)

    p = sub.add_parser("check-conjecture", parents=[common], help="Jones surface pipeline")
    p.add_argument("--pd")
    p.add_argument("--tri", required=True)
    p.add_argument("--slopes", help="slope data JSON instead of computing from --pd")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--oracle")
    g.add_argument("--assume-essential", action="store_true")

    p = sub.add_parser("table1", parents=[common], help="divisibility verdicts on the bundled knot table")
    p.add_argument("--table", default=None)
    return parser


def _config(args) -> RunConfig:
    try:
        cal = Calibration(Fraction(args.calibration_scale), Fraction(args.calibration_shift))
    except (ValueError, ZeroDivisionError):
        raise InputError("calibration constants must be rationals") from None
    for flag in ("max_states", "max_frontier"):
        if getattr(args, flag) is not None and getattr(args, flag) < 1:
            raise InputError(f"--{flag.replace('_', '-')} must be positive")
    bracket = BracketLimits()
    if args.max_states is not None:
        bracket = BracketLimits(bracket.max_crossings, args.max_states, bracket.bruteforce_crossings)
    hilbert = HilbertLimits()
    if args.max_frontier is not None:
        hilbert = HilbertLimits(args.max_frontier, hilbert.max_solutions, hilbert.max_level)
    inputs = {k: v for k, v in vars(args).items()
              if k in ("pd", "tri", "slopes", "oracle", "matrix", "table") and v}
    return RunConfig(args.command, inputs, args.n_max, args.p_max, args.tail, bracket, hilbert,
                     cal, args.json, args.fixtures)


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](cfg, args, out)
    except ResourceLimitError as exc:
        err.write(f"resource limit: {exc}\n")
        return 3
    except (InputError, PDError, TriangulationError, OracleError, FitError, SlopeError,
            SurfaceError, FileNotFoundError, json.JSONDecodeError, KeyError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
