"""Command-line entry point: ``rotorlab <command> ...``.

All numbers cross this boundary as "num/den" strings.  ``--approx`` adds a
float rendering for display only.  Exit codes: 0 ok, 1 computational failure
(structured JSON on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .circlelift import Lift, lower_map, rotation_interval, upper_map
from .combinatorics import CyclicPattern, TrivialCycleError, over_rotation_pair
from .horseshoe import ItineraryInfeasible, TruncationParams, psi
from .overtwist import InvalidOvertwistSpec, OvertwistSpec, color_of, overtwist_permutation
from .plinear import forced_cycles, is_overtwist, rotation_interval_of_pattern
from .pwmap import fmt
from .tracts import (EmptyLevelSet, PointBelowTract, SweepTable, count_components, leading_set,
                     level_cells, staircase_svg, sweep)


class ComputationFailed(RuntimeError):
    pass


@dataclass
class RunConfig:
    period_cap: int = 16
    grid: tuple[int, int] = (20, 20)
    tolerance: Fraction = Fraction(1, 50)
    fmt: str = "json"
    out: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.period_cap < 2:
            raise ValueError("period cap must be >= 2")
        if min(self.grid) < 2:
            raise ValueError("grid dimensions must be >= 2")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.fmt not in ("json", "csv", "svg"):
            raise ValueError(f"unknown output format {self.fmt!r}")


# config keys -> argparse dest
CONFIG_KEYS = {"period_cap": "cap", "cap": "cap", "grid": "grid", "tolerance": "tol",
               "tol": "tol", "format": "format", "out": "out", "output": "out"}


def read_config(path) -> dict:
    """Parse a key=value file; blank lines and # comments are ignored."""
    cfg = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise argparse.ArgumentTypeError(f"{path}:{lineno}: expected key=value")
        k, v = (s.strip() for s in line.split("=", 1))
        if k not in CONFIG_KEYS:
            raise argparse.ArgumentTypeError(f"{path}:{lineno}: unknown key {k!r}")
        cfg[CONFIG_KEYS[k]] = v
    return cfg


def fraction_arg(text: str) -> Fraction:
    try:
        if any(c in text for c in ".eE"):
            raise ValueError
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected an exact rational like 3/7, got {text!r}")


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 2:
        raise argparse.ArgumentTypeError("value must be >= 2")
    return v


def grid_arg(text: str) -> tuple[int, int]:
    parts = text.replace("x", " ").replace(",", " ").split()
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"grid must look like 100x100, got {text!r}")
    return positive_int(parts[0]), positive_int(parts[1])


def perm_arg(text: str) -> CyclicPattern:
    try:
        if text.lstrip().startswith("{") or text.lstrip().startswith("["):
            obj = json.loads(text)
            image = obj["image"] if isinstance(obj, dict) else obj
        else:
            image = [int(t) for t in text.replace(",", " ").split()]
        return CyclicPattern(tuple(image))
    except (ValueError, KeyError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad permutation {text!r}: {exc}")


def _num(x: Fraction, approx: bool):
    return {"value": fmt(x), "approx": float(x)} if approx else fmt(x)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


# ---------------------------------------------------------------- commands


def cmd_otw(args, out):
    spec = OvertwistSpec(args.p, args.q, args.r)
    pat = overtwist_permutation(spec)
    orp = over_rotation_pair(pat)
    out.write(_dump({
        "p": spec.p, "q": spec.q, "r": spec.r,
        "image": list(pat.image),
        "colors": [color_of(spec, j) for j in range(1, spec.q + 1)],
        "over_rotation_pair": [orp.p, orp.q],
    }))


def cmd_pat(args, out):
    pat = args.perm
    if args.action == "interval":
        lo, hi = rotation_interval_of_pattern(pat)
        res = {"interval": [_num(lo, args.approx), _num(hi, args.approx)]}
    elif args.action == "otwist":
        orp = over_rotation_pair(pat)
        res = {"overtwist": is_overtwist(pat), "over_rotation_pair": [orp.p, orp.q]}
    else:
        cyc = forced_cycles(pat, args.cap)
        res = {"cap": args.cap, "forced": [list(c.image) for c in cyc]}
    out.write(_dump(res))


def cmd_psi(args, out):
    res = psi(TruncationParams(args.alpha, args.beta), args.cap)
    if args.require_converged and not res.converged:
        raise ComputationFailed(f"psi at ({fmt(args.alpha)}, {fmt(args.beta)}) did not converge with cap {args.cap}")
    status = "converged" if res.converged else "unconverged"
    extra = f" ~{float(res.value):.6f}" if args.approx else ""
    out.write(f"{fmt(res.value)} {status}{extra}\n")


def cmd_lift(args, out):
    text = Path(args.spec).read_text() if Path(args.spec).is_file() else args.spec
    F = Lift.from_json(text)
    if args.action == "hulls":
        out.write(_dump({"lower": json.loads(lower_map(F).to_json()),
                         "upper": json.loads(upper_map(F).to_json())}))
        return
    lo, hi = rotation_interval(F, args.precision)
    res = {}
    for name, r in (("lower", lo), ("upper", hi)):
        res[name] = {"exact": r.exact, "lo": _num(r.lo, args.approx), "hi": _num(r.hi, args.approx)}
    out.write(_dump(res))


def cmd_stair(args, out):
    z = leading_set(args.p, args.q)
    if args.svg:
        Path(args.svg).write_text(staircase_svg([(f"Z_{args.p}/{args.q}", z)]))
    if args.json:
        Path(args.json).write_text(z.to_json() + "\n")
    if not args.svg and not args.json:
        out.write(z.to_json() + "\n")


def cmd_sweep(args, out):
    m, n = args.grid
    table = sweep(m, n, args.cap)
    text = table.to_csv()
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)


def cmd_tract(args, out):
    m, n = args.grid
    if args.table:
        table = SweepTable.from_csv(Path(args.table).read_text(), m, n)
    else:
        table = sweep(m, n, args.cap)
    cells = level_cells(table, args.value, args.tol)
    if not cells:
        raise EmptyLevelSet(f"no grid cell has |psi - {fmt(args.value)}| <= {fmt(args.tol)}")
    comps = count_components(cells)
    out.write(_dump({"value": fmt(args.value), "tol": fmt(args.tol), "grid": [m, n],
                     "cells": len(cells), "components": comps, "connected": comps == 1}))


def cmd_verify(args, out):
    from .checks import run_all
    failed = 0
    for name, bad in run_all():
        out.write(f"{'PASS' if not bad else 'FAIL'} {name}" + (f": {bad[:3]}" if bad else "") + "\n")
        failed += bool(bad)
    if failed:
        raise ComputationFailed(f"{failed} invariant check(s) failed")


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file; explicit flags win")
    common.add_argument("--approx", action="store_true", help="also print float approximations")

    ap = argparse.ArgumentParser(prog="rotorlab", parents=[common], description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("otw", parents=[common], help="over-twist family permutations")
    p.add_argument("action", choices=["gen"])
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("r", type=int)
    p.set_defaults(func=cmd_otw)

    p = sub.add_parser("pat", parents=[common], help="cyclic pattern queries")
    p.add_argument("action", choices=["interval", "otwist", "forced"])
    p.add_argument("perm", type=perm_arg, help='image list "3,1,2" or JSON {"image": [...]}')
    p.add_argument("--cap", type=positive_int, default=8)
    p.set_defaults(func=cmd_pat)

    p = sub.add_parser("psi", parents=[common], help="minimal over-rotation number of a truncation")
    p.add_argument("--alpha", type=fraction_arg, required=True)
    p.add_argument("--beta", type=fraction_arg, required=True)
    p.add_argument("--cap", type=positive_int, default=16)
    p.add_argument("--require-converged", action="store_true")
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("lift", parents=[common], help="degree-one circle lifts")
    p.add_argument("action", choices=["rot", "hulls"])
    p.add_argument("--spec", required=True, help="JSON lift or path to one")
    p.add_argument("--precision", type=positive_int, default=10**4)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("stair", parents=[common], help="leading-set staircase Z_{p/q}")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--svg")
    p.add_argument("--json")
    p.set_defaults(func=cmd_stair)

    p = sub.add_parser("sweep", parents=[common], help="psi over a parameter grid (CSV)")
    p.add_argument("--grid", type=grid_arg, default=(20, 20))
    p.add_argument("--cap", type=positive_int, default=16)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("tract", parents=[common], help="level-set connectivity on a grid")
    p.add_argument("--value", type=fraction_arg, required=True)
    p.add_argument("--tol", type=fraction_arg, default=Fraction(1, 50))
    p.add_argument("--grid", type=grid_arg, default=(20, 20))
    p.add_argument("--cap", type=positive_int, default=16)
    p.add_argument("--table", help="reuse a CSV written by sweep")
    p.set_defaults(func=cmd_tract)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.set_defaults(func=cmd_verify)
    return ap


_CONVERT = {"cap": positive_int, "grid": grid_arg, "tol": fraction_arg}


def parse(argv) -> argparse.Namespace:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.config:
        try:
            cfg = read_config(args.config)
            given = _explicit_dests(argv)
            for dest, raw in cfg.items():
                if hasattr(args, dest) and dest not in given:
                    setattr(args, dest, _CONVERT.get(dest, str)(raw))
        except (OSError, argparse.ArgumentTypeError) as exc:
            ap.error(str(exc))
    try:
        RunConfig(period_cap=getattr(args, "cap", 16), grid=getattr(args, "grid", (2, 2)),
                  tolerance=getattr(args, "tol", Fraction(1, 50)))
    except ValueError as exc:
        ap.error(str(exc))
    return args


def _explicit_dests(argv) -> set[str]:
    given = set()
    for tok in argv:
        if tok.startswith("--"):
            given.add(tok[2:].split("=", 1)[0].replace("-", "_"))
    return given


COMPUTATIONAL = (ComputationFailed, ItineraryInfeasible, PointBelowTract, EmptyLevelSet,
                 TrivialCycleError, InvalidOvertwistSpec, ValueError)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parse(argv)
    try:
        args.func(args, sys.stdout)
    except COMPUTATIONAL as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "command": args.command}
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
