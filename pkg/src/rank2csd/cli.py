"""Command line front end.

    rank2csd table     [--degree L] [--cache FILE] [--out FILE] [--format json|csv|latex]
    rank2csd eval      --delta1 M --delta2 N [--degree L] [--format json|csv]
    rank2csd verify    [--degree L | --table FILE] [--grid G] [--level l]
    rank2csd reineke   --delta D [--kmax K] [--degree L | --table FILE]
    rank2csd plot-data --delta1 M --delta2 N [--degree L] [--out FILE] [--format csv|json]

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import tablefile
from .errors import CacheCorrupt, CSDError, DegreeInsufficient, RangeError
from .ordering import ExponentTable, compute_table
from .verify import cmd_reineke_check, cmd_verify
from .walls import cmd_eval, cmd_plot_data

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("rank2csd")


def cmd_table(max_degree: int, cache_path=None, progress=None) -> ExponentTable:
    """Compute the table to max_degree, reusing and extending a cache file if given."""
    if max_degree < 2:
        raise RangeError("table degree must be at least 2")
    start = None
    if cache_path is not None and Path(cache_path).exists():
        start = tablefile.load(cache_path)
        if start.max_degree >= max_degree:
            return start.restrict(max_degree)
    table = compute_table(max_degree, start=start, progress=progress)
    if cache_path is not None:
        tablefile.save(table, cache_path)
    return table


def _progress(args):
    if args.degree <= 7:
        return None
    return lambda d: print(f"degree {d}/{args.degree} done", file=sys.stderr, flush=True)


def _get_table(args) -> ExponentTable:
    if getattr(args, "table", None):
        return tablefile.load(args.table)
    return cmd_table(args.degree, args.cache, _progress(args))


def _emit(text: str, out) -> None:
    if out:
        tablefile.atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _run_table(args) -> int:
    table = cmd_table(args.degree, args.cache, _progress(args))
    _emit(tablefile.render(table, args.format), args.out)
    return EXIT_OK


def _run_eval(args) -> int:
    walls = cmd_eval(_get_table(args), args.delta1, args.delta2)
    if args.format == "json":
        text = json.dumps([w.as_dict() for w in walls], indent=1) + "\n"
    else:
        rows = ["a,b,ray_x,ray_y,exponent,incoming"]
        rows += [f"{w.vector[0]},{w.vector[1]},{w.ray[0]},{w.ray[1]},{w.exponent},{str(w.incoming).lower()}" for w in walls]
        text = "\n".join(rows) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _run_verify(args) -> int:
    table = _get_table(args)
    report = cmd_verify(table, grid=args.grid, level=args.level)
    print(report)
    print("ALL PASS" if report.ok else "VERIFICATION FAILED")
    return EXIT_OK if report.ok else EXIT_FAIL


def _run_reineke(args) -> int:
    table = _get_table(args)
    kmax = args.kmax if args.kmax is not None else table.max_degree // 2
    rep = cmd_reineke_check(table, args.delta, kmax)
    print(rep)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _run_plot(args) -> int:
    walls = cmd_eval(_get_table(args), args.delta1, args.delta2)
    _emit(cmd_plot_data(walls, args.delta1, args.delta2, args.format), args.out)
    return EXIT_OK


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rank2csd", description="Wall exponents of rank-2 cluster scattering diagrams.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def source(sp, allow_file=True):
        sp.add_argument("--degree", type=int, default=7, help="table degree (default 7)")
        sp.add_argument("--cache", help="table cache file, read and extended in place")
        if allow_file:
            sp.add_argument("--table", help="use this table file instead of computing one")

    sp = sub.add_parser("table", help="compute and export the exponent table")
    source(sp, allow_file=False)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=("json", "csv", "latex"), default="json")
    sp.set_defaults(func=_run_table)

    sp = sub.add_parser("eval", help="walls for concrete (delta1, delta2)")
    source(sp)
    sp.add_argument("--delta1", type=_nonneg, required=True)
    sp.add_argument("--delta2", type=_nonneg, required=True)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=_run_eval)

    sp = sub.add_parser("verify", help="run the consistency and identity checks")
    source(sp)
    sp.add_argument("--grid", type=_nonneg, default=4, help="oracle grid bound for m and n")
    sp.add_argument("--level", type=int, default=None, help="truncation level (default: table degree)")
    sp.set_defaults(func=_run_verify)

    sp = sub.add_parser("reineke", help="compare the (1,1)-ray series with the closed form")
    source(sp)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--kmax", type=int, default=None)
    sp.set_defaults(func=_run_reineke)

    sp = sub.add_parser("plot-data", help="ray data for external plotting")
    source(sp)
    sp.add_argument("--delta1", type=_nonneg, required=True)
    sp.add_argument("--delta2", type=_nonneg, required=True)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(func=_run_plot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (RangeError, DegreeInsufficient, ValueError) as exc:
        print(f"rank2csd: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CacheCorrupt as exc:
        print(f"rank2csd: corrupt table file: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except CSDError as exc:
        print(f"rank2csd: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
