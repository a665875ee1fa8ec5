"""Command-line front end for the scenario runner.

Subcommands:
  run <file>     execute one scenario file, emit a report
  sweep <file>   execute every point of the file's [sweep] grid
  list-checks    name the available checks

Exit codes: 0 when every gated row passed its tolerance, 2 when any gated
row exceeded it, 1 on operational errors (bad file, bad schema, domain
error).  Bundled scenario names (see the scenarios/ package directory)
resolve when the given path does not exist.
"""

from __future__ import annotations

import argparse
import sys

from .errors import CrooksLabError
from .scenario import CHECKS, emit, run_scenario, sweep_scenario

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crookslab",
        description="Verify the coherent Crooks equality and friends on declarative scenarios.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("scenario", help="scenario file path or bundled scenario name")
        p.add_argument("--out", default=None, help="output file (default: standard output)")
        p.add_argument("--format", choices=["csv", "json-lines"], default="csv")
        p.add_argument("--seed", type=int, default=None, help="override the scenario seed")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers for sweep grids")
        p.add_argument(
            "--tol-scale",
            type=float,
            default=1.0,
            help="multiply every tolerance by this factor (exploratory runs)",
        )

    add_common(sub.add_parser("run", help="execute one scenario"))
    add_common(sub.add_parser("sweep", help="execute the scenario's parameter grid"))
    sub.add_parser("list-checks", help="list available checks")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list-checks":
        for name, description in CHECKS.items():
            print(f"{name:16s} {description}")
        return 0
    try:
        if args.command == "run":
            rows = run_scenario(args.scenario, seed=args.seed, tol_scale=args.tol_scale)
        else:
            rows = sweep_scenario(args.scenario, seed=args.seed, tol_scale=args.tol_scale, jobs=args.jobs)
        emit(rows, format=args.format, out=args.out)
    except (CrooksLabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0 if all(r.passed for r in rows) else 2


if __name__ == "__main__":
    raise SystemExit(main())
