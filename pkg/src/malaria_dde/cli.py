"""Command line front end.

    malaria-dde simulate scenario.json [--out DIR] [--quiet] [--seed N]
    malaria-dde sweep sweep.json [--out DIR] [--quiet] [--seed N]
    malaria-dde report scenario.json [--only SECTION] [--seed N]

Exit codes: 0 on success, 1 when the input fails validation (bad JSON,
schema violations, nonpositive rates, malformed histories), 2 when the run
itself breaks down numerically (population collapse, root bracketing
failure, state outside a functional's domain).
"""

from __future__ import annotations

import argparse
import sys

from .errors import ModelError, NumericalError, ValidationError
from .scenario import load_scenario, load_sweep, run_scenario, run_sweep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="malaria-dde",
        description="Delayed host-vector epidemic model: simulation, "
                    "stability reports and parameter sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, metavar="N",
                        help="seed for randomized histories (default 0)")

    sim = sub.add_parser("simulate", parents=[common],
                         help="run one scenario and write its artifacts")
    sim.add_argument("scenario", help="scenario JSON file")
    sim.add_argument("--out", metavar="DIR", default=None,
                     help="output directory (overrides the scenario's)")
    sim.add_argument("--quiet", action="store_true",
                     help="suppress the report echo on stdout")

    swp = sub.add_parser("sweep", parents=[common],
                         help="tabulate derived quantities along one axis")
    swp.add_argument("sweep", help="sweep JSON file")
    swp.add_argument("--out", metavar="DIR", default=None,
                     help="output directory (overrides the base scenario's)")
    swp.add_argument("--quiet", action="store_true",
                     help="suppress the summary on stdout")

    rep = sub.add_parser("report", parents=[common],
                         help="print a report section without writing files")
    rep.add_argument("scenario", help="scenario JSON file")
    rep.add_argument("--only", choices=("stability", "lyapunov", "persistence"),
                     default=None, help="restrict the report to one section")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            scn = load_scenario(args.scenario)
            run_scenario(scn, out_dir=args.out, quiet=args.quiet, seed=args.seed)
        elif args.command == "sweep":
            spec = load_sweep(args.sweep)
            run_sweep(spec, out_dir=args.out, quiet=args.quiet, seed=args.seed)
        else:
            scn = load_scenario(args.scenario)
            section = args.only if args.only is not None else "stability"
            run_scenario(scn, quiet=False, seed=args.seed, only=section)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ModelError as exc:  # pragma: no cover - base class safety net
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
