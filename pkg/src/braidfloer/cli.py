"""Command-line front end: ``braidfloer compute --braid 1,1,1 --strands 2``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .braid import BraidError, parse_braid
from .floer import FloerError, ResourceLimitError
from .heegaard import DiagramError, NicenessError
from .pipeline import format_text, oracle_check, report, run_pipeline
from .reduce import PivotError, PlanError

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_RESOURCE = 0, 1, 2, 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="braidfloer", description="Transverse invariant of a braid closure.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("compute", help="run the full pipeline on one braid word")
    c.add_argument("--braid", required=True, help="comma separated signed generator indices")
    c.add_argument("--strands", required=True, type=int)
    c.add_argument("--format", choices=("json", "text"), default="text")
    c.add_argument("--emit-diagram", metavar="PATH", help="write the braid and nice diagrams")
    c.add_argument("--check-oracle", action="store_true", help="compare with grid homology")
    c.add_argument("--threads", type=int, default=1, help="worker cap (stages run sequentially)")
    c.add_argument("--max-generators", type=int, default=5_000_000)
    c.add_argument("--log-cancellations", metavar="PATH", help="write the cancellation order")
    c.add_argument("--timings", action="store_true", help="include stage timings in the report")
    c.add_argument("-v", "--verbose", action="store_true")
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.threads < 1 or args.max_generators < 1:
        print("error: --threads and --max-generators must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        w = parse_braid(args.braid, args.strands)
    except BraidError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    try:
        res = run_pipeline(w, max_generators=args.max_generators)
        if args.check_oracle:
            res.checks["oracle"] = oracle_check(res)
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (FloerError, PivotError, PlanError, DiagramError, NicenessError) as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return EXIT_VERIFY
    rep = report(res, timings=args.timings)
    if args.emit_diagram:
        with open(args.emit_diagram, "w") as fh:
            fh.write("# braid diagram\n" + res.diagram.serialize() + "\n")
            fh.write("# nice diagram\n" + res.nice.serialize() + "\n")
    if args.log_cancellations:
        with open(args.log_cancellations, "w") as fh:
            for k, (a, b) in enumerate(res.cancellations):
                fh.write(f"{k} {' '.join(map(str, a))} -> {' '.join(map(str, b))}\n")
    if args.format == "json":
        out.write(json.dumps(rep, indent=2) + "\n")
    else:
        out.write(format_text(rep) + "\n")
    failed = [k for k, v in rep["checks"].items() if v is False]
    if failed:
        print(f"verification failure: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
