"""Command line entry point: run a script of declarations and checks."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .dsl import parse
from .errors import ParseError, ProxError
from .laws import CATALOG, RunOptions
from .runner import reports_to_json, reports_to_text, run_program


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="proxkit",
                                description="proximity / set-algebra verification workbench")
    sub = p.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="execute a script of declarations and checks")
    runp.add_argument("script", help="path to the script file")
    runp.add_argument("--seed", type=int, default=0, help="sampling seed")
    runp.add_argument("--depth", type=int, default=16,
                      help="chain and probe depth for sequence checks")
    runp.add_argument("--samples", type=int, default=800,
                      help="sample count for family strategies")
    runp.add_argument("--jobs", type=int, default=1,
                      help="worker hint; execution stays deterministic")
    runp.add_argument("--format", choices=("json", "text"), default="json")
    runp.add_argument("--out", default=None, help="write the report here instead of stdout")
    runp.add_argument("--first-counterexample", action="store_true",
                      help="stop at the first failing command")
    runp.add_argument("--timings", action="store_true",
                      help="include measured elapsed times (breaks byte determinism)")

    sub.add_parser("laws", help="list the law catalog")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "laws":
        for law_id in sorted(CATALOG):
            entry = CATALOG[law_id]
            kinds = ", ".join(entry.arg_kinds)
            print(f"{law_id:12} ({kinds}): {entry.description}")
        return 0

    try:
        source = Path(args.script).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    options = RunOptions(seed=args.seed, samples=args.samples, depth=args.depth,
                         jobs=args.jobs, first_counterexample=args.first_counterexample,
                         timings=args.timings)
    try:
        program = parse(source)
        result = run_program(program, options)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ProxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path, text in result.dot_outputs.items():
        Path(path).write_text(text, encoding="utf-8")
    rendered = reports_to_json(result.reports) if args.format == "json" \
        else reports_to_text(result.reports)
    if args.out is not None:
        Path(args.out).write_text(rendered, encoding="utf-8")
    else:
        sys.stdout.write(rendered)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
