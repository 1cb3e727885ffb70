"""Execute parsed programs: run commands in order, collect reports, emit
JSON or text, and map outcomes to exit codes.

Exit codes: 0 when everything holds, 1 when any counterexample appears,
2 for parse or configuration errors, 3 when something is inconclusive or
refused and nothing failed outright.

Reports are byte-deterministic for a fixed (source, seed, jobs): command
execution is sequential, witnesses are produced in canonical order, and
elapsed times are reported as zero unless timings are requested.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .dsl import Program, parse
from .laws import RunOptions, run_law
from .reports import REFUSED, LawReport, Witness, exit_code
from .stone import StoneSpace, emit_dot, ultrafilters
from .errors import NotFinitelyAtomic


@dataclass
class RunResult:
    reports: list
    exit_code: int
    dot_outputs: dict


def run_program(program: Program, options: RunOptions | None = None) -> RunResult:
    options = options or RunOptions()
    reports: list[LawReport] = []
    dots: dict[str, str] = {}
    for cmd in program.commands:
        if cmd.kind == "report":
            continue
        if cmd.kind == "stone":
            reports.append(_run_stone(program, cmd, dots))
            continue
        mode = "find" if cmd.kind == "find_counterexample" else "check"
        subjects = tuple(program.env[name] for name in cmd.args)
        report = run_law(cmd.law, subjects,
                         options=RunOptions(seed=options.seed, samples=options.samples,
                                            depth=options.depth, jobs=options.jobs,
                                            first_counterexample=options.first_counterexample,
                                            timings=options.timings, mode=mode),
                         subject_names=cmd.args)
        reports.append(report)
        if options.first_counterexample and report.status == "counterexample":
            break
    return RunResult(reports, exit_code(reports), dots)


def _run_stone(program: Program, cmd, dots) -> LawReport:
    algebra = program.env[cmd.args[0]]
    try:
        points = ultrafilters(algebra)
    except NotFinitelyAtomic as exc:
        return LawReport("stone", cmd.args, REFUSED,
                         witnesses=(Witness("error", f"{exc.token()}: {exc}"),))
    space = StoneSpace(algebra, tuple(points))
    text = emit_dot(space)
    witnesses = [Witness("note", f"{len(points)} ultrafilters")]
    if cmd.dot_path is not None:
        dots[cmd.dot_path] = text
        witnesses.append(Witness("note", f"graph written to {cmd.dot_path}"))
    return LawReport("stone", cmd.args, "holds-exhaustive",
                     witnesses=tuple(witnesses), cases_checked=len(points))


def run_source(source: str, options: RunOptions | None = None) -> RunResult:
    return run_program(parse(source), options)


def reports_to_json(reports) -> str:
    return json.dumps([r.to_json_dict() for r in reports], indent=2) + "\n"


def reports_to_text(reports) -> str:
    lines = []
    for r in reports:
        subj = " ".join(r.subjects)
        lines.append(f"{r.law} {subj}: {r.status} ({r.cases_checked} cases)")
        for w in r.witnesses:
            lines.append(f"  [{w.kind}] {w.rendering}")
    return "\n".join(lines) + "\n"
