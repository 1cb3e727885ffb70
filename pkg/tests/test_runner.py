"""Program execution: exit codes, determinism, witness re-verification,
graph output, and the command line."""

import json
import subprocess
import sys
from pathlib import Path

from proxkit.dsl import parse_set
from proxkit.laws import RunOptions
from proxkit.runner import reports_to_json, reports_to_text, run_source
from proxkit.sequences import SetSequence
from proxkit.sigma import is_p_aleph1, prec_all_terms
from proxkit.proximity import Proximity
from proxkit.universe import Universe

SCRIPT_DIR = Path(__file__).resolve().parent.parent / "scripts"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

HOLDS_SCRIPT = """\
universe Z = integers
set E = periodic(p=2, residues={0})
proximity d = one_point(Z)
check prox.near d E E
"""

FAILING_SCRIPT = """\
universe Z = integers
algebra F = finite_cofinite(Z)
proximity dM = from_algebra(F)
find_counterexample p_aleph1 dM
"""

REFUSED_SCRIPT = """\
universe U = unit_interval
proximity dm = metric(U)
check thm.2.1.3 dm
"""


def test_exit_code_zero_when_everything_holds():
    result = run_source(HOLDS_SCRIPT)
    assert result.exit_code == 0
    assert all(r.holds() for r in result.reports)


def test_exit_code_one_for_counterexamples():
    result = run_source(FAILING_SCRIPT)
    assert result.exit_code == 1
    rep = result.reports[0]
    assert rep.status == "counterexample"
    assert "prefixes(periodic(p=2, residues={0}))" in [w.rendering for w in rep.witnesses]


def test_exit_code_three_for_refusals():
    result = run_source(REFUSED_SCRIPT)
    assert result.exit_code == 3


def test_reports_are_byte_identical_across_runs():
    options = RunOptions(seed=11, samples=120)
    first = reports_to_json(run_source(FAILING_SCRIPT, options).reports)
    second = reports_to_json(run_source(FAILING_SCRIPT, options).reports)
    assert first == second


def test_json_shape_and_field_order():
    result = run_source(HOLDS_SCRIPT, RunOptions(seed=5))
    payload = json.loads(reports_to_json(result.reports))
    assert list(payload[0]) == ["law", "subjects", "status", "witnesses",
                                "cases_checked", "seed", "elapsed_ms"]
    assert payload[0]["seed"] == 5
    assert payload[0]["elapsed_ms"] == 0


def test_counterexample_witnesses_reverify():
    """Feeding the rendered witnesses back through the law must refute again."""
    Z = Universe.integers()
    d = Proximity.one_point(Z)
    rep = is_p_aleph1(d)
    assert rep.status == "counterexample"
    seq_text = next(w.rendering for w in rep.witnesses if w.kind == "sequence")
    target_text = next(w.rendering for w in rep.witnesses if w.kind == "set")
    assert seq_text.startswith("prefixes(")
    inner = parse_set(seq_text[len("prefixes("):-1], Z)
    target = parse_set(target_text, Z)
    rebuilt = SetSequence.prefixes(inner)
    assert prec_all_terms(d, rebuilt, target) is True
    assert not d.strongly_below(rebuilt.limit_union(), target)


def test_near_counterexample_reverifies():
    result = run_source("""\
universe Z = integers
set A = {0, 2}
set B = periodic(p=2, residues={1})
proximity d = one_point(Z)
check prox.near d A B
""")
    assert result.exit_code == 1
    Z = Universe.integers()
    d = Proximity.one_point(Z)
    assert not d.near(parse_set("{0, 2}", Z), parse_set("periodic(p=2, residues={1})", Z))


def test_stone_command_writes_graphs(tmp_path):
    script = """\
universe X3 = finite(3)
algebra M = atoms({0}, {1, 2})
stone M --dot "%s"
""" % (tmp_path / "space.dot")
    result = run_source(script)
    assert result.exit_code == 0
    assert result.reports[0].law == "stone"
    path, text = next(iter(result.dot_outputs.items()))
    Path(path).write_text(text, encoding="utf-8")
    written = (tmp_path / "space.dot").read_text(encoding="utf-8")
    assert written.startswith("digraph stone {")
    assert '"U1" [label="{1, 2}"]' in written


def test_stone_command_refuses_unbounded_algebras():
    result = run_source("""\
universe Z = integers
algebra F = finite_cofinite(Z)
stone F
""")
    assert result.exit_code == 3
    assert result.reports[0].status == "refused"
    assert "NotFinitelyAtomic" in result.reports[0].witnesses[0].rendering


def test_text_format():
    result = run_source(HOLDS_SCRIPT)
    text = reports_to_text(result.reports)
    assert "prox.near d E E: holds-exhaustive" in text


def test_cli_end_to_end(tmp_path):
    dot_target = tmp_path / "space.dot"
    script = tmp_path / "demo.prox"
    script.write_text(HOLDS_SCRIPT + f"""\
universe X3 = finite(3)
algebra M = atoms({{0}}, {{1, 2}})
stone M --dot "{dot_target}"
""", encoding="utf-8")
    proc = subprocess.run(
        [sys.executable, "-m", "proxkit.cli", "run", str(script), "--format", "json"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload[0]["status"] == "holds-exhaustive"
    assert dot_target.read_text(encoding="utf-8").startswith("digraph stone {")

    bad = tmp_path / "bad.prox"
    bad.write_text("universe Z = integers\ncheck prox.near missing missing missing\n",
                   encoding="utf-8")
    proc = subprocess.run(
        [sys.executable, "-m", "proxkit.cli", "run", str(bad)],
        capture_output=True, text=True)
    assert proc.returncode == 2
    assert "unknown identifier" in proc.stderr


def test_cli_laws_listing():
    proc = subprocess.run([sys.executable, "-m", "proxkit.cli", "laws"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "thm.2.1.4" in proc.stdout


def test_shipped_script_passes():
    source = (SCRIPT_DIR / "evens_odds_one_point.prox").read_text(encoding="utf-8")
    result = run_source(source)
    assert result.exit_code == 0
    assert [r.law for r in result.reports] == ["thm.2.7", "thm.2.7", "prox.near"]
    assert all(r.status == "holds-exhaustive" for r in result.reports)
