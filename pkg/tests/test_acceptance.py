"""The acceptance gate: one test per shipped criterion, each printing a
pass/fail line. Everything here must stay green at the stated strength
(exhaustive where exhaustive is promised, zero violations on the pools).
"""

import itertools
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

from proxkit.algebra import SetAlgebra, all_partition_algebras
from proxkit.duality import (
    check_prox_iff_measurable,
    check_roundtrip_algebra,
    check_roundtrip_proximity,
    is_proximity_map,
    proximity_from_algebra,
)
from proxkit.laws import RunOptions, run_law
from proxkit.maps import FunctionSpec, all_functions, compose
from proxkit.pools import integer_pool, interval_pool
from proxkit.proximity import Proximity
from proxkit.reports import HOLDS_EXHAUSTIVE
from proxkit.runner import reports_to_json, run_source
from proxkit.sequences import FunctionSequence
from proxkit.sigma import check_cor_zero_sets, check_sigma_iff_p_aleph1, is_p_aleph1
from proxkit.stone import (
    brute_force_ultrafilters,
    check_smirnov_identity,
    compose_stone_maps,
    stone_map,
    ultrafilters,
)
from proxkit.errors import NotMeasurable
from proxkit.universe import SymSet, Universe

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).resolve().parent / "golden" / "evens_odds_one_point.json"

Z = Universe.integers()
I = Universe.unit_interval()
EVENS = SymSet.periodic(Z, 2, [0])
OPTS = RunOptions(seed=0, samples=300)


def report(criterion: str, detail: str):
    print(f"acceptance {criterion}: PASS ({detail})")


def test_criterion_1_axiom_suite():
    """Axioms and order properties: exhaustive on every small finite algebra,
    zero violations on the two symbolic pools."""
    finite_subjects = 0
    for n in (1, 2, 3, 4):
        u = Universe.finite(n)
        subjects = [Proximity.discrete(u)]
        subjects += [proximity_from_algebra(m) for m in all_partition_algebras(u)]
        for d in subjects:
            for law in ("prox.axioms", "prec.props"):
                rep = run_law(law, (d,), OPTS)
                assert rep.status == HOLDS_EXHAUSTIVE, (law, d.describe(), rep.status)
            finite_subjects += 1
    assert len(integer_pool(Z)) >= 200
    assert len(interval_pool(I)) >= 200
    pool_cases = 0
    for d in (Proximity.one_point(Z), Proximity.metric(I)):
        for law in ("prox.axioms", "prec.props"):
            rep = run_law(law, (d,), OPTS)
            assert rep.holds(), (law, d.describe(), rep.status)
            pool_cases += rep.cases_checked
    report("1", f"{finite_subjects} finite subjects exhaustive, "
                f"{pool_cases} pool cases, zero violations")


def test_criterion_2_duality_round_trips():
    algebras = all_partition_algebras(Universe.finite(4))
    assert len(algebras) == 15
    for m in algebras:
        rep = check_roundtrip_algebra(m)
        assert rep.status == HOLDS_EXHAUSTIVE, (m.describe(), rep.status)
    probed = [Proximity.discrete(Universe.finite(3)),
              Proximity.discrete(Z),
              Proximity.one_point(Z)]
    probed += [proximity_from_algebra(m)
               for m in all_partition_algebras(Universe.finite(3))]
    for d in probed:
        rep = check_roundtrip_proximity(d)
        assert rep.holds(), (d.describe(), rep.status)

    from proxkit.duality import algebra_from_proximity
    induced = algebra_from_proximity(Proximity.one_point(Z))
    assert induced == SetAlgebra.finite_cofinite(Z)
    d_induced = proximity_from_algebra(SetAlgebra.finite_cofinite(Z))
    d = Proximity.one_point(Z)
    pool = integer_pool(Z)
    mismatches = sum(1 for a, b in itertools.product(pool, repeat=2)
                     if d_induced.near(a, b) != d.near(a, b))
    assert mismatches == 0
    report("2", f"15 partition algebras exact, {len(probed)} proximities agree, "
                f"{len(pool) ** 2} one-point pairs agree")


def test_criterion_3_map_equivalence_exhaustive():
    F3, F2 = Universe.finite(3), Universe.finite(2)
    functions = list(all_functions(F3, F2))
    assert len(functions) == 2 ** 3
    instances = 0
    for f, m, n in itertools.product(functions,
                                     all_partition_algebras(F3),
                                     all_partition_algebras(F2)):
        rep = check_prox_iff_measurable(f, m, n)
        assert rep.holds(), (f.render(), m.describe(), n.describe())
        instances += 1
    assert instances == 8 * 5 * 2
    report("3", f"{instances} (function, algebra, algebra) instances agree")


def test_criterion_4_union_property_witnesses():
    rep = is_p_aleph1(proximity_from_algebra(SetAlgebra.finite_cofinite(Z)))
    assert rep.status == "counterexample"
    rendered = [w.rendering for w in rep.witnesses]
    assert "prefixes(periodic(p=2, residues={0}))" in rendered
    assert "periodic(p=2, residues={0})" in rendered

    rep24 = check_sigma_iff_p_aleph1(SetAlgebra.finite_cofinite(Z))
    assert rep24.holds()
    assert any("both sides false" in w.rendering for w in rep24.witnesses)

    rep_one = check_cor_zero_sets(Proximity.one_point(Z))
    assert rep_one.holds()
    one_rendered = [w.rendering for w in rep_one.witnesses]
    assert "both sides false" in one_rendered
    assert "periodic(p=2, residues={0})" in one_rendered

    rep_disc = check_cor_zero_sets(Proximity.discrete(Z))
    assert rep_disc.holds()
    assert "both sides true" in [w.rendering for w in rep_disc.witnesses]
    report("4", "prefix-of-evens counterexample found, agreement certified "
                "on both corollary subjects")


def test_criterion_5_shipped_script_and_golden_file(tmp_path):
    script = ROOT / "scripts" / "evens_odds_one_point.prox"
    outputs = []
    for run in range(2):
        out = tmp_path / f"run{run}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "proxkit.cli", "run", str(script),
             "--seed", "0", "--out", str(out)],
            capture_output=True, text=True, cwd=ROOT)
        assert proc.returncode == 0, proc.stderr
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    assert outputs[0] == GOLDEN.read_bytes()
    payload = json.loads(outputs[0])
    chain_reports = [r for r in payload if r["law"] == "thm.2.7"]
    assert len(chain_reports) == 2
    assert all(r["status"] == "holds-exhaustive" for r in chain_reports)
    near_report = next(r for r in payload if r["law"] == "prox.near")
    assert near_report["status"] == "holds-exhaustive"
    report("5", "script exits 0, chains certified at every level, "
                "byte-stable against the golden file")


def test_criterion_6_pointwise_limits():
    values = [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)]
    metric = Proximity.metric(I)
    checked = 0
    passing = 0
    for n in (1, 2, 3, 4):
        u = Universe.finite(n)
        for m in all_partition_algebras(u):
            d = proximity_from_algebra(m)
            for combo in itertools.product(values, repeat=n):
                f = FunctionSpec.table(u, I, list(combo))
                checked += 1
                if not is_proximity_map(f, d, metric).holds():
                    continue
                # the terms share f's level sets, so they are maps exactly
                # when f is; the limit must then be a map as well
                fs = FunctionSequence.powers(f)
                limit = fs.pointwise_limit()
                assert is_proximity_map(fs.term(1), d, metric).holds()
                assert is_proximity_map(limit, d, metric).holds(), \
                    (m.describe(), f.render())
                passing += 1
    assert passing > 0

    g = FunctionSpec.decay(Z, I, EVENS)
    fs = FunctionSequence.powers(g)
    for k in range(3):
        assert is_proximity_map(fs.term(k), Proximity.one_point(Z), metric).holds()
    limit = fs.pointwise_limit()
    neg = is_proximity_map(limit, Proximity.one_point(Z), metric)
    assert neg.status == "counterexample"
    report("6", f"{checked} finite power sequences checked ({passing} applicable), "
                "negative control produces a non-map limit")


def test_criterion_7_stone_suite():
    counted = 0
    for n in (1, 2, 3):
        u = Universe.finite(n)
        for m in all_partition_algebras(u):
            fast = ultrafilters(m)
            slow = brute_force_ultrafilters(m)
            assert len(fast) == len(m.atom_list()) == len(slow)
            counted += 1

    for m in all_partition_algebras(Universe.finite(4)):
        rep = check_smirnov_identity(m)
        assert rep.status == HOLDS_EXHAUSTIVE

    triples = 0
    sizes = (1, 2, 3)
    for a, b, c in itertools.product(sizes, repeat=3):
        ua, ub, uc = (Universe.finite(k) for k in (a, b, c))
        for m1, m2, m3 in itertools.product(all_partition_algebras(ua),
                                            all_partition_algebras(ub),
                                            all_partition_algebras(uc)):
            for f in all_functions(ua, ub):
                for g in all_functions(ub, uc):
                    try:
                        sf = stone_map(f, m1, m2)
                        sg = stone_map(g, m2, m3)
                    except NotMeasurable:
                        continue
                    direct = stone_map(compose(g, f), m1, m3)
                    assert direct.mapping == compose_stone_maps(sg, sf).mapping
                    triples += 1
    assert triples > 0
    report("7", f"{counted} filter counts match the oracle, 15 identity checks "
                f"exhaustive, {triples} composable triples functorial")


def test_criterion_8_full_sweep_determinism():
    sweep = """\
universe Z = integers
universe X3 = finite(3)
universe U = unit_interval
set E = periodic(p=2, residues={0})
set O = complement(E)
algebra F = finite_cofinite(Z)
algebra M = atoms({0}, {1, 2})
proximity d = one_point(Z)
proximity dm = metric(U)
proximity da = from_algebra(M)
seq ZE = shrink_tail(core=E, tail=O)
fn c : Z -> U = chi(E)
check prox.axioms da
check prec.props da
check thm.2.1.4 M
check thm.2.4 F
check cor.2.8 d
check thm.2.7 d ZE
check prox.map c d dm
check smirnov M
find_counterexample p_aleph1 d
"""
    options = RunOptions(seed=17, samples=200)
    first = reports_to_json(run_source(sweep, options).reports).encode()
    second = reports_to_json(run_source(sweep, options).reports).encode()
    assert first == second
    report("8", f"{len(first)} bytes reproduced exactly under seed 17")
