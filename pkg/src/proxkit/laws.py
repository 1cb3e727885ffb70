"""The law catalog: every checkable statement, keyed by a stable identifier.

Identifiers are part of the external interface (scripts and reports refer
to them), so they never change. Each entry knows its subject signature, a
one-line description, and a checker that returns a LawReport. The
``run_law`` dispatcher adds seeding, timing, and refusal handling.
"""

from __future__ import annotations

import itertools
import random
import time
import zlib
from dataclasses import dataclass, replace
from fractions import Fraction

from . import duality, sigma, stone
from .algebra import SetAlgebra
from .errors import ArityMismatch, ProxError
from .maps import FunctionSpec, compose
from .pools import pool_for
from .proximity import Proximity, ProximityKind
from .reports import (
    COUNTEREXAMPLE,
    HOLDS_EXHAUSTIVE,
    HOLDS_ON_FAMILY,
    INCONCLUSIVE,
    REFUSED,
    LawReport,
    Witness,
    note,
    witness_pair,
    witness_set,
)
from .universe import SymSet, Universe


@dataclass(frozen=True)
class RunOptions:
    seed: int = 0
    samples: int = 800
    depth: int = 16
    jobs: int = 1
    first_counterexample: bool = False
    timings: bool = False
    mode: str = "check"  # or "find"


def _law_seed(law_id: str, seed: int) -> int:
    return zlib.crc32(law_id.encode()) ^ seed


def _probes(d: Proximity):
    if d.carrier.is_finite():
        return duality._subsets_of(d.universe, d.carrier), True
    pool = pool_for(d.universe)
    if not d.carrier.is_whole():
        from .pools import carrier_pool
        pool = carrier_pool(d.universe, d.carrier)
    return list(pool), False


def _sample_tuples(rng: random.Random, pool, arity: int, count: int):
    for _ in range(count):
        yield tuple(rng.choice(pool) for _ in range(arity))


# ---------------------------------------------------------------------------
# nearness axioms and strongly-below properties


def check_axioms(d: Proximity, options: RunOptions) -> LawReport:
    """Symmetry, additivity, no empty relata, interpolation, intersection."""
    probes, exhaustive = _probes(d)
    rng = random.Random(_law_seed("prox.axioms", options.seed))
    empty = SymSet.empty(d.universe)
    cases = 0
    for a, b in itertools.product(probes, repeat=2):
        cases += 1
        if d.near(a, b) != d.near(b, a):
            return _axiom_fail(d, "a near b must mean b near a", a, b, cases)
        if d.near(a, b) and (a.is_empty() or b.is_empty()):
            return _axiom_fail(d, "nothing is near the empty set", a, b, cases)
        if a.intersects(b) and not d.near(a, b):
            return _axiom_fail(d, "intersecting sets must be near", a, b, cases)
    if exhaustive:
        triples = itertools.product(probes, repeat=3)
    else:
        triples = _sample_tuples(rng, probes, 3, options.samples)
    for a, b, c in triples:
        cases += 1
        if d.near(a | b, c) != (d.near(a, c) or d.near(b, c)):
            return LawReport("prox.axioms", (d.describe(),), COUNTEREXAMPLE,
                             witnesses=(witness_pair(a, b), witness_set(c),
                                        note("union additivity fails")),
                             cases_checked=cases)
    if exhaustive:
        interp_pairs = itertools.product(probes, repeat=2)
    else:
        interp_pairs = _sample_tuples(rng, probes, 2, options.samples)
    for a, b in interp_pairs:
        if d.near(a, b):
            continue
        cases += 1
        try:
            c = d.interpolate(a, d.complement_in(b))
        except ProxError:
            return _axiom_fail(d, "no interpolating set exists", a, b, cases)
        e = d.complement_in(c)
        if d.near(a, e) or d.near(d.complement_in(e), b):
            return _axiom_fail(d, "the produced interpolant fails", a, b, cases)
    wits = []
    sep = d.separation_witness()
    if sep is not None:
        wits.append(note(f"not separated: the points {sep[0]} and {sep[1]} are near"))
    status = HOLDS_EXHAUSTIVE if exhaustive else HOLDS_ON_FAMILY
    return LawReport("prox.axioms", (d.describe(),), status,
                     witnesses=tuple(wits), cases_checked=cases)


def _axiom_fail(d, message, a, b, cases):
    return LawReport("prox.axioms", (d.describe(),), COUNTEREXAMPLE,
                     witnesses=(witness_pair(a, b), note(message)), cases_checked=cases)


def check_separated(d: Proximity, options: RunOptions) -> LawReport:
    sep = d.separation_witness()
    if sep is None:
        return LawReport("prox.separated", (d.describe(),), HOLDS_EXHAUSTIVE,
                         cases_checked=1)
    return LawReport("prox.separated", (d.describe(),), COUNTEREXAMPLE,
                     witnesses=(note(f"the distinct points {sep[0]} and {sep[1]} are near"),),
                     cases_checked=1)


def check_prec_properties(d: Proximity, options: RunOptions) -> LawReport:
    """The six properties of the strongly-below order."""
    probes, exhaustive = _probes(d)
    rng = random.Random(_law_seed("prec.props", options.seed))
    subj = (d.describe(),)
    sb = d.strongly_below
    whole = d.carrier
    cases = 1
    if not sb(whole, whole):
        return LawReport("prec.props", subj, COUNTEREXAMPLE,
                         witnesses=(note("the carrier is not strongly below itself"),),
                         cases_checked=cases)
    pairs = itertools.product(probes, repeat=2) if exhaustive \
        else _sample_tuples(rng, probes, 2, options.samples)
    for a, b in pairs:
        cases += 1
        if not sb(a, b):
            continue
        if not a.issubset(b):
            return LawReport("prec.props", subj, COUNTEREXAMPLE,
                             witnesses=(witness_pair(a, b), note("strongly below must imply containment")),
                             cases_checked=cases)
        ca, cb = d.complement_in(a), d.complement_in(b)
        if not sb(cb, ca):
            return LawReport("prec.props", subj, COUNTEREXAMPLE,
                             witnesses=(witness_pair(a, b), note("complements must reverse the order")),
                             cases_checked=cases)
        try:
            c = d.interpolate(a, b)
        except ProxError:
            return LawReport("prec.props", subj, COUNTEREXAMPLE,
                             witnesses=(witness_pair(a, b), note("no interpolant between the pair")),
                             cases_checked=cases)
        if not (sb(a, c) and sb(c, b)):
            return LawReport("prec.props", subj, COUNTEREXAMPLE,
                             witnesses=(witness_pair(a, b), witness_set(c),
                                        note("the interpolant fails")),
                             cases_checked=cases)
    triples = itertools.product(probes, repeat=3) if exhaustive \
        else _sample_tuples(rng, probes, 3, options.samples)
    for a, b1, b2 in triples:
        cases += 1
        if sb(a, b1) and sb(a, b2) and not sb(a, b1 & b2):
            return LawReport("prec.props", subj, COUNTEREXAMPLE,
                             witnesses=(witness_set(a), witness_pair(b1, b2),
                                        note("finite meets on the right fail")),
                             cases_checked=cases)
    squeeze = itertools.product(probes, repeat=2) if exhaustive \
        else _sample_tuples(rng, probes, 2, options.samples)
    shrink = probes[: max(3, len(probes) // 8)]
    for b, c in squeeze:
        if not sb(b, c):
            continue
        for x in shrink[:3]:
            cases += 1
            a, dd = b & x, c | x
            if not sb(a, dd):
                return LawReport("prec.props", subj, COUNTEREXAMPLE,
                                 witnesses=(witness_pair(a, dd),
                                            note("shrinking the left or growing the right must keep the order")),
                                 cases_checked=cases)
    status = HOLDS_EXHAUSTIVE if exhaustive else HOLDS_ON_FAMILY
    return LawReport("prec.props", subj, status, cases_checked=cases)


def check_near(d: Proximity, a: SymSet, b: SymSet, options: RunOptions) -> LawReport:
    verdict = d.near(a, b)
    status = HOLDS_EXHAUSTIVE if verdict else COUNTEREXAMPLE
    return LawReport("prox.near", (d.describe(), a.render(), b.render()), status,
                     witnesses=(note(f"near = {verdict}"),), cases_checked=1)


def check_closure_laws(d: Proximity, options: RunOptions) -> LawReport:
    """Closure fixes the empty set, is extensive, idempotent, and distributes
    over pairwise unions."""
    probes, exhaustive = _probes(d)
    subj = (d.describe(),)
    cases = 1
    if not d.closure(SymSet.empty(d.universe)).is_empty():
        return LawReport("prox.closure", subj, COUNTEREXAMPLE,
                         witnesses=(note("the empty set grows under closure"),),
                         cases_checked=cases)
    for a in probes:
        cases += 1
        ca = d.closure(a)
        if not a.issubset(ca) or d.closure(ca) != ca:
            return LawReport("prox.closure", subj, COUNTEREXAMPLE,
                             witnesses=(witness_set(a),
                                        note("extensivity or idempotence fails")),
                             cases_checked=cases)
    rng = random.Random(_law_seed("prox.closure", options.seed))
    pairs = itertools.product(probes, repeat=2) if exhaustive \
        else _sample_tuples(rng, probes, 2, min(options.samples, 400))
    for a, b in pairs:
        cases += 1
        if d.closure(a | b) != d.closure(a) | d.closure(b):
            return LawReport("prox.closure", subj, COUNTEREXAMPLE,
                             witnesses=(witness_pair(a, b), note("unions break under closure")),
                             cases_checked=cases)
    status = HOLDS_EXHAUSTIVE if exhaustive else HOLDS_ON_FAMILY
    return LawReport("prox.closure", subj, status, cases_checked=cases)


def check_subspace(d: Proximity, options: RunOptions) -> LawReport:
    """Restriction changes nothing: nearness inside the carrier is inherited."""
    if d.kind is not ProximityKind.SUBSPACE:
        raise ArityMismatch("the subspace law needs a subspace proximity")
    probes, exhaustive = _probes(d)
    cases = 0
    for a, b in itertools.product(probes, repeat=2):
        cases += 1
        if d.near(a, b) != d.parent.near(a, b):
            return LawReport("prox.subspace", (d.describe(),), COUNTEREXAMPLE,
                             witnesses=(witness_pair(a, b),), cases_checked=cases)
    status = HOLDS_EXHAUSTIVE if exhaustive else HOLDS_ON_FAMILY
    return LawReport("prox.subspace", (d.describe(),), status, cases_checked=cases)


def check_compact_coherence(d: Proximity, options: RunOptions) -> LawReport:
    """On the plain integers, one-point nearness must match closure
    intersection in the infinity-extended universe."""
    if d.kind is not ProximityKind.ONE_POINT or d.universe.with_infinity:
        raise ArityMismatch("the coherence law reads a one-point proximity on the plain integers")
    extended = Universe.integers(with_infinity=True)
    d_ext = Proximity.one_point(extended)
    probes, _ = _probes(d)
    cases = 0
    for a, b in itertools.product(probes, repeat=2):
        cases += 1
        la, lb = _lift(a, extended), _lift(b, extended)
        meets = d_ext.closure(la).intersects(d_ext.closure(lb))
        if d.near(a, b) != meets:
            return LawReport("ex.1.3", (d.describe(),), COUNTEREXAMPLE,
                             witnesses=(witness_pair(a, b),), cases_checked=cases)
    return LawReport("ex.1.3", (d.describe(),), HOLDS_ON_FAMILY, cases_checked=cases)


def _lift(s: SymSet, extended: Universe) -> SymSet:
    p = s.payload
    plus = [n for n in p.flips if not p.pattern(n)]
    minus = [n for n in p.flips if p.pattern(n)]
    return SymSet.periodic(extended, p.period, p.residues, plus=plus, minus=minus)


# ---------------------------------------------------------------------------
# composite laws


def check_algebra_induces_proximity(m: SetAlgebra, options: RunOptions) -> LawReport:
    """The induced relation is a zero-dimensional proximity."""
    d = duality.proximity_from_algebra(m)
    ax = check_axioms(d, options)
    if not ax.holds():
        return replace(ax, law="thm.2.1.2")
    zd = duality.is_zero_dimensional(d)
    status = zd.status if not zd.holds() else (
        HOLDS_EXHAUSTIVE if ax.status == HOLDS_EXHAUSTIVE and zd.status == HOLDS_EXHAUSTIVE
        else HOLDS_ON_FAMILY)
    return LawReport("thm.2.1.2", (m.describe(),), status,
                     witnesses=zd.witnesses,
                     cases_checked=ax.cases_checked + zd.cases_checked)


def check_composition_with_unit_maps(f: FunctionSpec, d: Proximity, r: Proximity,
                                     options: RunOptions) -> LawReport:
    """Being a proximity map is equivalent to every composition with a
    unit-interval proximity map being one; checked against a map pool."""
    subj = (f.render(), d.describe(), r.describe())
    unit = Universe.unit_interval()
    metric = Proximity.metric(unit)
    lhs = duality.is_proximity_map(f, d, r)
    pool_maps = [FunctionSpec.constant(r.universe, unit, Fraction(0)),
                 FunctionSpec.constant(r.universe, unit, Fraction(1, 2))]
    for s in pool_for(r.universe)[:12]:
        g = FunctionSpec.characteristic(r.universe, unit, s)
        if duality.is_proximity_map(g, r, metric).holds():
            pool_maps.append(g)
    cases = lhs.cases_checked
    if lhs.holds():
        for g in pool_maps:
            cases += 1
            if not duality.is_proximity_map(compose(g, f), d, metric).holds():
                return LawReport("lem.2.14", subj, COUNTEREXAMPLE, cases_checked=cases,
                                 witnesses=(Witness("function", g.render()),
                                            note("a composition escapes although the map holds; "
                                                 "alarm: this contradicts a theorem")))
        return LawReport("lem.2.14", subj, HOLDS_ON_FAMILY, cases_checked=cases,
                         witnesses=(note("the map holds and every pooled composition holds"),))
    for g in pool_maps:
        cases += 1
        if not duality.is_proximity_map(compose(g, f), d, metric).holds():
            return LawReport("lem.2.14", subj, HOLDS_ON_FAMILY, cases_checked=cases,
                             witnesses=(Witness("function", g.render()),
                                        note("the map fails and this composition witnesses it")))
    g = _separating_unit_map(r, f, lhs)
    if g is not None:
        cases += 1
        if not duality.is_proximity_map(compose(g, f), d, metric).holds():
            return LawReport("lem.2.14", subj, HOLDS_ON_FAMILY, cases_checked=cases,
                             witnesses=(Witness("function", g.render()),
                                        note("the constructed separator composition witnesses the failure")))
    return LawReport("lem.2.14", subj, INCONCLUSIVE, cases_checked=cases,
                     witnesses=(note("the pool holds no unit-interval map sharp enough "
                                     "to reflect the failure"),))


def _separating_unit_map(r: Proximity, f: FunctionSpec, lhs: LawReport):
    """A unit-interval map built from a member of the target's algebra; for
    atom-based targets these are sharp enough to reflect failures."""
    try:
        m = duality.algebra_from_proximity(r)
    except ProxError:
        return None
    if not m.is_finitely_atomic():
        return None
    unit = Universe.unit_interval()
    for atom in m.atom_list():
        g = FunctionSpec.characteristic(r.universe, unit, r.complement_in(atom))
        if duality.is_proximity_map(g, r, Proximity.metric(unit)).holds():
            return g
    return None


def check_functoriality(f: FunctionSpec, g: FunctionSpec,
                        m1: SetAlgebra, m2: SetAlgebra, m3: SetAlgebra,
                        options: RunOptions) -> LawReport:
    """Identities are maps and composites of maps are maps, on both sides of
    the correspondence."""
    subj = (f.render(), g.render(), m1.describe(), m2.describe(), m3.describe())
    d1, d2, d3 = (duality.proximity_from_algebra(m) for m in (m1, m2, m3))
    cases = 0
    ident = duality.is_proximity_map(FunctionSpec.identity(m1.universe), d1, d1)
    cases += ident.cases_checked
    if not ident.holds():
        return LawReport("cor.2.5", subj, COUNTEREXAMPLE, cases_checked=cases,
                         witnesses=(note("the identity fails to be a proximity map"),))
    fp = duality.is_proximity_map(f, d1, d2)
    gp = duality.is_proximity_map(g, d2, d3)
    cases += fp.cases_checked + gp.cases_checked
    if fp.holds() and gp.holds():
        gf = compose(g, f)
        both = duality.is_proximity_map(gf, d1, d3)
        cases += both.cases_checked
        if not both.holds():
            return LawReport("cor.2.5", subj, COUNTEREXAMPLE, cases_checked=cases,
                             witnesses=both.witnesses + (note("the composite escapes"),))
        mf, _, _ = duality.measurable_side(f, m1, m2)
        mg, _, _ = duality.measurable_side(g, m2, m3)
        mgf, _, _ = duality.measurable_side(gf, m1, m3)
        cases += 3
        if mf and mg and not mgf:
            return LawReport("cor.2.5", subj, COUNTEREXAMPLE, cases_checked=cases,
                             witnesses=(note("preimage closure breaks under composition"),))
    status = HOLDS_EXHAUSTIVE if m1.carrier.is_finite() and m2.carrier.is_finite() \
        and m3.carrier.is_finite() else HOLDS_ON_FAMILY
    return LawReport("cor.2.5", subj, status, cases_checked=cases)


def check_lindelof_cozero(d: Proximity, u: SymSet, options: RunOptions) -> LawReport:
    """Open sets must carry a chain certificate for their complements."""
    chain = sigma.lindelof_cozero_chain(d, u)
    rep = sigma.is_prec_chain(d, chain, probe_depth=options.depth)
    subj = (d.describe(), u.render())
    if rep.status != HOLDS_EXHAUSTIVE:
        return replace(rep, law="thm.2.9", subjects=subj)
    if chain.limit_intersection() != d.complement_in(u):
        return LawReport("thm.2.9", subj, COUNTEREXAMPLE,
                         witnesses=(Witness("sequence", chain.render()),
                                    note("the chain misses the complement")),
                         cases_checked=rep.cases_checked)
    return LawReport("thm.2.9", subj, HOLDS_EXHAUSTIVE,
                     witnesses=(Witness("sequence", chain.render()),),
                     cases_checked=rep.cases_checked)


# ---------------------------------------------------------------------------
# the catalog


@dataclass(frozen=True)
class LawEntry:
    arg_kinds: tuple
    description: str
    runner: object


def _catalog() -> dict:
    return {
        "prox.axioms": LawEntry(("proximity",),
                                "the five nearness axioms",
                                lambda s, o: check_axioms(s[0], o)),
        "prox.separated": LawEntry(("proximity",),
                                   "distinct points are never near",
                                   lambda s, o: check_separated(s[0], o)),
        "prec.props": LawEntry(("proximity",),
                               "the six strongly-below properties",
                               lambda s, o: check_prec_properties(s[0], o)),
        "prox.near": LawEntry(("proximity", "set", "set"),
                              "evaluate a single nearness instance",
                              lambda s, o: check_near(s[0], s[1], s[2], o)),
        "prox.closure": LawEntry(("proximity",),
                                 "closure is a topological closure operator",
                                 lambda s, o: check_closure_laws(s[0], o)),
        "prox.subspace": LawEntry(("proximity",),
                                  "restriction inherits nearness from the parent",
                                  lambda s, o: check_subspace(s[0], o)),
        "ex.1.3": LawEntry(("proximity",),
                           "one-point nearness equals closure intersection "
                           "in the extended universe",
                           lambda s, o: check_compact_coherence(s[0], o)),
        "zero_dim": LawEntry(("proximity",),
                             "strongly-below pairs admit self-proximal interpolants",
                             lambda s, o: duality.is_zero_dimensional(s[0])),
        "p_aleph1": LawEntry(("proximity",),
                             "strongly-below is closed under countable unions",
                             lambda s, o: sigma.is_p_aleph1(s[0])),
        "thm.2.1.1": LawEntry(("proximity",),
                              "self-proximal sets form an algebra",
                              lambda s, o: duality.check_algebra_of_sets(s[0])),
        "thm.2.1.2": LawEntry(("algebra",),
                              "an algebra induces a zero-dimensional proximity",
                              lambda s, o: check_algebra_induces_proximity(s[0], o)),
        "thm.2.1.3": LawEntry(("proximity",),
                              "rebuilding from the induced algebra returns the relation",
                              lambda s, o: duality.check_roundtrip_proximity(s[0])),
        "thm.2.1.4": LawEntry(("algebra",),
                              "rebuilding from the induced relation returns the algebra",
                              lambda s, o: duality.check_roundtrip_algebra(s[0])),
        "thm.2.1.5": LawEntry(("proximity",),
                              "induced members form a basis of the induced topology",
                              lambda s, o: duality.check_basis(s[0])),
        "thm.2.2": LawEntry(("function", "algebra", "algebra"),
                            "proximity maps are exactly the measurable maps",
                            lambda s, o: duality.check_prox_iff_measurable(s[0], s[1], s[2])),
        "thm.2.3": LawEntry(("proximity",),
                            "the countable-union property forces zero-dimensionality",
                            lambda s, o: sigma.check_p_aleph1_implies_zerodim(s[0])),
        "thm.2.4": LawEntry(("algebra",),
                            "countable-union closure matches the union property",
                            lambda s, o: sigma.check_sigma_iff_p_aleph1(s[0])),
        "thm.2.7": LawEntry(("proximity", "sequence"),
                            "certify a descending strongly-below chain",
                            lambda s, o: sigma.is_prec_chain(s[0], s[1], probe_depth=o.depth)),
        "cor.2.8": LawEntry(("proximity",),
                            "union property matches zero sets living in the algebra",
                            lambda s, o: sigma.check_cor_zero_sets(s[0])),
        "thm.2.9": LawEntry(("proximity", "set"),
                            "open sets have certified cozero complements",
                            lambda s, o: check_lindelof_cozero(s[0], s[1], o)),
        "thm.2.12": LawEntry(("function", "algebra", "proximity"),
                             "maps from union-closed sources factor through the coreflection",
                             lambda s, o: sigma.check_factorization(s[0], s[1], s[2])),
        "lem.2.14": LawEntry(("function", "proximity", "proximity"),
                             "compositions with unit-interval maps detect proximity maps",
                             lambda s, o: check_composition_with_unit_maps(s[0], s[1], s[2], o)),
        "thm.2.15": LawEntry(("proximity", "fnseq", "proximity"),
                             "pointwise limits of proximity maps stay proximity maps",
                             lambda s, o: sigma.check_pointwise_closure(
                                 s[0], s[1], s[2],
                                 require_union_property=(o.mode == "check"))),
        "smirnov": LawEntry(("algebra",),
                            "nearness equals meeting a common filter-space point",
                            lambda s, o: stone.check_smirnov_identity(s[0])),
        "cor.2.5": LawEntry(("function", "function", "algebra", "algebra", "algebra"),
                            "identity and composition respect both sides of the duality",
                            lambda s, o: check_functoriality(s[0], s[1], s[2], s[3], s[4], o)),
        "prox.map": LawEntry(("function", "proximity", "proximity"),
                             "the map sends near pairs to near pairs",
                             lambda s, o: duality.is_proximity_map(s[0], s[1], s[2])),
    }


CATALOG = _catalog()

_KIND_TYPES = {
    "proximity": Proximity,
    "algebra": SetAlgebra,
    "set": SymSet,
    "function": FunctionSpec,
}


def expected_kinds(law_id: str):
    if law_id not in CATALOG:
        raise ArityMismatch(f"unknown law {law_id!r}")
    return CATALOG[law_id].arg_kinds


def subject_kind(value) -> str:
    from .sequences import FunctionSequence, SetSequence
    if isinstance(value, Proximity):
        return "proximity"
    if isinstance(value, SetAlgebra):
        return "algebra"
    if isinstance(value, SymSet):
        return "set"
    if isinstance(value, SetSequence):
        return "sequence"
    if isinstance(value, FunctionSequence):
        return "fnseq"
    if isinstance(value, FunctionSpec):
        return "function"
    return "unknown"


def run_law(law_id: str, subjects, options: RunOptions | None = None,
            subject_names=None) -> LawReport:
    """Dispatch one law, turning precondition errors into refusals."""
    options = options or RunOptions()
    entry = CATALOG.get(law_id)
    if entry is None:
        raise ArityMismatch(f"unknown law {law_id!r}")
    if len(subjects) != len(entry.arg_kinds):
        raise ArityMismatch(
            f"{law_id} wants {len(entry.arg_kinds)} subjects, got {len(subjects)}")
    for value, kind in zip(subjects, entry.arg_kinds):
        if subject_kind(value) != kind:
            raise ArityMismatch(
                f"{law_id} wants a {kind}, got a {subject_kind(value)}")
    started = time.perf_counter()
    try:
        report = entry.runner(subjects, options)
    except ArityMismatch:
        raise
    except ProxError as exc:
        report = LawReport(law_id, tuple(_describe(s) for s in subjects), REFUSED,
                           witnesses=(Witness("error", f"{exc.token()}: {exc}"),))
    elapsed = int((time.perf_counter() - started) * 1000)
    if subject_names is not None:
        report = replace(report, subjects=tuple(subject_names))
    return replace(report, seed=options.seed,
                   elapsed_ms=elapsed if options.timings else 0)


def _describe(subject) -> str:
    for attr in ("describe", "render"):
        fn = getattr(subject, attr, None)
        if fn is not None:
            return fn()
    return repr(subject)
