"""Countable-family machinery: descending chains, the countable-union
property, zero-set certification, the induced Baire algebra, the
coreflection, and pointwise-limit closure.

Quantification over all indices is handled by closed-form rules attached to
the sequence kinds, never by silently truncating. A check that can only
probe finitely many levels says so instead of reporting a proof.
"""

from __future__ import annotations

import itertools

from .algebra import AlgebraKind, SetAlgebra
from .duality import (
    _structure_class,
    _subsets_of,
    algebra_from_proximity,
    is_proximity_map,
    is_zero_dimensional,
    proximity_from_algebra,
)
from .errors import (
    ChainOnlyProbed,
    NotAChain,
    NotOpen,
    PreconditionFailed,
    PreconditionNotEstablished,
    SourceNotSigma,
    TargetUnsupported,
    UniverseMismatch,
    UnsupportedKind,
)
from .pools import carrier_pool, closed_interval_pool, pool_for
from .proximity import Proximity, ProximityKind
from .reports import (
    COUNTEREXAMPLE,
    HOLDS_EXHAUSTIVE,
    HOLDS_ON_FAMILY,
    INCONCLUSIVE,
    LawReport,
    Witness,
    note,
    witness_set,
)
from .sequences import FunctionSequence, SetSequence
from .universe import INFINITY, SymSet, UniverseKind

_DISCRETE = "discrete"
_ONE_POINT = "one_point"
_METRIC = "metric"


# ---------------------------------------------------------------------------
# chain certification


def chain_rule_decided(d: Proximity, z: SetSequence) -> bool | None:
    """Whether every level sits strongly below the previous one, by rule.

    True and False are proofs about all levels; None means the closed forms
    available cannot settle it and only probing remains.
    """
    k = z.kind
    sb = d.strongly_below
    if k == "constant":
        a = z.data[0]
        return sb(a, a)
    if k == "list_then_constant":
        items, tail = z.data
        chain = list(items) + [tail]
        steps = all(sb(b, a) for a, b in zip(chain, chain[1:]))
        return steps and sb(tail, tail)
    if k == "prefixes":
        return z.data[0].is_empty()
    if k == "shrink_tail":
        cls = _structure_class(d)
        if cls == _DISCRETE:
            return True
        if cls == _ONE_POINT:
            # every predicate feeding the nearness test (size classes of the
            # level, of its complement, and infinity membership) is the same
            # at every level, so one level decides them all
            return sb(z.term(1), z.term(0))
        if d.kind is ProximityKind.FROM_ALGEBRA and d.algebra.is_finitely_atomic():
            constant_gap = z.universe_complement(z.limit_union())
            hull = d.algebra.saturate(z.term(1))
            if hull.intersects(constant_gap):
                return False
            if not hull.intersects(z.universe_complement(z.limit_intersection())):
                return True
            return None
        return None
    if k == "interval_shrink":
        if d.kind is ProximityKind.METRIC:
            return True
        return None
    inner = z.data[0]
    if inner.kind == "constant":
        a = z.term(0)
        return sb(a, a)
    return None


def is_prec_chain(d: Proximity, z: SetSequence, probe_depth: int = 16) -> LawReport:
    """Certify a descending strongly-below chain, law ``thm.2.7``."""
    if z.universe != d.universe:
        raise UniverseMismatch("the sequence lives in a different universe")
    subj = (d.describe(), z.render())
    cases = 0
    for n in range(probe_depth):
        cases += 1
        if not d.strongly_below(z.term(n + 1), z.term(n)):
            return LawReport("thm.2.7", subj, COUNTEREXAMPLE,
                             witnesses=(note(f"level {n + 1} is not strongly below level {n}"),
                                        witness_set(z.term(n + 1)), witness_set(z.term(n))),
                             cases_checked=cases)
    rule = chain_rule_decided(d, z)
    if rule is True:
        return LawReport("thm.2.7", subj, HOLDS_EXHAUSTIVE, cases_checked=cases,
                         witnesses=(note("every level is settled by the closed form"),))
    if rule is False:
        return LawReport("thm.2.7", subj, COUNTEREXAMPLE, cases_checked=cases,
                         witnesses=(note("the closed form refutes some level beyond the probes"),))
    return LawReport("thm.2.7", subj, INCONCLUSIVE, cases_checked=cases,
                     witnesses=(note(f"only {probe_depth} levels probed, no rule applies"),))


def proximally_zero_from_chain(d: Proximity, z: SetSequence) -> SymSet:
    """The intersection of a rule-certified chain, a proximally zero set."""
    rule = chain_rule_decided(d, z)
    if rule is False:
        raise NotAChain("some level is not strongly below its predecessor")
    if rule is None:
        raise ChainOnlyProbed("no closed form certifies every level of this sequence")
    return z.limit_intersection()


def zero_set_certificate(d: Proximity, r: SymSet) -> SetSequence | None:
    """A rule-certified chain with intersection r, when one is known."""
    candidates = []
    if d.strongly_below(r, r):
        candidates.append(SetSequence.constant(r))
    if d.universe.kind is UniverseKind.INTEGERS and _structure_class(d) == _ONE_POINT:
        candidates.append(SetSequence.shrink_tail(r, d.complement_in(r)))
    if d.kind is ProximityKind.METRIC and \
            all(iv.lo_closed and iv.hi_closed for iv in r.payload.intervals):
        candidates.append(SetSequence.interval_shrink(r))
    for z in candidates:
        if chain_rule_decided(d, z) is True and z.limit_intersection() == r:
            return z
    return None


# ---------------------------------------------------------------------------
# the countable-union property


def prec_all_terms(d: Proximity, z: SetSequence, b: SymSet) -> bool | None:
    """Whether term(n) is strongly below b for every n, decided by rule."""
    sb = d.strongly_below
    if sb(z.limit_union(), b):
        return True  # every term sits inside the union
    k = z.kind
    if k in ("constant", "shrink_tail", "interval_shrink"):
        return sb(z.term(0), b)
    if k == "list_then_constant":
        items, tail = z.data
        return all(sb(x, b) for x in items) and sb(tail, b)
    if k == "prefixes":
        # a finite set is strongly below b exactly when it avoids the
        # closure of b's complement, by finite additivity
        s = z.data[0]
        return not s.intersects(d.closure(d.complement_in(b)))
    if k == "complements" and z.data[0].kind == "interval_shrink" \
            and d.kind is ProximityKind.METRIC:
        target = z.data[0].data[0]
        missing = d.complement_in(b) - target
        return missing.is_empty()
    return None


def is_p_aleph1(d: Proximity, pool_limit: int | None = None) -> LawReport:
    """Search for a countable family violating union closure of strongly-below."""
    subj = (d.describe(),)
    if d.carrier.is_finite():
        subs = _subsets_of(d.universe, d.carrier)
        cases = 0
        for a1, a2, b in itertools.product(subs, repeat=3):
            cases += 1
            if d.strongly_below(a1, b) and d.strongly_below(a2, b) \
                    and not d.strongly_below(a1 | a2, b):
                return LawReport("p_aleph1", subj, COUNTEREXAMPLE,
                                 witnesses=(witness_set(a1), witness_set(a2), witness_set(b)),
                                 cases_checked=cases)
        return LawReport(
            "p_aleph1", subj, HOLDS_EXHAUSTIVE, cases_checked=cases,
            witnesses=(note("countable unions inside a finite carrier are finite "
                            "unions, which additivity already covers"),))

    pool = carrier_pool(d.universe, d.carrier) if not d.carrier.is_whole() \
        else pool_for(d.universe)
    if pool_limit is not None:
        pool = pool[:pool_limit]
    cases = 0
    for s in pool:
        cases += 1
        if d.strongly_below(s, s):
            continue
        seq = SetSequence.prefixes(s)
        if prec_all_terms(d, seq, s) is True:
            return LawReport("p_aleph1", subj, COUNTEREXAMPLE, cases_checked=cases,
                             witnesses=(Witness("sequence", seq.render()), witness_set(s),
                                        note("every term is strongly below the target, "
                                             "the union is not")))
    if d.universe.kind is UniverseKind.UNIT_INTERVAL:
        for t in closed_interval_pool(d.universe):
            cases += 1
            b = d.complement_in(t)
            if d.strongly_below(b, b):
                continue
            seq = SetSequence.complements(SetSequence.interval_shrink(t))
            if prec_all_terms(d, seq, b) is True:
                return LawReport("p_aleph1", subj, COUNTEREXAMPLE, cases_checked=cases,
                                 witnesses=(Witness("sequence", seq.render()), witness_set(b),
                                            note("every term is strongly below the target, "
                                                 "the union is not")))
    cls = _structure_class(d)
    if cls == _DISCRETE:
        return LawReport("p_aleph1", subj, HOLDS_ON_FAMILY, cases_checked=cases,
                         witnesses=(note("here strongly-below is containment, "
                                         "which unions preserve"),))
    if d.kind is ProximityKind.FROM_ALGEBRA and d.algebra.is_finitely_atomic():
        return LawReport("p_aleph1", subj, HOLDS_ON_FAMILY, cases_checked=cases,
                         witnesses=(note("finitely many atoms make the member family "
                                         "closed under countable unions"),))
    return LawReport("p_aleph1", subj, INCONCLUSIVE, cases_checked=cases)


def check_sigma_iff_p_aleph1(m: SetAlgebra) -> LawReport:
    """Countable-union closure of the algebra against the induced proximity."""
    subj = (m.describe(),)
    sigma = m.is_sigma_closed()
    sigma_witness = None
    if not sigma:
        for s in carrier_pool(m.universe, m.carrier):
            if s.is_finite() or not s.issubset(m.carrier):
                continue
            if not m.contains(s) and m.contains(SetSequence.prefixes(s).term(2)):
                sigma_witness = s
                break
    p_report = is_p_aleph1(proximity_from_algebra(m))
    if p_report.status == INCONCLUSIVE:
        return LawReport("thm.2.4", subj, INCONCLUSIVE, witnesses=p_report.witnesses,
                         cases_checked=p_report.cases_checked)
    p_holds = p_report.holds()
    cases = p_report.cases_checked + 1
    if sigma != p_holds:
        return LawReport("thm.2.4", subj, COUNTEREXAMPLE, cases_checked=cases,
                         witnesses=(note(f"countable-union closure: {sigma}, "
                                         f"union property of the proximity: {p_holds}"),)
                         + p_report.witnesses)
    wits = [note("both sides true" if sigma else "both sides false")]
    if sigma_witness is not None:
        wits.append(Witness("set", sigma_witness.render()))
    wits.extend(w for w in p_report.witnesses if w.kind != "note")
    status = HOLDS_EXHAUSTIVE if m.carrier.is_finite() else HOLDS_ON_FAMILY
    return LawReport("thm.2.4", subj, status, witnesses=tuple(wits), cases_checked=cases)


def check_p_aleph1_implies_zerodim(d: Proximity) -> LawReport:
    """With the union property established, zero-dimensionality must follow."""
    p_report = is_p_aleph1(d)
    if not p_report.holds():
        raise PreconditionNotEstablished(
            "the countable-union property was not established for this subject")
    zd = is_zero_dimensional(d)
    if zd.holds():
        return LawReport("thm.2.3", (d.describe(),), zd.status,
                         cases_checked=zd.cases_checked + p_report.cases_checked)
    return LawReport("thm.2.3", (d.describe(),), COUNTEREXAMPLE,
                     witnesses=zd.witnesses + (note(
                         "alarm: this contradicts a theorem, suspect the engine"),),
                     cases_checked=zd.cases_checked)


def check_cor_zero_sets(d: Proximity) -> LawReport:
    """Union property on one side, zero sets inside the algebra on the other."""
    subj = (d.describe(),)
    p_report = is_p_aleph1(d)
    if p_report.status == INCONCLUSIVE:
        return LawReport("cor.2.8", subj, INCONCLUSIVE, witnesses=p_report.witnesses,
                         cases_checked=p_report.cases_checked)
    side_union = p_report.holds()
    algebra = algebra_from_proximity(d)
    probes = _subsets_of(d.universe, d.carrier) if d.carrier.is_finite() \
        else carrier_pool(d.universe, d.carrier)
    side_zero = True
    zero_witness = None
    cases = p_report.cases_checked
    for r in probes:
        cert = zero_set_certificate(d, r)
        if cert is None:
            continue
        cases += 1
        if not algebra.contains(r):
            side_zero = False
            zero_witness = (r, cert)
            break
    if side_union != side_zero:
        return LawReport("cor.2.8", subj, COUNTEREXAMPLE, cases_checked=cases,
                         witnesses=(note(f"union property: {side_union}, "
                                         f"zero sets contained: {side_zero}"),))
    wits = [note("both sides true" if side_union else "both sides false")]
    if zero_witness is not None:
        wits.append(witness_set(zero_witness[0]))
        wits.append(Witness("sequence", zero_witness[1].render()))
    status = HOLDS_EXHAUSTIVE if d.carrier.is_finite() else HOLDS_ON_FAMILY
    return LawReport("cor.2.8", subj, status, witnesses=tuple(wits), cases_checked=cases)


# ---------------------------------------------------------------------------
# the Baire algebra and the coreflection


def proximally_baire(d: Proximity) -> SetAlgebra:
    """The smallest countable-union-closed algebra holding the zero sets."""
    if d.carrier.is_finite():
        # descending chains in a finite world stabilise, so the zero sets
        # are exactly the self-proximal sets and closure is finite
        return algebra_from_proximity(d)
    cls = _structure_class(d)
    if cls == _DISCRETE:
        return SetAlgebra.powerset(d.universe, carrier=d.carrier)
    if cls == _ONE_POINT:
        _validate_universal_chains(d)
        return SetAlgebra.powerset(d.universe, carrier=d.carrier)
    if d.kind is ProximityKind.FROM_ALGEBRA and d.algebra.is_finitely_atomic():
        return algebra_from_proximity(d)
    if d.kind is ProximityKind.SUBSPACE:
        flat = Proximity.subspace(d.parent, d.carrier)
        pcls = _structure_class(d.parent)
        if pcls in (_DISCRETE, _ONE_POINT):
            _validate_universal_chains(flat)
            return SetAlgebra.powerset(d.universe, carrier=d.carrier)
    raise UnsupportedKind(
        "the generated countable-union algebra escapes the symbolic set kinds here")


def _validate_universal_chains(d: Proximity) -> None:
    """The powerset answer leans on chains certifying sample sets; check them."""
    sample = carrier_pool(d.universe, d.carrier)[:12]
    for r in sample:
        if zero_set_certificate(d, r) is None and not _integer_closed(d, r):
            raise UnsupportedKind(
                f"no certificate for {r.render()}, the powerset answer is unsafe")


def _integer_closed(d: Proximity, r: SymSet) -> bool:
    """Sets the chain constructor cannot certify must still be reachable by
    countable unions of certified sets; integer singletons always are."""
    return all(zero_set_certificate(d, SymSet.point(d.universe, x)) is not None
               for x in itertools.islice(r.elements(), 3))


def coreflection(d: Proximity) -> Proximity:
    """The proximity of the induced countable-union algebra, normalised."""
    baire = proximally_baire(d)
    return normalize_proximity(proximity_from_algebra(baire))


def normalize_proximity(d: Proximity) -> Proximity:
    """Replace an algebra-induced relation by its named twin when one exists."""
    if d.kind is ProximityKind.FROM_ALGEBRA and d.carrier.is_whole():
        if d.algebra.kind is AlgebraKind.POWERSET:
            return Proximity.discrete(d.universe)
        if d.algebra.kind is AlgebraKind.FINITE_COFINITE:
            return Proximity.one_point(d.universe)
    return d


# ---------------------------------------------------------------------------
# factorisation and pointwise limits


def check_factorization(f, n: SetAlgebra, d_target: Proximity) -> LawReport:
    """Mapping into a space or into its coreflection must agree for
    countable-union-closed sources."""
    if not n.is_sigma_closed():
        raise SourceNotSigma("the source algebra is not closed under countable unions")
    try:
        target_star = coreflection(d_target)
    except UnsupportedKind as exc:
        raise TargetUnsupported(str(exc)) from exc
    source = proximity_from_algebra(n)
    lhs = is_proximity_map(f, source, d_target)
    rhs = is_proximity_map(f, source, target_star)
    subj = (f.render(), n.describe(), d_target.describe())
    cases = lhs.cases_checked + rhs.cases_checked
    if INCONCLUSIVE in (lhs.status, rhs.status):
        return LawReport("thm.2.12", subj, INCONCLUSIVE, cases_checked=cases)
    if lhs.holds() != rhs.holds():
        return LawReport("thm.2.12", subj, COUNTEREXAMPLE, cases_checked=cases,
                         witnesses=(note(f"into the space: {lhs.holds()}, into the "
                                         f"coreflection: {rhs.holds()}"),)
                         + lhs.witnesses + rhs.witnesses)
    exact = lhs.status == HOLDS_EXHAUSTIVE and rhs.status == HOLDS_EXHAUSTIVE
    agree = "both sides true" if lhs.holds() else "both sides false"
    return LawReport("thm.2.12", subj,
                     HOLDS_EXHAUSTIVE if exact else HOLDS_ON_FAMILY,
                     witnesses=(note(agree),), cases_checked=cases)


def check_pointwise_closure(d: Proximity, fs: FunctionSequence, r: Proximity,
                            require_union_property: bool = True) -> LawReport:
    """Pointwise limits of maps out of a union-closed space stay maps."""
    subj = (d.describe(), fs.render(), r.describe())
    term_cases = 0
    for t in fs.term_pool(3):
        rep = is_proximity_map(t, d, r)
        term_cases += rep.cases_checked
        if not rep.holds():
            raise PreconditionFailed(
                f"term {t.render()} is not a proximity map into the target")
    p_report = is_p_aleph1(d)
    limit = fs.pointwise_limit()
    lim_rep = is_proximity_map(limit, d, r)
    cases = term_cases + p_report.cases_checked + lim_rep.cases_checked
    if p_report.holds():
        if lim_rep.holds():
            status = HOLDS_EXHAUSTIVE if lim_rep.status == HOLDS_EXHAUSTIVE \
                else HOLDS_ON_FAMILY
            return LawReport("thm.2.15", subj, status, cases_checked=cases,
                             witnesses=(Witness("function", limit.render()),))
        return LawReport("thm.2.15", subj, COUNTEREXAMPLE, cases_checked=cases,
                         witnesses=(Witness("function", limit.render()),)
                         + lim_rep.witnesses
                         + (note("alarm: this contradicts a theorem, suspect the engine"),))
    if require_union_property:
        raise PreconditionFailed(
            "the source lacks the countable-union property; rerun as a "
            "counterexample search to exhibit the failure")
    if lim_rep.holds():
        return LawReport("thm.2.15", subj, HOLDS_ON_FAMILY, cases_checked=cases,
                         witnesses=(note("the hypothesis fails here yet this limit "
                                         "stays a proximity map"),))
    return LawReport("thm.2.15", subj, COUNTEREXAMPLE, cases_checked=cases,
                     witnesses=(Witness("function", limit.render()),)
                     + lim_rep.witnesses
                     + (note("limit of proximity maps escapes: the countable-union "
                             "hypothesis is necessary"),))


def lindelof_cozero_chain(d: Proximity, u: SymSet) -> SetSequence:
    """A chain certifying the complement of an open set as proximally zero."""
    if d.kind is not ProximityKind.ONE_POINT:
        raise UnsupportedKind("the cozero certificate is built on the one-point relation")
    if not d.is_open(u):
        raise NotOpen(f"{u.render()} is not open here")
    r = d.complement_in(u)
    if r.is_empty():
        return SetSequence.constant(r)
    if d.universe.with_infinity and r.is_finite() and not r.contains(INFINITY):
        return SetSequence.constant(r)
    cert = SetSequence.shrink_tail(r, d.complement_in(r))
    if chain_rule_decided(d, cert) is not True:
        raise UnsupportedKind("no certified chain for this complement")
    return cert
