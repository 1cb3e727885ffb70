"""Both directions of the proximity / set-algebra correspondence.

One direction collects the self-proximal sets of a proximity (those strongly
below themselves) into an algebra. The other direction equips an algebra
with the nearness relation in which two sets are apart exactly when some
member contains one and misses the other. The round-trip checks, the
zero-dimensionality test, and the proximity-map / measurable-map
equivalence all live here.

A useful exact fact: a witness for zero-dimensional interpolation can
always be chosen self-proximal, hence a member of the induced algebra; so
whenever that algebra is finitely atomic the witness search over members is
a complete decision procedure, not a heuristic.
"""

from __future__ import annotations

import itertools

from .algebra import AlgebraKind, SetAlgebra
from .errors import (
    NotZeroDimensional,
    UniverseMismatch,
    UnsupportedKind,
)
from .maps import FunctionSpec
from .pools import carrier_pool, pool_for
from .proximity import Proximity, ProximityKind
from .reports import (
    COUNTEREXAMPLE,
    HOLDS_EXHAUSTIVE,
    HOLDS_ON_FAMILY,
    INCONCLUSIVE,
    LawReport,
    Witness,
    note,
    witness_pair,
    witness_set,
)
from .universe import INFINITY, SymSet, Universe

_ONE_POINT_CLASS = "one_point"
_DISCRETE_CLASS = "discrete"
_METRIC_CLASS = "metric"


def _subsets_of(universe: Universe, carrier: SymSet) -> list[SymSet]:
    elems = list(carrier.elements())
    out = []
    for r in range(len(elems) + 1):
        for combo in itertools.combinations(elems, r):
            out.append(SymSet.of(universe, combo))
    return out


def _structure_class(d: Proximity) -> str | None:
    """A coarse label identifying proximities that share one nearness rule.
    Subspaces inherit their parent's rule on the carrier."""
    k = d.kind
    if k is ProximityKind.DISCRETE:
        return _DISCRETE_CLASS
    if k is ProximityKind.ONE_POINT:
        return _ONE_POINT_CLASS
    if k is ProximityKind.METRIC:
        return _METRIC_CLASS
    if k is ProximityKind.FROM_ALGEBRA:
        if d.algebra.kind is AlgebraKind.POWERSET:
            return _DISCRETE_CLASS
        if d.algebra.kind is AlgebraKind.FINITE_COFINITE:
            return _ONE_POINT_CLASS
    if k is ProximityKind.SUBSPACE:
        return _structure_class(d.parent)
    return None


def spread(pool, limit: int | None):
    """An evenly strided subsample, so small slices still span the pool."""
    if limit is None or len(pool) <= limit:
        return pool
    step = max(1, len(pool) // limit)
    return pool[::step][:limit]


def probe_pairs(d: Proximity, limit: int | None = None):
    pool = carrier_pool(d.universe, d.carrier) if not d.carrier.is_whole() \
        else pool_for(d.universe)
    pool = spread(pool, limit)
    return itertools.product(pool, repeat=2), pool


# ---------------------------------------------------------------------------
# the two directions


def algebra_from_proximity(d: Proximity) -> SetAlgebra:
    """The algebra of self-proximal sets of d."""
    if d.carrier.is_finite():
        members = [r for r in _subsets_of(d.universe, d.carrier)
                   if d.strongly_below(r, r)]
        atoms = [m for m in members
                 if not m.is_empty()
                 and not any(not o.is_empty() and o != m and o.issubset(m) for o in members)]
        try:
            return SetAlgebra.from_atoms(d.universe, atoms, carrier=d.carrier)
        except UniverseMismatch as exc:
            raise UnsupportedKind(
                f"the self-proximal family is not an algebra here: {exc}") from exc
    k = d.kind
    if k is ProximityKind.DISCRETE:
        return SetAlgebra.powerset(d.universe, carrier=d.carrier)
    if k is ProximityKind.ONE_POINT:
        return SetAlgebra.finite_cofinite(d.universe, carrier=d.carrier)
    if k is ProximityKind.METRIC:
        return SetAlgebra.generated(d.universe, [], carrier=d.carrier)
    if k is ProximityKind.FROM_ALGEBRA:
        m = d.algebra
        if m.kind is AlgebraKind.ATOMS:
            return SetAlgebra.from_atoms(d.universe, m.atoms, carrier=m.carrier)
        if m.kind is AlgebraKind.POWERSET:
            return SetAlgebra.powerset(d.universe, carrier=m.carrier)
        return SetAlgebra.finite_cofinite(d.universe, carrier=m.carrier)
    if k is ProximityKind.SUBSPACE:
        return _subspace_algebra(d)
    raise UnsupportedKind("table proximities are only decided on finite universes")


def _subspace_algebra(d: Proximity) -> SetAlgebra:
    parent, carrier = d.parent, d.carrier
    if parent.kind is ProximityKind.SUBSPACE:
        return _subspace_algebra(Proximity.subspace(parent.parent, carrier))
    cls = _structure_class(parent)
    if cls == _DISCRETE_CLASS:
        return SetAlgebra.powerset(d.universe, carrier=carrier)
    if cls == _ONE_POINT_CLASS:
        return SetAlgebra.finite_cofinite(d.universe, carrier=carrier)
    if cls == _METRIC_CLASS:
        groups = _distance_components(carrier)
        return SetAlgebra.from_atoms(d.universe, groups, carrier=carrier)
    if parent.kind is ProximityKind.FROM_ALGEBRA:
        traces = [a & carrier for a in parent.algebra.atom_list()]
        traces = [t for t in traces if not t.is_empty()]
        return SetAlgebra.from_atoms(d.universe, traces, carrier=carrier)
    raise UnsupportedKind("no symbolic rule for this subspace's algebra")


def _distance_components(carrier: SymSet) -> list[SymSet]:
    """Group a carrier's intervals into blocks whose closed hulls chain-touch."""
    ivs = list(carrier.payload.intervals)
    groups: list[list] = []
    for iv in ivs:
        if groups and iv.lo <= groups[-1][-1].hi:
            groups[-1].append(iv)
        else:
            groups.append([iv])
    return [SymSet.from_intervals(carrier.universe, g) for g in groups]


def proximity_from_algebra(m: SetAlgebra) -> Proximity:
    """Nearness in which members act as separators."""
    return Proximity.from_algebra(m)


# ---------------------------------------------------------------------------
# zero-dimensionality


def zero_dim_witness(d: Proximity, a: SymSet, b: SymSet,
                     algebra: SetAlgebra | None = None) -> SymSet | None:
    """A self-proximal c with a strongly below c strongly below b, or None.

    Exact: any valid witness is a member of the induced algebra, so the
    member scan is complete whenever that algebra is finitely atomic, and
    the non-atomic kinds carry direct construction rules.
    """
    def valid(c):
        return (d.strongly_below(a, c) and d.strongly_below(c, c)
                and d.strongly_below(c, b))

    m = algebra_from_proximity(d) if algebra is None else algebra
    if m.is_finitely_atomic():
        c = m.saturate(a)
        if valid(c):
            return c
        for c in m.members():
            if valid(c):
                return c
        return None
    if m.kind is AlgebraKind.POWERSET:
        return a if valid(a) else None
    for c in (a, b):
        if m.contains(c) and valid(c):
            return c
    return None


def is_zero_dimensional(d: Proximity, pair_limit: int = 40) -> LawReport:
    """Every strongly-below pair must admit a self-proximal interpolant."""
    pairs, _ = probe_pairs(d, None if d.carrier.is_finite() else pair_limit)
    algebra = algebra_from_proximity(d)
    cases = 0
    for a, b in pairs:
        if not d.strongly_below(a, b):
            continue
        cases += 1
        if zero_dim_witness(d, a, b, algebra=algebra) is None:
            return LawReport("zero_dim", (d.describe(),), COUNTEREXAMPLE,
                             witnesses=(witness_pair(a, b),
                                        note("no self-proximal set fits between the pair")),
                             cases_checked=cases)
    status = HOLDS_EXHAUSTIVE if d.carrier.is_finite() else HOLDS_ON_FAMILY
    exact_kinds = (ProximityKind.DISCRETE, ProximityKind.ONE_POINT,
                   ProximityKind.FROM_ALGEBRA)
    wits = ()
    if d.kind in exact_kinds and not d.carrier.is_finite():
        status = HOLDS_EXHAUSTIVE
        wits = (note("the member witness rule covers every pair, probes confirm it"),)
    return LawReport("zero_dim", (d.describe(),), status,
                     witnesses=wits, cases_checked=cases)


# ---------------------------------------------------------------------------
# round trips


def check_roundtrip_proximity(d: Proximity, pair_limit: int | None = None) -> LawReport:
    """Rebuilding the proximity from its own algebra must not change nearness."""
    zd = is_zero_dimensional(d)
    if not zd.holds():
        raise NotZeroDimensional(
            "the relation round trip is only promised for zero-dimensional proximities")
    m = algebra_from_proximity(d)
    d2 = proximity_from_algebra(m)
    pairs, _ = probe_pairs(d, pair_limit)
    cases = 0
    for a, b in pairs:
        cases += 1
        if d.near(a, b) != d2.near(a, b):
            return LawReport("thm.2.1.3", (d.describe(),), COUNTEREXAMPLE,
                             witnesses=(witness_pair(a, b),), cases_checked=cases)
    status = HOLDS_EXHAUSTIVE if d.carrier.is_finite() else HOLDS_ON_FAMILY
    return LawReport("thm.2.1.3", (d.describe(),), status, cases_checked=cases)


def check_roundtrip_algebra(m: SetAlgebra, pair_limit: int | None = None) -> LawReport:
    """Membership must survive the trip through the induced proximity."""
    d = proximity_from_algebra(m)
    if m.carrier.is_finite():
        probes = _subsets_of(m.universe, m.carrier)
        status = HOLDS_EXHAUSTIVE
    else:
        probes = carrier_pool(m.universe, m.carrier) if not m.carrier.is_whole() \
            else pool_for(m.universe)
        if pair_limit is not None:
            probes = probes[:pair_limit]
        status = HOLDS_ON_FAMILY
    cases = 0
    for r in probes:
        cases += 1
        if m.contains(r) != d.strongly_below(r, r):
            return LawReport("thm.2.1.4", (m.describe(),), COUNTEREXAMPLE,
                             witnesses=(witness_set(r),), cases_checked=cases)
    return LawReport("thm.2.1.4", (m.describe(),), status, cases_checked=cases)


def check_algebra_of_sets(d: Proximity, pair_limit: int = 60) -> LawReport:
    """The self-proximal family is complement- and union-closed."""
    if d.carrier.is_finite():
        members = [r for r in _subsets_of(d.universe, d.carrier)
                   if d.strongly_below(r, r)]
        status = HOLDS_EXHAUSTIVE
    else:
        pool = pool_for(d.universe)[:pair_limit]
        members = [r for r in pool if r.issubset(d.carrier) and d.strongly_below(r, r)]
        status = HOLDS_ON_FAMILY
    cases = 0
    empty = SymSet.empty(d.universe)
    if not d.strongly_below(empty, empty) or not d.strongly_below(d.carrier, d.carrier):
        return LawReport("thm.2.1.1", (d.describe(),), COUNTEREXAMPLE,
                         witnesses=(note("the empty set or the carrier is not self-proximal"),))
    for r in members:
        cases += 1
        rc = d.complement_in(r)
        if not d.strongly_below(rc, rc):
            return LawReport("thm.2.1.1", (d.describe(),), COUNTEREXAMPLE,
                             witnesses=(witness_set(r), note("complement escapes the family")),
                             cases_checked=cases)
    for r, s in itertools.combinations(members, 2):
        cases += 1
        u = r | s
        if not d.strongly_below(u, u):
            return LawReport("thm.2.1.1", (d.describe(),), COUNTEREXAMPLE,
                             witnesses=(witness_pair(r, s), note("union escapes the family")),
                             cases_checked=cases)
    return LawReport("thm.2.1.1", (d.describe(),), status, cases_checked=cases)


def check_basis(d: Proximity) -> LawReport:
    """Members of the induced algebra form a basis of the induced topology."""
    zd = is_zero_dimensional(d)
    if not zd.holds():
        raise NotZeroDimensional("the basis property is stated for zero-dimensional proximities")
    m = algebra_from_proximity(d)
    if d.carrier.is_finite():
        members = m.members()
        cases = 0
        for u in _subsets_of(d.universe, d.carrier):
            if not d.is_open(u):
                continue
            cases += 1
            cover = SymSet.empty(d.universe)
            for c in members:
                if c.issubset(u):
                    cover = cover | c
            if cover != u:
                return LawReport("thm.2.1.5", (d.describe(),), COUNTEREXAMPLE,
                                 witnesses=(witness_set(u),), cases_checked=cases)
        return LawReport("thm.2.1.5", (d.describe(),), HOLDS_EXHAUSTIVE, cases_checked=cases)
    cases = 0
    for u in pool_for(d.universe):
        if not u.issubset(d.carrier) or not d.is_open(u):
            continue
        cases += 1
        if not _covered_by_members(m, u):
            return LawReport("thm.2.1.5", (d.describe(),), COUNTEREXAMPLE,
                             witnesses=(witness_set(u),), cases_checked=cases)
    return LawReport("thm.2.1.5", (d.describe(),), HOLDS_ON_FAMILY, cases_checked=cases)


def _covered_by_members(m: SetAlgebra, u: SymSet) -> bool:
    if m.kind is AlgebraKind.POWERSET:
        return True
    if m.kind is AlgebraKind.FINITE_COFINITE:
        if not u.contains(INFINITY):
            return True  # covered point by point, singletons are members
        return m.contains(u)
    cover = SymSet.empty(m.universe)
    for a in m.atom_list():
        if a.issubset(u):
            cover = cover | a
    return cover == u


# ---------------------------------------------------------------------------
# proximity maps and measurability


def _image_point_set(f: FunctionSpec, values) -> SymSet:
    return SymSet.of(f.codomain, values)


def is_proximity_map(f: FunctionSpec, d: Proximity, r: Proximity,
                     pair_limit: int = 40) -> LawReport:
    """Whether near pairs always map to near image pairs."""
    if f.domain != d.universe or f.codomain != r.universe:
        raise UniverseMismatch("the map does not connect these proximities")
    if not d.carrier.is_whole() or not r.carrier.is_whole():
        raise UnsupportedKind("proximity-map checks run on full carriers")
    subj = (f.render(), d.describe(), r.describe())

    if d.carrier.is_finite():
        subs = _subsets_of(d.universe, d.carrier)
        images = {a: f.image_of(a) for a in subs}
        cases = 0
        for a, b in itertools.product(subs, repeat=2):
            cases += 1
            if d.near(a, b) and not r.near(images[a], images[b]):
                return LawReport("prox.map", subj, COUNTEREXAMPLE,
                                 witnesses=(witness_pair(a, b),), cases_checked=cases)
        return LawReport("prox.map", subj, HOLDS_EXHAUSTIVE, cases_checked=cases)

    if _structure_class(d) == _DISCRETE_CLASS:
        return LawReport("prox.map", subj, HOLDS_EXHAUSTIVE, cases_checked=1,
                         witnesses=(note("nearness in the source means intersection, "
                                         "which any map preserves"),))

    if f.is_finite_image():
        return _finite_image_prox_map(f, d, r, subj)

    if f.special is not None and f.special[0] == "decay":
        return _decay_prox_map(f, d, r, subj, pair_limit)

    return _pool_prox_map(f, d, r, subj, pair_limit)


def _finite_image_prox_map(f, d, r, subj) -> LawReport:
    """Complete decision through the level-set quotient.

    By additivity both sides of the implication only depend on which level
    sets the arguments meet, so enlarging each argument to a full union of
    level sets loses nothing, and the finitely many unions settle the claim.
    """
    cells = f.cells()
    idx = range(len(cells))
    cases = 0
    for size_s in range(1, len(cells) + 1):
        for s_sel in itertools.combinations(idx, size_s):
            a = SymSet.empty(f.domain)
            for i in s_sel:
                a = a | cells[i][0]
            for size_t in range(1, len(cells) + 1):
                for t_sel in itertools.combinations(idx, size_t):
                    b = SymSet.empty(f.domain)
                    for j in t_sel:
                        b = b | cells[j][0]
                    cases += 1
                    if d.near(a, b):
                        fa = _image_point_set(f, [cells[i][1] for i in s_sel])
                        fb = _image_point_set(f, [cells[j][1] for j in t_sel])
                        if not r.near(fa, fb):
                            return LawReport("prox.map", subj, COUNTEREXAMPLE,
                                             witnesses=(witness_pair(a, b),),
                                             cases_checked=cases)
    return LawReport("prox.map", subj, HOLDS_EXHAUSTIVE, cases_checked=cases,
                     witnesses=(note("decided on the full level-set quotient"),))


def _decay_prox_map(f, d, r, subj, pair_limit) -> LawReport:
    if r.kind is ProximityKind.METRIC and _structure_class(d) in (
            _DISCRETE_CLASS, _ONE_POINT_CLASS):
        return LawReport("prox.map", subj, HOLDS_EXHAUSTIVE, cases_checked=1,
                         witnesses=(note("along every infinite set the values pile up "
                                         "at one, so near pairs keep distance zero"),))
    return _pool_prox_map(f, d, r, subj, pair_limit)


def _pool_prox_map(f, d, r, subj, pair_limit) -> LawReport:
    pool = spread(pool_for(d.universe), pair_limit)
    cases = 0
    try:
        for a, b in itertools.product(pool, repeat=2):
            cases += 1
            if d.near(a, b) and not r.near(f.image_of(a), f.image_of(b)):
                return LawReport("prox.map", subj, COUNTEREXAMPLE,
                                 witnesses=(witness_pair(a, b),), cases_checked=cases)
    except UnsupportedKind:
        return LawReport("prox.map", subj, INCONCLUSIVE, cases_checked=cases,
                         witnesses=(note("no forward-image rule for this map kind"),))
    exact = _exact_affine_rule(f, d, r)
    if exact:
        return LawReport("prox.map", subj, HOLDS_EXHAUSTIVE, cases_checked=cases,
                         witnesses=(note(exact),))
    return LawReport("prox.map", subj, HOLDS_ON_FAMILY, cases_checked=cases)


def _exact_affine_rule(f, d, r) -> str | None:
    if f.special is None:
        return None
    if f.special[0] == "identity":
        if _structure_class(d) is not None and _structure_class(d) == _structure_class(r):
            return "the two relations share one nearness rule"
        return None
    if f.special[0] != "affine":
        return None
    if _structure_class(d) == _ONE_POINT_CLASS and _structure_class(r) == _ONE_POINT_CLASS:
        return ("per-class translations are finite-to-one, so images keep "
                "finiteness and infiniteness")
    return None


def measurable_side(f: FunctionSpec, m: SetAlgebra, n: SetAlgebra):
    """(verdict, witness, exact) for: member preimages stay in the source."""
    if n.is_finitely_atomic():
        for atom in n.atom_list():
            pre = f.preimage(atom)
            if not m.contains(pre):
                return False, Witness("set", atom.render()), True
        return True, None, True
    if f.is_finite_image():
        for v in f.image_values():
            single = SymSet.of(f.codomain, (v,))
            pre = f.preimage(single)
            if not m.contains(pre):
                return False, Witness("set", single.render()), True
        return True, None, True
    if f.special is not None and f.special[0] == "affine" and \
            n.kind is AlgebraKind.FINITE_COFINITE and \
            m.kind is AlgebraKind.FINITE_COFINITE:
        return True, None, True  # preimages of finite sets are finite for finite-to-one maps
    verdict = True
    probes = pool_for(n.universe)[:40]
    for u in probes:
        if not n.contains(u):
            continue
        pre = f.preimage(u)
        if not m.contains(pre):
            return False, Witness("set", u.render()), True
    return verdict, None, False


def check_prox_iff_measurable(f: FunctionSpec, m: SetAlgebra, n: SetAlgebra,
                              pair_limit: int = 40) -> LawReport:
    """The proximity-map predicate must agree with the preimage predicate."""
    if f.domain != m.universe or f.codomain != n.universe:
        raise UniverseMismatch("the map does not connect these algebras")
    subj = (f.render(), m.describe(), n.describe())
    prox_report = is_proximity_map(f, proximity_from_algebra(m),
                                   proximity_from_algebra(n), pair_limit=pair_limit)
    if prox_report.status == INCONCLUSIVE:
        return LawReport("thm.2.2", subj, INCONCLUSIVE,
                         witnesses=prox_report.witnesses,
                         cases_checked=prox_report.cases_checked)
    side1 = prox_report.holds()
    side2, wit, exact = measurable_side(f, m, n)
    cases = prox_report.cases_checked + 1
    if side1 != side2:
        wits = [note(f"proximity-map side: {side1}, preimage side: {side2}")]
        wits.extend(prox_report.witnesses)
        if wit is not None:
            wits.append(wit)
        return LawReport("thm.2.2", subj, COUNTEREXAMPLE,
                         witnesses=tuple(wits), cases_checked=cases)
    both_exact = exact and prox_report.status in (HOLDS_EXHAUSTIVE, COUNTEREXAMPLE)
    status = HOLDS_EXHAUSTIVE if both_exact else HOLDS_ON_FAMILY
    agree = "both sides true" if side1 else "both sides false"
    return LawReport("thm.2.2", subj, status,
                     witnesses=(note(agree),), cases_checked=cases)
