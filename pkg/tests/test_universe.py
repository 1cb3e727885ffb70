"""Symbolic set calculus: canonical forms, Boolean laws, sizes, distance."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proxkit.errors import EmptyInput, UniverseMismatch, WrongUniverseKind
from proxkit.universe import (
    INFINITY,
    Cardinality,
    SymSet,
    Universe,
    all_subsets,
    distance,
    interval_closure,
    probe_window,
)

Z = Universe.integers()
ZI = Universe.integers(with_infinity=True)
F3 = Universe.finite(3)
I = Universe.unit_interval()


def members_on_window(s, window):
    return {n for n in window if s.contains(n)}


# -- examples ---------------------------------------------------------------


def test_finite_union():
    a, b = SymSet.of(F3, [0, 1]), SymSet.of(F3, [1, 2])
    assert (a | b) == SymSet.of(F3, [0, 1, 2])
    assert (a & b) == SymSet.of(F3, [1])


def test_evens_union_odds_is_everything():
    e = SymSet.periodic(Z, 2, [0])
    assert (e | e.complement()) == SymSet.whole(Z)
    assert (e & e.complement()).is_empty()


def test_adjusted_evens_meets_odds_in_the_exception():
    # oracle: membership over the window [-10, 10] plus periodicity of the
    # canonical result
    x = SymSet.periodic(Z, 2, [0], plus=[1], minus=[4])
    odds = SymSet.periodic(Z, 2, [1])
    meet = x & odds
    window = range(-10, 11)
    assert members_on_window(meet, window) == {1}
    assert meet == SymSet.of(Z, [1])
    assert meet.cardinality() == Cardinality.of(1)


def test_cardinality_classes():
    assert SymSet.periodic(Z, 2, [0]).cardinality() == Cardinality.INFINITE
    assert SymSet.of(Z, [1, 5, 9]).cardinality() == Cardinality.of(3)
    third = SymSet.interval(I, Fraction(1, 3), Fraction(1, 3))
    assert third.cardinality() == Cardinality.of(1)


def test_distance_endpoint_arithmetic():
    a = SymSet.interval(I, 0, Fraction(1, 4))
    b = SymSet.interval(I, Fraction(1, 2), 1)
    # oracle: the gap between the closest endpoints
    assert distance(a, b) == Fraction(1, 2) - Fraction(1, 4)

    left = SymSet.interval(I, 0, Fraction(1, 2), True, False)
    right = SymSet.interval(I, Fraction(1, 2), 1, False, True)
    assert distance(left, right) == 0  # the closures share 1/2
    assert not left.intersects(right)

    assert distance(a, a) == 0


def test_distance_rejects_empty_and_wrong_kind():
    with pytest.raises(EmptyInput):
        distance(SymSet.empty(I), SymSet.whole(I))
    with pytest.raises(WrongUniverseKind):
        distance(SymSet.of(Z, [0]), SymSet.of(Z, [1]))


def test_cross_universe_operations_are_rejected():
    with pytest.raises(UniverseMismatch):
        SymSet.of(F3, [0]) | SymSet.of(Z, [0])
    with pytest.raises(UniverseMismatch):
        SymSet.of(Z, [0, INFINITY])


# -- canonical form ----------------------------------------------------------


def test_minimal_period():
    s = SymSet.periodic(Z, 4, [0, 2])
    assert s == SymSet.periodic(Z, 2, [0])
    assert s.payload.period == 2


def test_exceptions_are_genuine_flips():
    s = SymSet.periodic(Z, 2, [0], plus=[0, 2], minus=[7])
    # 0 and 2 are already in the pattern and 7 is already missing
    assert s == SymSet.periodic(Z, 2, [0])


def test_interval_merging():
    s = SymSet.from_intervals(I, [(0, Fraction(1, 2), True, False),
                                  (Fraction(1, 2), 1, True, True)])
    assert s == SymSet.whole(I)
    t = SymSet.from_intervals(I, [(0, Fraction(1, 2), True, False),
                                  (Fraction(1, 2), 1, False, True)])
    assert len(t.payload.intervals) == 2
    point = SymSet.point(I, Fraction(1, 2))
    assert (t | point) == SymSet.whole(I)


def test_structural_equality_is_extensional_on_windows():
    a = SymSet.periodic(Z, 6, [0, 2, 4], plus=[1])
    b = SymSet.periodic(Z, 2, [0]) | SymSet.of(Z, [1])
    assert a == b
    window = probe_window(a, b)
    assert members_on_window(a, window) == members_on_window(b, window)


# -- generated laws -----------------------------------------------------------


periodic_sets = st.builds(
    lambda p, residues, plus, minus: SymSet.periodic(
        Z, p, [r % p for r in residues], plus=plus, minus=minus),
    st.integers(1, 6),
    st.lists(st.integers(0, 5), max_size=4),
    st.lists(st.integers(-8, 8), max_size=3),
    st.lists(st.integers(-8, 8), max_size=3),
)

endpoints = st.integers(0, 8).map(lambda n: Fraction(n, 8))

interval_sets = st.lists(
    st.tuples(endpoints, endpoints, st.booleans(), st.booleans()),
    max_size=3,
).map(lambda bounds: SymSet.from_intervals(
    I, [(min(lo, hi), max(lo, hi), lc, hc) for lo, hi, lc, hc in bounds]))


@settings(max_examples=260)
@given(periodic_sets, periodic_sets, periodic_sets)
def test_boolean_laws_integer_sets(a, b, c):
    window = probe_window(a, b, c)
    assert (a | b) == (b | a)
    assert (a & b) == (b & a)
    assert ((a | b) | c) == (a | (b | c))
    assert (a & (b | c)) == ((a & b) | (a & c))
    assert (a | b).complement() == (a.complement() & b.complement())
    assert a.complement().complement() == a
    union = a | b
    for n in window:
        assert union.contains(n) == (a.contains(n) or b.contains(n))


@settings(max_examples=120)
@given(interval_sets, interval_sets)
def test_boolean_laws_interval_sets(a, b):
    assert (a | b) == (b | a)
    assert (a & b).complement() == (a.complement() | b.complement())
    assert a.complement().complement() == a
    assert (a - b) == (a & b.complement())
    probe = [Fraction(n, 16) for n in range(17)]
    meet = a & b
    for q in probe:
        assert meet.contains(q) == (a.contains(q) and b.contains(q))


@settings(max_examples=80)
@given(periodic_sets)
def test_canonical_form_is_stable(a):
    p = a.payload
    rebuilt = SymSet.periodic(Z, p.period, p.residues,
                              plus=[n for n in p.flips if not p.pattern(n)],
                              minus=[n for n in p.flips if p.pattern(n)])
    assert rebuilt == a
    assert rebuilt.payload == a.payload


def test_boolean_laws_exhaustive_small_finite():
    for n in (1, 2, 3, 4):
        u = Universe.finite(n)
        subs = all_subsets(u)
        assert len(subs) == 2 ** n
        for a in subs:
            assert a.complement().complement() == a
            for b in subs:
                assert (a | b) == (b | a)
                assert (a | b).complement() == (a.complement() & b.complement())


@settings(max_examples=60)
@given(periodic_sets)
def test_finite_cardinality_matches_window_count(a):
    card = a.cardinality()
    window = probe_window(a)
    counted = len(members_on_window(a, window))
    if card.finite:
        assert counted == card.count
    else:
        # an infinite set keeps at least one full residue class on any window
        assert counted >= (2 * 3 * a.payload.period) // a.payload.period


# -- enumeration, rendering, helpers -----------------------------------------


def test_spiral_enumeration_order():
    s = SymSet.periodic(Z, 2, [0])
    first = []
    for x in s.elements():
        first.append(x)
        if len(first) == 5:
            break
    assert first == [0, 2, -2, 4, -4]


def test_infinity_is_enumerated_first():
    s = SymSet.of(ZI, [3, INFINITY])
    assert list(s.elements()) == [INFINITY, 3]


def test_rational_enumeration_is_by_denominator():
    s = SymSet.interval(I, 0, 1)
    out = []
    for q in s.elements():
        out.append(q)
        if len(out) == 6:
            break
    assert out == [0, 1, Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4)]


def test_render_forms():
    assert SymSet.of(F3, [0, 2]).render() == "{0, 2}"
    assert SymSet.periodic(Z, 2, [0], plus=[1], minus=[4]).render() \
        == "periodic(p=2, residues={0}) + {1} - {4}"
    s = SymSet.from_intervals(I, [(0, Fraction(1, 4), True, True),
                                  (Fraction(1, 2), 1, False, True)])
    assert s.render() == "[0, 1/4] ∪ (1/2, 1]"
    assert SymSet.empty(Z).render() == "{}"
    assert SymSet.of(ZI, [INFINITY]).render() == "{inf}"


def test_shift_and_closure_helpers():
    e = SymSet.periodic(Z, 2, [0])
    assert e.shift(1) == SymSet.periodic(Z, 2, [1])
    assert e.shift(1).shift(-1) == e
    half = SymSet.interval(I, 0, Fraction(1, 2), True, False)
    assert interval_closure(half) == SymSet.interval(I, 0, Fraction(1, 2))
