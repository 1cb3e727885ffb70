"""Sequence kinds: terms, closed-form limits, monotonicity, power limits."""

from fractions import Fraction

import pytest

from proxkit.errors import WrongUniverseKind
from proxkit.maps import FunctionSpec
from proxkit.sequences import FunctionSequence, SetSequence
from proxkit.universe import SymSet, Universe

Z = Universe.integers()
I = Universe.unit_interval()
F3 = Universe.finite(3)

EVENS = SymSet.periodic(Z, 2, [0])
ODDS = EVENS.complement()


def window_members(s, lo=-12, hi=12):
    return {n for n in range(lo, hi + 1) if s.contains(n)}


def test_shrink_tail_terms_match_the_window_formula():
    z = SetSequence.shrink_tail(EVENS, ODDS)
    for n in range(6):
        term = z.term(n)
        # the complement at level n is the set of odd k with |k| < n
        comp = term.complement()
        assert window_members(comp) == {k for k in range(-12, 13)
                                        if k % 2 != 0 and abs(k) < n}
    assert z.limit_intersection() == EVENS
    assert z.limit_union() == SymSet.whole(Z)
    assert z.is_nonincreasing()
    assert not z.is_nondecreasing()


def test_prefixes_terms_follow_enumeration_order():
    z = SetSequence.prefixes(EVENS)
    assert z.term(0).is_empty()
    assert z.term(1) == SymSet.of(Z, [0])
    assert z.term(3) == SymSet.of(Z, [0, 2, -2])
    assert z.limit_union() == EVENS
    assert z.limit_intersection() == z.term(0)
    assert z.is_nondecreasing()


def test_interval_shrink_squeezes_onto_the_target():
    target = SymSet.interval(I, Fraction(1, 4), Fraction(1, 2))
    z = SetSequence.interval_shrink(target)
    assert z.term(0) == SymSet.interval(I, 0, 1)
    assert z.term(3) == SymSet.interval(I, 0, Fraction(3, 4))
    assert z.limit_intersection() == target
    assert z.is_nonincreasing()
    with pytest.raises(WrongUniverseKind):
        SetSequence.interval_shrink(SymSet.interval(I, 0, Fraction(1, 2), True, False))


def test_complements_dualise_terms_and_limits():
    z = SetSequence.shrink_tail(EVENS, ODDS)
    c = SetSequence.complements(z)
    for n in range(4):
        assert c.term(n) == z.term(n).complement()
    assert c.limit_union() == z.limit_intersection().complement()
    assert c.limit_intersection() == z.limit_union().complement()
    assert c.is_nondecreasing()


def test_list_then_constant():
    items = [SymSet.of(Z, [0, 1, 2]), SymSet.of(Z, [0, 1])]
    tail = SymSet.of(Z, [0])
    z = SetSequence.list_then_constant(items, tail)
    assert z.term(0) == items[0]
    assert z.term(5) == tail
    assert z.limit_union() == items[0]
    assert z.limit_intersection() == tail
    assert z.is_nonincreasing()


def test_powers_terms_and_limit_are_symbolic():
    f = FunctionSpec.table(F3, I, [Fraction(0), Fraction(1, 2), Fraction(1)])
    fs = FunctionSequence.powers(f)
    assert fs.term(0).apply(1) == Fraction(1, 2)
    assert fs.term(2).apply(1) == Fraction(1, 8)
    limit = fs.pointwise_limit()
    assert limit.apply(0) == 0
    assert limit.apply(1) == 0
    assert limit.apply(2) == 1
    assert limit == FunctionSpec.characteristic(F3, I, SymSet.of(F3, [2]))


@pytest.mark.parametrize("r", [Fraction(0), Fraction(1, 3), Fraction(1, 2),
                               Fraction(2, 3), Fraction(9, 10)])
def test_power_limit_of_each_rational_below_one_is_zero(r):
    f = FunctionSpec.constant(F3, I, r)
    limit = FunctionSequence.powers(f).pointwise_limit()
    assert limit.apply(0) == 0


def test_power_limit_of_one_is_one():
    f = FunctionSpec.constant(F3, I, Fraction(1))
    limit = FunctionSequence.powers(f).pointwise_limit()
    assert limit.apply(0) == 1


def test_powers_of_decay_maps():
    g = FunctionSpec.decay(Z, I, EVENS)
    fs = FunctionSequence.powers(g)
    assert fs.term(1).apply(1) == Fraction(1, 4)
    limit = fs.pointwise_limit()
    assert limit == FunctionSpec.characteristic(Z, I, EVENS)


def test_eventually_constant_sequences():
    f0 = FunctionSpec.table(F3, I, [Fraction(0), Fraction(0), Fraction(0)])
    f1 = FunctionSpec.table(F3, I, [Fraction(1), Fraction(0), Fraction(0)])
    fs = FunctionSequence.eventually_constant([f0], f1)
    assert fs.term(0) == f0
    assert fs.term(7) == f1
    assert fs.pointwise_limit() == f1


def test_powers_need_unit_interval_values():
    with pytest.raises(WrongUniverseKind):
        FunctionSequence.powers(FunctionSpec.table(F3, F3, [0, 1, 2]))
