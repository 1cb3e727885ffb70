"""Function specifications: evaluation, images, preimages, composition."""

from fractions import Fraction

import pytest

from proxkit.errors import UniverseMismatch, UnsupportedKind
from proxkit.maps import FunctionSpec, all_functions, compose, identity_map
from proxkit.universe import SymSet, Universe

Z = Universe.integers()
F2 = Universe.finite(2)
F3 = Universe.finite(3)
I = Universe.unit_interval()

EVENS = SymSet.periodic(Z, 2, [0])


def test_table_apply_and_preimage():
    f = FunctionSpec.table(F3, F2, [0, 1, 1])
    assert [f.apply(i) for i in range(3)] == [0, 1, 1]
    assert f.preimage(SymSet.of(F2, [1])) == SymSet.of(F3, [1, 2])
    assert f.preimage(SymSet.of(F2, [])) == SymSet.empty(F3)


def test_step_regions_must_partition():
    with pytest.raises(UniverseMismatch):
        FunctionSpec.step(F2, F2, [(SymSet.of(F2, [0]), 0)])
    with pytest.raises(UniverseMismatch):
        FunctionSpec.step(F2, F2, [(SymSet.of(F2, [0, 1]), 0),
                                   (SymSet.of(F2, [1]), 1)])


def test_residue_map_matches_pointwise_oracle():
    f = FunctionSpec.residue_map(Z, Z, 2, {0: 5, 1: 3}, exceptions={7: 0})
    def oracle(n):
        if n == 7:
            return 0
        return 5 if n % 2 == 0 else 3
    for n in range(-9, 10):
        assert f.apply(n) == oracle(n)
    pre = f.preimage(SymSet.of(Z, [5]))
    assert pre == EVENS
    pre = f.preimage(SymSet.of(Z, [3]))
    assert pre == SymSet.periodic(Z, 2, [1], minus=[7])
    assert f.preimage(SymSet.of(Z, [0])) == SymSet.of(Z, [7])


def test_characteristic_into_both_codomains():
    chi_f = FunctionSpec.characteristic(Z, F2, EVENS)
    assert chi_f.apply(4) == 1 and chi_f.apply(3) == 0
    chi_i = FunctionSpec.characteristic(Z, I, EVENS)
    assert chi_i.apply(4) == Fraction(1) and chi_i.apply(3) == Fraction(0)
    assert chi_i.preimage(SymSet.point(I, 1)) == EVENS


def test_affine_images_and_preimages_on_windows():
    f = FunctionSpec.affine_residue(Z, 2, {0: 1, 1: -1}, exceptions={4: 10})
    def oracle(n):
        if n == 4:
            return 10
        return n + 1 if n % 2 == 0 else n - 1
    for n in range(-12, 13):
        assert f.apply(n) == oracle(n)
    window = range(-12, 13)
    a = SymSet.of(Z, [0, 1, 4, 7])
    image = f.image_of(a)
    assert {x for x in window if image.contains(x)} == {oracle(n) for n in a.elements()}
    s = SymSet.periodic(Z, 4, [1])
    pre = f.preimage(s)
    expected = {n for n in window if s.contains(oracle(n))}
    assert {x for x in window if pre.contains(x)} == expected


def test_shift_round_trip():
    f = FunctionSpec.shift_map(Z, 2)
    assert f.apply(5) == 7
    assert f.preimage(EVENS) == EVENS
    assert f.image_of(SymSet.of(Z, [1, 2])) == SymSet.of(Z, [3, 4])


def test_decay_values_and_preimage_oracle():
    g = FunctionSpec.decay(Z, I, EVENS)
    # non-target elements in enumeration order: 1, -1, 3, -3, 5, ...
    assert g.apply(0) == 1
    assert g.apply(1) == Fraction(1, 2)
    assert g.apply(-1) == Fraction(2, 3)
    assert g.apply(3) == Fraction(3, 4)
    ladder = SymSet.interval(I, Fraction(2, 3), 1)
    pre = g.preimage(ladder)
    for n in range(-9, 10):
        assert pre.contains(n) == (g.apply(n) >= Fraction(2, 3))
    squared = FunctionSpec.decay(Z, I, EVENS, power=2)
    assert squared.apply(1) == Fraction(1, 4)


def test_identity_and_composition():
    ident = identity_map(Z)
    assert ident.apply(9) == 9
    assert ident.preimage(EVENS) == EVENS
    f = FunctionSpec.shift_map(Z, 2)
    g = FunctionSpec.characteristic(Z, F2, EVENS)
    gf = compose(g, f)
    for n in range(-8, 9):
        assert gf.apply(n) == g.apply(f.apply(n))
    assert compose(g, ident) == g
    assert compose(ident, f) == f


def test_composition_of_shifts_is_a_shift():
    f = FunctionSpec.shift_map(Z, 2)
    g = FunctionSpec.shift_map(Z, -5)
    gf = compose(g, f)
    for n in range(-6, 7):
        assert gf.apply(n) == n - 3


def test_compose_through_decay_preimages():
    g = FunctionSpec.decay(Z, I, EVENS)
    h = FunctionSpec.characteristic(I, F2, SymSet.point(I, 1))
    hg = compose(h, g)
    for n in range(-6, 7):
        assert hg.apply(n) == (1 if EVENS.contains(n) else 0)


def test_all_functions_enumeration():
    fns = list(all_functions(F3, F2))
    assert len(fns) == 2 ** 3
    assert len(set(fns)) == len(fns)


def test_value_validation():
    with pytest.raises(UniverseMismatch):
        FunctionSpec.table(F3, F2, [0, 1, 2])
    with pytest.raises(UniverseMismatch):
        FunctionSpec.characteristic(Z, I, SymSet.of(F3, [0]))
    with pytest.raises(UnsupportedKind):
        FunctionSpec.decay(Z, I, EVENS).image_of(EVENS)
