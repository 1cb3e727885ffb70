"""Chains, the countable-union property, Baire algebras, coreflection,
factorisation, and pointwise-limit closure."""

import itertools
from fractions import Fraction

import pytest

from proxkit.algebra import SetAlgebra, all_partition_algebras
from proxkit.duality import proximity_from_algebra
from proxkit.errors import (
    NotAChain,
    NotOpen,
    PreconditionFailed,
    PreconditionNotEstablished,
    SourceNotSigma,
    UnsupportedKind,
)
from proxkit.maps import FunctionSpec
from proxkit.pools import integer_pool
from proxkit.proximity import Proximity
from proxkit.sequences import FunctionSequence, SetSequence
from proxkit.sigma import (
    chain_rule_decided,
    check_cor_zero_sets,
    check_factorization,
    check_p_aleph1_implies_zerodim,
    check_pointwise_closure,
    check_sigma_iff_p_aleph1,
    coreflection,
    is_p_aleph1,
    is_prec_chain,
    lindelof_cozero_chain,
    normalize_proximity,
    proximally_baire,
    proximally_zero_from_chain,
    zero_set_certificate,
)
from proxkit.universe import SymSet, Universe, all_subsets

Z = Universe.integers()
ZI = Universe.integers(with_infinity=True)
F2 = Universe.finite(2)
F3 = Universe.finite(3)
I = Universe.unit_interval()

EVENS = SymSet.periodic(Z, 2, [0])
ODDS = EVENS.complement()
ONE_POINT = Proximity.one_point(Z)


# -- chains -------------------------------------------------------------------


def test_shrink_tail_chain_is_rule_certified():
    z = SetSequence.shrink_tail(EVENS, ODDS)
    rep = is_prec_chain(ONE_POINT, z)
    assert rep.status == "holds-exhaustive"
    assert proximally_zero_from_chain(ONE_POINT, z) == EVENS


def test_every_set_has_a_universal_chain_under_one_point():
    for r in integer_pool(Z)[::9]:
        z = SetSequence.shrink_tail(r, r.complement())
        assert chain_rule_decided(ONE_POINT, z) is True
        assert proximally_zero_from_chain(ONE_POINT, z) == r


def test_constant_chain_fails_for_half_infinite_sets():
    z = SetSequence.constant(EVENS)
    rep = is_prec_chain(ONE_POINT, z)
    assert rep.status == "counterexample"
    with pytest.raises(NotAChain):
        proximally_zero_from_chain(ONE_POINT, z)


def test_nonincreasing_chains_hold_in_discrete():
    d = Proximity.discrete(Z)
    z = SetSequence.list_then_constant(
        [SymSet.of(Z, [0, 1, 2]), SymSet.of(Z, [0, 1])], SymSet.of(Z, [0]))
    assert is_prec_chain(d, z).status == "holds-exhaustive"


def test_interval_shrink_chain_certifies_closed_sets():
    dm = Proximity.metric(I)
    target = SymSet.interval(I, Fraction(1, 4), Fraction(1, 2))
    z = SetSequence.interval_shrink(target)
    assert is_prec_chain(dm, z).status == "holds-exhaustive"
    assert proximally_zero_from_chain(dm, z) == target


def test_unruled_chain_reports_probes_only():
    # ascending prefixes never form a descending chain unless empty
    z = SetSequence.prefixes(EVENS)
    rep = is_prec_chain(ONE_POINT, z)
    assert rep.status == "counterexample"
    empty_prefixes = SetSequence.prefixes(SymSet.empty(Z))
    assert is_prec_chain(ONE_POINT, empty_prefixes).status == "holds-exhaustive"


def test_finite_zero_sets_match_bounded_chain_search():
    """Oracle: on a finite carrier, search all descending chains with a
    constant tail instead of trusting the self-proximal shortcut."""
    m = SetAlgebra.from_atoms(F3, [SymSet.of(F3, [0]), SymSet.of(F3, [1, 2])])
    d = proximity_from_algebra(m)
    subs = all_subsets(F3)

    def chain_certifiable(target):
        for tail in subs:
            if not d.strongly_below(tail, tail):
                continue
            if tail != target:
                continue
            return True
        # longer chains cannot help: links only shrink and the tail repeats
        for first, tail in itertools.product(subs, repeat=2):
            if tail == target and d.strongly_below(tail, first) \
                    and d.strongly_below(tail, tail) and d.strongly_below(first, first):
                return True
        return False

    for r in subs:
        assert (zero_set_certificate(d, r) is not None) == chain_certifiable(r)
        assert chain_certifiable(r) == d.strongly_below(r, r)


# -- the countable-union property ---------------------------------------------


def test_union_property_counterexample_on_one_point():
    rep = is_p_aleph1(ONE_POINT)
    assert rep.status == "counterexample"
    rendered = [w.rendering for w in rep.witnesses]
    assert "prefixes(periodic(p=2, residues={0}))" in rendered
    assert "periodic(p=2, residues={0})" in rendered


def test_union_property_counterexample_on_finite_cofinite():
    rep = is_p_aleph1(proximity_from_algebra(SetAlgebra.finite_cofinite(Z)))
    assert rep.status == "counterexample"
    assert "prefixes(periodic(p=2, residues={0}))" in [w.rendering for w in rep.witnesses]


def test_union_property_holds_for_discrete_and_finite():
    assert is_p_aleph1(Proximity.discrete(Z)).status == "holds-on-family"
    assert is_p_aleph1(Proximity.discrete(F3)).status == "holds-exhaustive"
    m = SetAlgebra.from_atoms(F3, [SymSet.of(F3, [0]), SymSet.of(F3, [1, 2])])
    assert is_p_aleph1(proximity_from_algebra(m)).status == "holds-exhaustive"


def test_union_property_counterexample_on_metric():
    rep = is_p_aleph1(Proximity.metric(I))
    assert rep.status == "counterexample"


def test_union_property_on_extended_integers():
    rep = is_p_aleph1(Proximity.one_point(ZI))
    assert rep.status == "counterexample"


def test_union_property_on_subspaces():
    half = Proximity.subspace(ONE_POINT, EVENS)
    rep = is_p_aleph1(half)
    assert rep.status == "counterexample"
    tame = Proximity.subspace(Proximity.discrete(Z), EVENS)
    assert is_p_aleph1(tame).status == "holds-on-family"


def test_sigma_iff_union_property():
    rep = check_sigma_iff_p_aleph1(SetAlgebra.powerset(Z))
    assert rep.holds()
    assert any("both sides true" in w.rendering for w in rep.witnesses)

    rep = check_sigma_iff_p_aleph1(SetAlgebra.finite_cofinite(Z))
    assert rep.holds()
    assert any("both sides false" in w.rendering for w in rep.witnesses)
    assert "periodic(p=2, residues={0})" in [w.rendering for w in rep.witnesses]

    for m in all_partition_algebras(F3):
        rep = check_sigma_iff_p_aleph1(m)
        assert rep.status == "holds-exhaustive"
        assert any("both sides true" in w.rendering for w in rep.witnesses)


def test_union_property_implies_zero_dimensional():
    assert check_p_aleph1_implies_zerodim(Proximity.discrete(Z)).holds()
    m = SetAlgebra.powerset(Universe.finite(4))
    assert check_p_aleph1_implies_zerodim(proximity_from_algebra(m)).holds()
    with pytest.raises(PreconditionNotEstablished):
        check_p_aleph1_implies_zerodim(Proximity.metric(I))


def test_zero_sets_in_algebra_agreement():
    rep = check_cor_zero_sets(ONE_POINT)
    assert rep.holds()
    rendered = [w.rendering for w in rep.witnesses]
    assert "both sides false" in rendered
    assert "periodic(p=2, residues={0})" in rendered  # the first escaping zero set

    rep = check_cor_zero_sets(Proximity.discrete(Z))
    assert rep.holds()
    assert "both sides true" in [w.rendering for w in rep.witnesses]

    m = SetAlgebra.from_atoms(F3, [SymSet.of(F3, [0]), SymSet.of(F3, [1, 2])])
    rep = check_cor_zero_sets(proximity_from_algebra(m))
    assert rep.status == "holds-exhaustive"


# -- the Baire algebra and the coreflection -------------------------------------


def test_baire_algebra_per_kind():
    assert proximally_baire(Proximity.discrete(F3)) == SetAlgebra.powerset(F3)
    assert proximally_baire(ONE_POINT) == SetAlgebra.powerset(Z)
    m = SetAlgebra.from_atoms(F3, [SymSet.of(F3, [0]), SymSet.of(F3, [1, 2])])
    assert proximally_baire(proximity_from_algebra(m)) == m
    with pytest.raises(UnsupportedKind):
        proximally_baire(Proximity.metric(I))


def test_baire_algebra_on_extended_integers():
    assert proximally_baire(Proximity.one_point(ZI)) == SetAlgebra.powerset(ZI)
    # the closed shapes are certified: finite integer sets and sets holding
    # the extra point
    d = Proximity.one_point(ZI)
    assert zero_set_certificate(d, SymSet.of(ZI, [3])) is not None
    evens_inf = SymSet.periodic(ZI, 2, [0], infinity=True)
    assert zero_set_certificate(d, evens_inf) is not None
    evens_plain = SymSet.periodic(ZI, 2, [0])
    assert zero_set_certificate(d, evens_plain) is None


def test_coreflection_moves_one_point_to_discrete():
    c = coreflection(ONE_POINT)
    assert c == Proximity.discrete(Z)
    assert coreflection(c) == c
    assert c.near(SymSet.of(Z, [0]), SymSet.of(Z, [0, 1]))
    assert not c.near(EVENS, ODDS)


def test_coreflection_fixes_countable_union_closed_spaces():
    m = SetAlgebra.from_atoms(F3, [SymSet.of(F3, [0]), SymSet.of(F3, [1, 2])])
    d = proximity_from_algebra(m)
    assert coreflection(d) == d
    assert coreflection(Proximity.discrete(Z)) == Proximity.discrete(Z)


def test_normalization():
    assert normalize_proximity(
        proximity_from_algebra(SetAlgebra.powerset(Z))) == Proximity.discrete(Z)
    assert normalize_proximity(
        proximity_from_algebra(SetAlgebra.finite_cofinite(Z))) == ONE_POINT


# -- factorisation ---------------------------------------------------------------


def test_factorization_through_the_coreflection():
    F4 = Universe.finite(4)
    f = FunctionSpec.table(F4, Z, [0, 2, 4, 6])
    rep = check_factorization(f, SetAlgebra.powerset(F4), ONE_POINT)
    assert rep.holds()

    chi = FunctionSpec.characteristic(Z, F2, EVENS)
    rep = check_factorization(chi, SetAlgebra.powerset(Z), Proximity.discrete(F2))
    assert rep.holds()
    assert any("both sides true" in w.rendering for w in rep.witnesses)

    ident = FunctionSpec.identity(Z)
    rep = check_factorization(ident, SetAlgebra.powerset(Z), ONE_POINT)
    assert rep.holds()
    assert any("both sides true" in w.rendering for w in rep.witnesses)


def test_factorization_rejects_non_sigma_sources():
    with pytest.raises(SourceNotSigma):
        check_factorization(FunctionSpec.identity(Z),
                            SetAlgebra.finite_cofinite(Z), ONE_POINT)


def test_factorization_rejects_unsupported_targets():
    from proxkit.errors import TargetUnsupported
    f = FunctionSpec.constant(Z, I, Fraction(0))
    with pytest.raises(TargetUnsupported):
        check_factorization(f, SetAlgebra.powerset(Z), Proximity.metric(I))


# -- pointwise limits ---------------------------------------------------------------


def test_pointwise_limits_hold_over_union_closed_sources():
    m = SetAlgebra.powerset(F3)
    d = proximity_from_algebra(m)
    f = FunctionSpec.table(F3, I, [Fraction(0), Fraction(1, 2), Fraction(1)])
    rep = check_pointwise_closure(d, FunctionSequence.powers(f), Proximity.metric(I))
    assert rep.holds()


def test_pointwise_limit_negative_control():
    g = FunctionSpec.decay(Z, I, EVENS)
    fs = FunctionSequence.powers(g)
    with pytest.raises(PreconditionFailed):
        check_pointwise_closure(ONE_POINT, fs, Proximity.metric(I))
    rep = check_pointwise_closure(ONE_POINT, fs, Proximity.metric(I),
                                  require_union_property=False)
    assert rep.status == "counterexample"
    assert any("hypothesis is necessary" in w.rendering for w in rep.witnesses)


def test_pointwise_terms_must_be_maps():
    chi = FunctionSpec.characteristic(Z, I, EVENS)
    fs = FunctionSequence.constant(chi)
    with pytest.raises(PreconditionFailed):
        check_pointwise_closure(ONE_POINT, fs, Proximity.metric(I),
                                require_union_property=False)


# -- cozero certificates ---------------------------------------------------------


def test_cozero_certificates():
    cert = lindelof_cozero_chain(ONE_POINT, EVENS)
    assert cert.render() == ("shrink_tail(core=periodic(p=2, residues={1}), "
                             "tail=periodic(p=2, residues={0}))")
    assert proximally_zero_from_chain(ONE_POINT, cert) == ODDS

    assert lindelof_cozero_chain(ONE_POINT, SymSet.whole(Z)).render() == "constant({})"

    cofinite = SymSet.whole(Z) - SymSet.of(Z, [0])
    cert = lindelof_cozero_chain(ONE_POINT, cofinite)
    assert cert.limit_intersection() == SymSet.of(Z, [0])

    d_ext = Proximity.one_point(ZI)
    evens_inf = SymSet.periodic(ZI, 2, [0], infinity=True)
    with pytest.raises(NotOpen):
        lindelof_cozero_chain(d_ext, evens_inf)
