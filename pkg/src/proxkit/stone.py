"""Ultrafilter spaces of finitely atomic algebras, quotients by ideals, and
induced maps between the filter spaces.

For a finitely atomic algebra the maximal filters correspond exactly to the
atoms, so the filter space is enumerable and the compactification identity
(two sets are near exactly when some point of the filter space lies in both
closures) becomes a finite check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import AlgebraKind, SetAlgebra
from .duality import _subsets_of, measurable_side
from .errors import (
    NotAnIdeal,
    NotFinitelyAtomic,
    NotMeasurable,
    UniverseMismatch,
)
from .maps import FunctionSpec
from .pools import carrier_pool
from .reports import (
    COUNTEREXAMPLE,
    HOLDS_EXHAUSTIVE,
    HOLDS_ON_FAMILY,
    LawReport,
    note,
    witness_pair,
)
from .universe import SymSet


@dataclass(frozen=True)
class Ultrafilter:
    algebra: SetAlgebra
    atom: SymSet

    def contains(self, r: SymSet) -> bool:
        """Membership for algebra members: the whole atom sits inside or outside."""
        return self.atom.issubset(r)

    def render(self) -> str:
        return f"filter at {self.atom.render()}"


@dataclass(frozen=True)
class StoneSpace:
    algebra: SetAlgebra
    points: tuple

    @staticmethod
    def of(algebra: SetAlgebra) -> "StoneSpace":
        return StoneSpace(algebra, tuple(ultrafilters(algebra)))

    def embed(self, x) -> Ultrafilter:
        """The filter of members containing a ground point."""
        for u in self.points:
            if u.atom.contains(x):
                return u
        raise UniverseMismatch(f"{x!r} is outside the carrier")

    def representative_points(self) -> list:
        return [u.atom.pick() for u in self.points]


def ultrafilters(m: SetAlgebra) -> list[Ultrafilter]:
    """One maximal filter per atom; fails for algebras without finite atom lists."""
    try:
        atoms = m.atom_list()
    except NotFinitelyAtomic as exc:
        if m.kind is AlgebraKind.FINITE_COFINITE:
            raise NotFinitelyAtomic(
                "the finite/cofinite family has no finite atom list; its filter "
                "space amounts to the ground points plus one extra point and is "
                "not enumerated here") from exc
        raise
    return [Ultrafilter(m, a) for a in atoms]


def brute_force_ultrafilters(m: SetAlgebra) -> list[frozenset]:
    """Independent oracle: filter the power set of the member list by the
    maximal-filter axioms. Only viable for very small algebras."""
    members = m.members()
    whole = m.carrier
    empty = SymSet.empty(m.universe)
    out = []
    for r in range(1, len(members) + 1):
        for combo in itertools.combinations(members, r):
            fam = set(combo)
            if empty in fam or whole not in fam:
                continue
            ok = True
            for a in members:
                inside = a in fam
                co = m.carrier - a
                if inside == (co in fam):
                    ok = False
                    break
                for b in members:
                    if a in fam and b in fam and (a & b) not in fam:
                        ok = False
                        break
                    if a in fam and a.issubset(b) and b not in fam:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(frozenset(fam))
    return out


def check_smirnov_identity(m: SetAlgebra, pair_limit: int = 40) -> LawReport:
    """Nearness must equal meeting a common atom, with the nearness side
    evaluated by brute-force separator search over the member list."""
    subj = (m.describe(),)
    atoms = m.atom_list()
    members = m.members()
    if m.carrier.is_finite():
        probes = _subsets_of(m.universe, m.carrier)
        status = HOLDS_EXHAUSTIVE
    else:
        probes = [s for s in carrier_pool(m.universe, m.carrier)[:pair_limit]]
        status = HOLDS_ON_FAMILY
    cases = 0
    for a, b in itertools.product(probes, repeat=2):
        cases += 1
        if a.is_empty() or b.is_empty():
            near = False
        else:
            near = not any(a.issubset(r) and not r.intersects(b) for r in members)
        shared = any(atom.intersects(a) and atom.intersects(b) for atom in atoms)
        if near != shared:
            return LawReport("smirnov", subj, COUNTEREXAMPLE, cases_checked=cases,
                             witnesses=(witness_pair(a, b),
                                        note(f"separator search says near={near}, "
                                             f"shared atoms say {shared}")))
    return LawReport("smirnov", subj, status, cases_checked=cases)


# ---------------------------------------------------------------------------
# ideals and quotients


@dataclass(frozen=True)
class Ideal:
    algebra: SetAlgebra
    kind: str                  # "principal" | "finite_sets"
    generator: SymSet | None = None

    @staticmethod
    def principal(m: SetAlgebra, g: SymSet) -> "Ideal":
        if not m.contains(g):
            raise NotAnIdeal(f"{g.render()} is not a member, so it generates no ideal")
        return Ideal(m, "principal", g)

    @staticmethod
    def finite_sets(m: SetAlgebra) -> "Ideal":
        if m.kind is not AlgebraKind.FINITE_COFINITE:
            raise NotAnIdeal("the finite-sets ideal lives in the finite/cofinite family")
        return Ideal(m, "finite_sets")

    def contains(self, r: SymSet) -> bool:
        if not self.algebra.contains(r):
            return False
        if self.kind == "principal":
            return r.issubset(self.generator)
        return r.is_finite()

    def render(self) -> str:
        if self.kind == "principal":
            return f"principal({self.generator.render()})"
        return "finite_sets"


def validate_ideal(i: Ideal, sample_limit: int = 12) -> None:
    """Downward closure and union closure, verified on sample members."""
    m = i.algebra
    if not i.contains(SymSet.empty(m.universe)):
        raise NotAnIdeal("an ideal holds the empty set")
    try:
        sample = m.members()
    except NotFinitelyAtomic:
        sample = [s for s in carrier_pool(m.universe, m.carrier)[:sample_limit * 4]
                  if m.contains(s)][:sample_limit]
    inside = [r for r in sample if i.contains(r)]
    for r in inside:
        for s in sample:
            if s.issubset(r) and not i.contains(s):
                raise NotAnIdeal(f"{s.render()} sits under {r.render()} but escapes")
    for r, s in itertools.combinations(inside, 2):
        if not i.contains(r | s):
            raise NotAnIdeal(f"the union of {r.render()} and {s.render()} escapes")


def quotient_algebra(m: SetAlgebra, i: Ideal) -> SetAlgebra:
    """Collapse the ideal: members are represented by their part off the ideal."""
    if i.algebra != m:
        raise NotAnIdeal("the ideal belongs to a different algebra")
    validate_ideal(i)
    if i.kind == "principal":
        g = i.generator
        kept = [a for a in m.atom_list() if not a.issubset(g)]
        if not kept:
            raise NotAnIdeal("the ideal swallows the whole algebra")
        return SetAlgebra.from_atoms(m.universe, kept, carrier=m.carrier - g)
    # modulo finite sets every member is null or co-null: two classes remain
    return SetAlgebra.from_atoms(m.universe, [m.carrier], carrier=m.carrier)


def quotient_class(m: SetAlgebra, i: Ideal, r: SymSet) -> SymSet:
    """The canonical representative of a member's class."""
    if not m.contains(r):
        raise UniverseMismatch(f"{r.render()} is not a member")
    if i.kind == "principal":
        return r - i.generator
    return SymSet.empty(m.universe) if r.is_finite() else m.carrier


# ---------------------------------------------------------------------------
# induced maps


@dataclass(frozen=True)
class StoneMap:
    source: StoneSpace
    target: StoneSpace
    mapping: tuple  # pairs (source ultrafilter, target ultrafilter)

    def apply(self, u: Ultrafilter) -> Ultrafilter:
        for a, b in self.mapping:
            if a == u:
                return b
        raise UniverseMismatch("that filter is not a point of the source space")

    def render(self) -> str:
        steps = ", ".join(f"{a.atom.render()} -> {b.atom.render()}"
                          for a, b in self.mapping)
        return f"stone_map({steps})"


def stone_map(f: FunctionSpec, m: SetAlgebra, n: SetAlgebra) -> StoneMap:
    """The induced map on filter spaces of a measurable function."""
    verdict, witness, _ = measurable_side(f, m, n)
    if not verdict:
        raise NotMeasurable(
            f"a member preimage escapes the source algebra: {witness.rendering}")
    source, target = StoneSpace.of(m), StoneSpace.of(n)
    mapping = []
    for u in source.points:
        x = u.atom.pick()
        v = target.embed(f.apply(x))
        if not u.atom.issubset(f.preimage(v.atom)):
            raise NotMeasurable("an atom straddles two target atoms")
        mapping.append((u, v))
    return StoneMap(source, target, tuple(mapping))


def compose_stone_maps(g: StoneMap, f: StoneMap) -> StoneMap:
    if f.target.algebra != g.source.algebra:
        raise UniverseMismatch("the filter-space maps do not compose")
    return StoneMap(f.source, g.target,
                    tuple((a, g.apply(b)) for a, b in f.mapping))


def emit_dot(s: StoneSpace) -> str:
    """A deterministic graph rendering: filter nodes plus embedding edges."""
    lines = ["digraph stone {", "  rankdir=LR;", "  node [shape=ellipse];"]
    for idx, u in enumerate(s.points):
        lines.append(f'  "U{idx}" [label="{u.atom.render()}"];')
    ground = s.representative_points() if not s.algebra.carrier.is_finite() \
        else list(s.algebra.carrier.elements())
    for x in ground:
        target = next(i for i, u in enumerate(s.points) if u.atom.contains(x))
        lines.append(f'  "x{x}" [shape=point];')
        lines.append(f'  "x{x}" -> "U{target}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
