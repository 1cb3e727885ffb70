"""Algebras of sets: complement- and union-closed families with decidable membership.

Supported kinds:

* ``powerset``: every subset of the carrier;
* ``finite_cofinite``: subsets of the carrier that are finite or cofinite
  relative to it; on a universe with an infinity point the finite members
  avoid that point and the cofinite members contain it, which makes the
  family exactly the clopen algebra of the one-point extension;
* ``atoms``: unions of the blocks of an explicit finite partition;
* ``generated``: the algebra generated by finitely many symbolic sets,
  materialised through its nonempty Boolean cells.

Atom-based and generated algebras are finitely atomic even over infinite
universes, so their filter spaces stay enumerable.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .errors import NotFinitelyAtomic, UniverseMismatch, WrongUniverseKind
from .universe import INFINITY, SymSet, Universe, UniverseKind


class AlgebraKind(enum.Enum):
    POWERSET = "powerset"
    FINITE_COFINITE = "finite_cofinite"
    ATOMS = "atoms"


@dataclass(frozen=True)
class SetAlgebra:
    universe: Universe
    kind: AlgebraKind
    atoms: tuple | None = None          # canonical blocks for finitely atomic kinds
    carrier: SymSet = None              # defaults to the whole universe

    def __post_init__(self):
        if self.carrier is None:
            object.__setattr__(self, "carrier", SymSet.whole(self.universe))

    # -- constructors --------------------------------------------------------

    @staticmethod
    def powerset(universe: Universe, carrier: SymSet | None = None) -> "SetAlgebra":
        return SetAlgebra(universe, AlgebraKind.POWERSET, carrier=carrier)

    @staticmethod
    def finite_cofinite(universe: Universe, carrier: SymSet | None = None) -> "SetAlgebra":
        if universe.kind is not UniverseKind.INTEGERS:
            raise WrongUniverseKind("the finite/cofinite algebra lives on an integer universe")
        return SetAlgebra(universe, AlgebraKind.FINITE_COFINITE, carrier=carrier)

    @staticmethod
    def from_atoms(universe: Universe, atoms, carrier: SymSet | None = None) -> "SetAlgebra":
        """An explicit partition of the carrier into blocks."""
        atoms = [a for a in atoms if not a.is_empty()]
        if not atoms:
            raise UniverseMismatch("an atom partition needs at least one block")
        if any(a.universe != universe for a in atoms):
            raise UniverseMismatch("atoms outside the given universe")
        covered = SymSet.empty(universe)
        for a in atoms:
            if covered.intersects(a):
                raise UniverseMismatch("atoms overlap")
            covered = covered | a
        if carrier is None:
            carrier = SymSet.whole(universe)
        if covered != carrier:
            raise UniverseMismatch("atoms do not partition the carrier")
        ordered = tuple(sorted(atoms, key=lambda a: a.sort_key()))
        return SetAlgebra(universe, AlgebraKind.ATOMS, atoms=ordered, carrier=carrier)

    @staticmethod
    def generated(universe: Universe, generators, carrier: SymSet | None = None) -> "SetAlgebra":
        """The algebra generated by the given sets: built from its Boolean cells."""
        generators = list(generators)
        if carrier is None:
            carrier = SymSet.whole(universe)
        if any(g.universe != universe for g in generators):
            raise UniverseMismatch("generators outside the given universe")
        cells = []
        for signs in itertools.product((True, False), repeat=len(generators)):
            cell = carrier
            for g, keep in zip(generators, signs):
                cell = cell & g if keep else cell - g
            if not cell.is_empty():
                cells.append(cell)
        if not cells:
            cells = [carrier]
        return SetAlgebra.from_atoms(universe, cells, carrier=carrier)

    # -- structure -----------------------------------------------------------

    def is_finitely_atomic(self) -> bool:
        if self.kind is AlgebraKind.ATOMS:
            return True
        if self.kind is AlgebraKind.POWERSET:
            return self.carrier.is_finite()
        return False

    def atom_list(self) -> tuple:
        """The atoms, for finitely atomic algebras."""
        if self.kind is AlgebraKind.ATOMS:
            return self.atoms
        if self.kind is AlgebraKind.POWERSET and self.carrier.is_finite():
            singles = [SymSet.of(self.universe, (x,)) for x in self.carrier.elements()]
            return tuple(sorted(singles, key=lambda a: a.sort_key()))
        raise NotFinitelyAtomic(
            f"the {self.kind.value} algebra on {self.universe!r} has no finite atom list")

    def saturate(self, r: SymSet) -> SymSet:
        """The smallest member containing r, for finitely atomic algebras."""
        out = SymSet.empty(self.universe)
        for a in self.atom_list():
            if a.intersects(r):
                out = out | a
        return out

    def contains(self, r: SymSet) -> bool:
        if r.universe != self.universe:
            raise UniverseMismatch("membership argument outside the algebra's universe")
        if not r.issubset(self.carrier):
            return False
        if self.kind is AlgebraKind.POWERSET:
            return True
        if self.kind is AlgebraKind.FINITE_COFINITE:
            return self._fc_contains(r)
        return self.saturate(r) == r

    def _fc_contains(self, r: SymSet) -> bool:
        if self.carrier.is_finite():
            return True
        inf_in_carrier = self.universe.with_infinity and self.carrier.contains(INFINITY)
        co = self.carrier - r
        if r.is_finite():
            return not (inf_in_carrier and r.contains(INFINITY))
        if co.is_finite():
            return not inf_in_carrier or r.contains(INFINITY)
        return False

    def members(self) -> list[SymSet]:
        """Every member, for finitely atomic algebras, in a stable order."""
        atoms = self.atom_list()
        out = []
        for r in range(len(atoms) + 1):
            for combo in itertools.combinations(atoms, r):
                m = SymSet.empty(self.universe)
                for a in combo:
                    m = m | a
                out.append(m)
        return out

    def is_sigma_closed(self) -> bool:
        """Closure under countable unions. Finitely atomic families always are;
        the finite/cofinite family on an infinite carrier never is."""
        if self.kind is AlgebraKind.FINITE_COFINITE:
            return self.carrier.is_finite()
        return True

    def is_reduced(self) -> bool:
        """Whether distinct carrier points are separated by some member."""
        if self.kind in (AlgebraKind.POWERSET, AlgebraKind.FINITE_COFINITE):
            return True
        return all(a.cardinality().count == 1 for a in self.atoms)

    def describe(self) -> str:
        if self.kind is AlgebraKind.POWERSET:
            body = "powerset"
        elif self.kind is AlgebraKind.FINITE_COFINITE:
            body = "finite_cofinite"
        else:
            body = "atoms(" + ", ".join(a.render() for a in self.atoms) + ")"
        if not self.carrier.is_whole():
            body += f" on {self.carrier.render()}"
        return body

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetAlgebra):
            return NotImplemented
        if self.universe != other.universe or self.carrier != other.carrier:
            return False
        try:
            return set(self.atom_list()) == set(other.atom_list())
        except NotFinitelyAtomic:
            pass
        return self.kind == other.kind

    def __hash__(self) -> int:
        return hash((self.universe, self.kind, self.atoms, self.carrier))


def all_partition_algebras(universe: Universe) -> list[SetAlgebra]:
    """One algebra per set partition of a finite universe."""
    if universe.kind is not UniverseKind.FINITE:
        raise WrongUniverseKind("partition enumeration needs a finite universe")

    def partitions(items):
        if not items:
            yield []
            return
        head, rest = items[0], items[1:]
        for part in partitions(rest):
            for i in range(len(part)):
                yield part[:i] + [[head] + part[i]] + part[i + 1:]
            yield [[head]] + part

    out = []
    for part in partitions(list(range(universe.size))):
        atoms = [SymSet.of(universe, block) for block in part]
        out.append(SetAlgebra.from_atoms(universe, atoms))
    return sorted(out, key=lambda m: tuple(a.sort_key() for a in m.atoms))
