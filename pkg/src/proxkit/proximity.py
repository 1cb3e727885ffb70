"""Proximity relations: nearness, the strongly-below order, closure, openness.

A proximity is a symmetric, additive nearness relation on subsets that never
relates the empty set, admits interpolation, and relates intersecting sets.
Built-in kinds satisfy these by construction; explicit finite tables are
accepted unvalidated and vetted by the law checker.

Kinds:

* ``discrete``: near means intersecting;
* ``one_point``: on an integer universe, near means intersecting or both
  having infinite integer part (or one side holding the infinity point
  against an infinite other side) - the nearness of the one-point
  compactification;
* ``metric``: on the rational unit interval, near means distance zero;
* ``from_algebra``: near means no member of the algebra separates the pair;
* ``table``: explicit relation on a finite universe;
* ``subspace``: the restriction of a parent proximity to a carrier set.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .algebra import AlgebraKind, SetAlgebra
from .errors import (
    NoWitnessFound,
    NotStronglyBelow,
    UniverseMismatch,
    WrongUniverseKind,
)
from .universe import (
    INFINITY,
    SymSet,
    Universe,
    UniverseKind,
    all_subsets,
    distance,
    interval_closure,
    interval_expand,
)


class ProximityKind(enum.Enum):
    DISCRETE = "discrete"
    ONE_POINT = "one_point"
    METRIC = "metric"
    FROM_ALGEBRA = "from_algebra"
    TABLE = "table"
    SUBSPACE = "subspace"


def _one_point_near(a: SymSet, b: SymSet) -> bool:
    if a.intersects(b):
        return True
    ai, bi = a.has_infinite_integer_part(), b.has_infinite_integer_part()
    if ai and bi:
        return True
    if a.contains(INFINITY) and bi:
        return True
    if b.contains(INFINITY) and ai:
        return True
    return False


def _one_point_closure(a: SymSet) -> SymSet:
    if a.universe.with_infinity and a.has_infinite_integer_part():
        return a | SymSet.of(a.universe, (INFINITY,))
    return a


@dataclass(frozen=True)
class Proximity:
    universe: Universe
    kind: ProximityKind
    algebra: SetAlgebra | None = None
    table: frozenset | None = None
    parent: "Proximity | None" = None
    carrier: SymSet = None

    def __post_init__(self):
        if self.carrier is None:
            object.__setattr__(self, "carrier", SymSet.whole(self.universe))
        object.__setattr__(self, "_full_carrier",
                           self.carrier == SymSet.whole(self.universe))

    # -- constructors --------------------------------------------------------

    @staticmethod
    def discrete(universe: Universe) -> "Proximity":
        return Proximity(universe, ProximityKind.DISCRETE)

    @staticmethod
    def one_point(universe: Universe) -> "Proximity":
        if universe.kind is not UniverseKind.INTEGERS:
            raise WrongUniverseKind("the one-point proximity lives on an integer universe")
        return Proximity(universe, ProximityKind.ONE_POINT)

    @staticmethod
    def metric(universe: Universe) -> "Proximity":
        if universe.kind is not UniverseKind.UNIT_INTERVAL:
            raise WrongUniverseKind("the metric proximity lives on the unit interval")
        return Proximity(universe, ProximityKind.METRIC)

    @staticmethod
    def from_algebra(algebra: SetAlgebra) -> "Proximity":
        return Proximity(algebra.universe, ProximityKind.FROM_ALGEBRA,
                         algebra=algebra, carrier=algebra.carrier)

    @staticmethod
    def from_table(universe: Universe, near_pairs) -> "Proximity":
        if universe.kind is not UniverseKind.FINITE:
            raise WrongUniverseKind("table proximities need a finite universe")
        pairs = frozenset((a.payload, b.payload) for a, b in near_pairs)
        return Proximity(universe, ProximityKind.TABLE, table=pairs)

    @staticmethod
    def subspace(parent: "Proximity", carrier: SymSet) -> "Proximity":
        if carrier.universe != parent.universe:
            raise UniverseMismatch("subspace carrier outside the parent universe")
        if not carrier.issubset(parent.carrier):
            raise UniverseMismatch("subspace carrier must lie inside the parent's carrier")
        return Proximity(parent.universe, ProximityKind.SUBSPACE,
                         parent=parent, carrier=carrier)

    # -- helpers ------------------------------------------------------------

    def domain(self) -> SymSet:
        return self.carrier

    def _check(self, *sets: SymSet) -> None:
        for s in sets:
            if s.universe != self.universe:
                raise UniverseMismatch(f"{s!r} is outside {self.universe!r}")
            if not self._full_carrier and not s.issubset(self.carrier):
                raise UniverseMismatch(f"{s!r} leaves the carrier {self.carrier!r}")

    def complement_in(self, a: SymSet) -> SymSet:
        return self.carrier - a

    # -- the relation --------------------------------------------------------

    def near(self, a: SymSet, b: SymSet) -> bool:
        self._check(a, b)
        k = self.kind
        if k is ProximityKind.DISCRETE:
            return a.intersects(b)
        if k is ProximityKind.ONE_POINT:
            return _one_point_near(a, b)
        if k is ProximityKind.METRIC:
            if a.is_empty() or b.is_empty():
                return False
            return distance(a, b) == 0
        if k is ProximityKind.FROM_ALGEBRA:
            return not self._algebra_separated(a, b)
        if k is ProximityKind.TABLE:
            return (a.payload, b.payload) in self.table
        return self.parent.near(a, b)

    def _algebra_separated(self, a: SymSet, b: SymSet) -> bool:
        """Whether some member contains one argument and misses the other."""
        m = self.algebra
        if a.is_empty() or b.is_empty():
            return True
        if a.intersects(b):
            return False
        if m.kind is AlgebraKind.POWERSET:
            return True
        if m.kind is AlgebraKind.FINITE_COFINITE:
            for candidate in (a, m.carrier - b):
                if m.contains(candidate) and a.issubset(candidate) \
                        and not candidate.intersects(b):
                    return True
            return False
        return not m.saturate(a).intersects(b)

    def strongly_below(self, a: SymSet, b: SymSet) -> bool:
        """a is strongly below b when a is not near the complement of b."""
        self._check(a, b)
        return not self.near(a, self.complement_in(b))

    def closure(self, a: SymSet) -> SymSet:
        self._check(a)
        k = self.kind
        if k is ProximityKind.DISCRETE:
            return a
        if k is ProximityKind.ONE_POINT:
            return _one_point_closure(a)
        if k is ProximityKind.METRIC:
            return interval_closure(a)
        if k is ProximityKind.FROM_ALGEBRA:
            m = self.algebra
            if m.kind is AlgebraKind.POWERSET:
                return a
            if m.kind is AlgebraKind.FINITE_COFINITE:
                if m.carrier.contains(INFINITY) and a.has_infinite_integer_part():
                    return a | SymSet.of(self.universe, (INFINITY,))
                return a
            return m.saturate(a) if not a.is_empty() else a
        if k is ProximityKind.TABLE:
            pts = [x for x in self.carrier.elements()
                   if self.near(SymSet.point(self.universe, x), a)] if not a.is_empty() else []
            return SymSet.of(self.universe, pts)
        return self.parent.closure(a) & self.carrier

    def is_open(self, u: SymSet) -> bool:
        """Open means every point of u is strongly below u."""
        self._check(u)
        return not u.intersects(self.closure(self.complement_in(u)))

    def interpolate(self, a: SymSet, b: SymSet) -> SymSet:
        """A witness c with a strongly below c strongly below b."""
        self._check(a, b)
        if not self.strongly_below(a, b):
            raise NotStronglyBelow(f"{a!r} is not strongly below {b!r}")
        k = self.kind
        if k is ProximityKind.DISCRETE:
            return a
        if k is ProximityKind.ONE_POINT:
            if a.is_finite() and not a.contains(INFINITY):
                return a
            return b
        if k is ProximityKind.METRIC:
            if a.is_empty():
                return a
            if b.is_whole():
                return b
            gap = distance(a, self.complement_in(b))
            return interval_expand(a, gap / 3)
        if k is ProximityKind.FROM_ALGEBRA:
            m = self.algebra
            if m.kind is AlgebraKind.POWERSET:
                return a
            if m.kind is AlgebraKind.FINITE_COFINITE:
                for c in (a, b):
                    if m.contains(c) and self.strongly_below(a, c) and self.strongly_below(c, b):
                        return c
                raise NoWitnessFound(f"no member interpolates {a!r} and {b!r}")
            c = m.saturate(a)
            return c
        if k is ProximityKind.TABLE:
            for c in all_subsets(self.universe):
                if self.strongly_below(a, c) and self.strongly_below(c, b):
                    return c
            raise NoWitnessFound(
                "no interpolant exists; the table violates the interpolation axiom")
        outer = b | (self.parent.carrier - self.carrier)
        return self.parent.interpolate(a, outer) & self.carrier

    # -- diagnostics ---------------------------------------------------------

    def separation_witness(self) -> tuple | None:
        """Two distinct near points, or None when the proximity is separated."""
        k = self.kind
        if k in (ProximityKind.DISCRETE, ProximityKind.ONE_POINT, ProximityKind.METRIC):
            return None
        if k is ProximityKind.FROM_ALGEBRA:
            m = self.algebra
            if m.kind in (AlgebraKind.POWERSET, AlgebraKind.FINITE_COFINITE):
                return None
            for atom in m.atom_list():
                pts = list(itertools.islice(atom.elements(), 2))
                if len(pts) == 2:
                    return pts[0], pts[1]
            return None
        if k is ProximityKind.TABLE:
            for x in self.carrier.elements():
                for y in self.carrier.elements():
                    if x != y and self.near(SymSet.point(self.universe, x),
                                            SymSet.point(self.universe, y)):
                        return x, y
            return None
        witness = self.parent.separation_witness()
        if witness is None:
            return None
        if all(self.carrier.contains(x) for x in witness):
            return witness
        if self.carrier.is_finite():
            for x in self.carrier.elements():
                for y in self.carrier.elements():
                    if x != y and self.near(SymSet.point(self.universe, x),
                                            SymSet.point(self.universe, y)):
                        return x, y
            return None
        return None

    def is_separated(self) -> bool:
        return self.separation_witness() is None

    def describe(self) -> str:
        k = self.kind
        if k is ProximityKind.FROM_ALGEBRA:
            return f"from_algebra({self.algebra.describe()})"
        if k is ProximityKind.SUBSPACE:
            return f"subspace({self.parent.describe()}, {self.carrier.render()})"
        if k is ProximityKind.TABLE:
            return f"table({len(self.table)} near pairs)"
        return f"{k.value}({self.universe!r})"


def proximities_agree(d1: Proximity, d2: Proximity, pairs) -> tuple | None:
    """First probed pair on which the two relations disagree, else None."""
    for a, b in pairs:
        if d1.near(a, b) != d2.near(a, b):
            return a, b
    return None


def all_table_relations(universe: Universe):
    """Every candidate nearness table on a (very small) finite universe."""
    subs = all_subsets(universe)
    cells = list(itertools.product(subs, repeat=2))
    if len(cells) > 16:
        raise WrongUniverseKind("table enumeration is limited to two-point universes")
    for mask in range(2 ** len(cells)):
        pairs = [cells[i] for i in range(len(cells)) if mask >> i & 1]
        yield Proximity.from_table(universe, pairs)
