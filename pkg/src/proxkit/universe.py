"""Canonical symbolic subsets of three ground universes.

Universe kinds:

* ``finite(n)``: the prefix ``{0, ..., n-1}`` of the naturals; sets are
  plain element collections.
* ``integers(with_infinity=...)``: the integers, optionally extended by a
  single distinguished point at infinity; sets are eventually periodic,
  stored as a periodic residue pattern plus a finite set of positions where
  actual membership flips the pattern's prediction.
* ``unit_interval()``: the rational points of [0, 1]; sets are finite
  unions of intervals with rational endpoints.

Every set is normalised on construction: minimal period, flip positions
exactly where membership disagrees with the pattern, intervals sorted and
merged. Structural equality therefore coincides with extensional equality,
and all Boolean operations are exact.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator

from .errors import EmptyInput, UniverseMismatch, WrongUniverseKind


class _Infinity:
    """The adjoined compactification point. A process-wide singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"


INFINITY = _Infinity()


class UniverseKind(enum.Enum):
    FINITE = "finite"
    INTEGERS = "integers"
    UNIT_INTERVAL = "unit_interval"


@dataclass(frozen=True)
class Universe:
    kind: UniverseKind
    size: int = 0
    with_infinity: bool = False

    @staticmethod
    def finite(n: int) -> "Universe":
        if n < 1:
            raise WrongUniverseKind("finite universes need at least one point")
        return Universe(UniverseKind.FINITE, size=n)

    @staticmethod
    def integers(with_infinity: bool = False) -> "Universe":
        return Universe(UniverseKind.INTEGERS, with_infinity=with_infinity)

    @staticmethod
    def unit_interval() -> "Universe":
        return Universe(UniverseKind.UNIT_INTERVAL)

    def __repr__(self) -> str:
        if self.kind is UniverseKind.FINITE:
            return f"finite({self.size})"
        if self.kind is UniverseKind.INTEGERS:
            return "integers with_infinity" if self.with_infinity else "integers"
        return "unit_interval"


@dataclass(frozen=True)
class Cardinality:
    finite: bool
    count: int | None = None

    @staticmethod
    def of(count: int) -> "Cardinality":
        return Cardinality(True, count)

    INFINITE: "Cardinality" = None  # assigned below

    def __repr__(self) -> str:
        return f"Finite({self.count})" if self.finite else "Infinite"


Cardinality.INFINITE = Cardinality(False, None)


# ---------------------------------------------------------------------------
# payloads


@dataclass(frozen=True)
class _FiniteBits:
    bits: frozenset


@dataclass(frozen=True)
class _PeriodicInts:
    period: int
    residues: frozenset
    flips: frozenset  # positions where membership differs from the pattern
    infinity: bool

    def pattern(self, n: int) -> bool:
        return n % self.period in self.residues

    def member(self, n: int) -> bool:
        return self.pattern(n) != (n in self.flips)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool

    def contains(self, q: Fraction) -> bool:
        if q < self.lo or q > self.hi:
            return False
        if q == self.lo and not self.lo_closed:
            return False
        if q == self.hi and not self.hi_closed:
            return False
        return True

    def render(self) -> str:
        lo = "[" if self.lo_closed else "("
        hi = "]" if self.hi_closed else ")"
        return f"{lo}{self.lo}, {self.hi}{hi}"


@dataclass(frozen=True)
class _IntervalUnion:
    intervals: tuple


def _mk_interval(lo, lo_closed, hi, hi_closed) -> Interval | None:
    """Build an interval, or None when the bounds describe the empty set."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        return None
    if lo == hi and not (lo_closed and hi_closed):
        return None
    return Interval(lo, hi, bool(lo_closed), bool(hi_closed))


def _canon_intervals(items: Iterable[Interval]) -> tuple:
    """Sort and merge so that the interval list is unique for the set."""
    items = sorted(items, key=lambda iv: (iv.lo, not iv.lo_closed, iv.hi, iv.hi_closed))
    out: list[Interval] = []
    for iv in items:
        if not out:
            out.append(iv)
            continue
        cur = out[-1]
        touches = iv.lo < cur.hi or (iv.lo == cur.hi and (cur.hi_closed or iv.lo_closed))
        if not touches:
            out.append(iv)
            continue
        if iv.hi > cur.hi:
            hi, hc = iv.hi, iv.hi_closed
        elif iv.hi < cur.hi:
            hi, hc = cur.hi, cur.hi_closed
        else:
            hi, hc = cur.hi, cur.hi_closed or iv.hi_closed
        out[-1] = Interval(cur.lo, hi, cur.lo_closed, hc)
    return tuple(out)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _canon_periodic(period, residues, flips, infinity) -> _PeriodicInts:
    residues = frozenset(residues)
    best = period
    for d in _divisors(period):
        if all(((r + d) % period in residues) == (r in residues) for r in range(period)):
            best = d
            break
    residues = frozenset(r for r in residues if r < best)
    return _PeriodicInts(best, residues, frozenset(flips), bool(infinity))


def spiral() -> Iterator[int]:
    """Canonical enumeration order of the integers: 0, 1, -1, 2, -2, ..."""
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def rationals_in_unit_interval() -> Iterator[Fraction]:
    """Canonical enumeration of [0,1] rationals by denominator, then numerator."""
    yield Fraction(0)
    yield Fraction(1)
    d = 2
    while True:
        for n in range(1, d):
            q = Fraction(n, d)
            if q.denominator == d:
                yield q
        d += 1


# ---------------------------------------------------------------------------
# SymSet


class SymSet:
    """An immutable, canonical subset of a universe."""

    __slots__ = ("_universe", "_payload", "_hash")

    def __init__(self, universe: Universe, payload):
        self._universe = universe
        self._payload = payload
        self._hash = hash((universe, payload))

    # -- constructors ------------------------------------------------------

    @classmethod
    def empty(cls, universe: Universe) -> "SymSet":
        return cls.of(universe, ())

    @classmethod
    def whole(cls, universe: Universe) -> "SymSet":
        if universe.kind is UniverseKind.FINITE:
            return cls(universe, _FiniteBits(frozenset(range(universe.size))))
        if universe.kind is UniverseKind.INTEGERS:
            return cls(universe, _canon_periodic(1, {0}, (), universe.with_infinity))
        return cls(universe, _IntervalUnion((_mk_interval(0, True, 1, True),)))

    @classmethod
    def of(cls, universe: Universe, elements: Iterable) -> "SymSet":
        elements = list(elements)
        if universe.kind is UniverseKind.FINITE:
            bits = frozenset(elements)
            if not all(isinstance(x, int) and 0 <= x < universe.size for x in bits):
                raise UniverseMismatch(f"elements outside {universe!r}: {sorted(bits, key=repr)}")
            return cls(universe, _FiniteBits(bits))
        if universe.kind is UniverseKind.INTEGERS:
            inf = any(x is INFINITY for x in elements)
            if inf and not universe.with_infinity:
                raise UniverseMismatch("this integer universe has no infinity point")
            ints = frozenset(x for x in elements if x is not INFINITY)
            if not all(isinstance(x, int) for x in ints):
                raise UniverseMismatch("integer universe elements must be ints or inf")
            return cls(universe, _canon_periodic(1, (), ints, inf))
        points = [Fraction(x) for x in elements]
        if not all(0 <= q <= 1 for q in points):
            raise UniverseMismatch("unit interval elements must lie in [0, 1]")
        ivs = [_mk_interval(q, True, q, True) for q in points]
        return cls(universe, _IntervalUnion(_canon_intervals(ivs)))

    @classmethod
    def point(cls, universe: Universe, x) -> "SymSet":
        return cls.of(universe, (x,))

    @classmethod
    def periodic(cls, universe: Universe, period: int, residues: Iterable[int],
                 plus: Iterable[int] = (), minus: Iterable[int] = (),
                 infinity: bool = False) -> "SymSet":
        if universe.kind is not UniverseKind.INTEGERS:
            raise WrongUniverseKind("periodic sets live in an integer universe")
        if period < 1:
            raise WrongUniverseKind("the period must be positive")
        if infinity and not universe.with_infinity:
            raise UniverseMismatch("this integer universe has no infinity point")
        residues = frozenset(r % period for r in residues)
        plus, minus = frozenset(plus), frozenset(minus)

        def member(n: int) -> bool:
            return (n % period in residues and n not in minus) or n in plus

        flips = {n for n in plus | minus if member(n) != (n % period in residues)}
        return cls(universe, _canon_periodic(period, residues, flips, infinity))

    @classmethod
    def from_intervals(cls, universe: Universe, bounds: Iterable) -> "SymSet":
        """Bounds are (lo, hi, lo_closed, hi_closed) tuples or Interval values."""
        if universe.kind is not UniverseKind.UNIT_INTERVAL:
            raise WrongUniverseKind("interval sets live in the unit interval universe")
        ivs = []
        for b in bounds:
            iv = b if isinstance(b, Interval) else _mk_interval(b[0], b[2], b[1], b[3])
            if iv is None:
                continue
            if iv.lo < 0 or iv.hi > 1:
                raise UniverseMismatch("interval endpoints must lie in [0, 1]")
            ivs.append(iv)
        return cls(universe, _IntervalUnion(_canon_intervals(ivs)))

    @classmethod
    def interval(cls, universe: Universe, lo, hi,
                 lo_closed: bool = True, hi_closed: bool = True) -> "SymSet":
        return cls.from_intervals(universe, ((lo, hi, lo_closed, hi_closed),))

    # -- basics ------------------------------------------------------------

    @property
    def universe(self) -> Universe:
        return self._universe

    @property
    def payload(self):
        return self._payload

    def __eq__(self, other) -> bool:
        return (isinstance(other, SymSet) and self._universe == other._universe
                and self._payload == other._payload)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"SymSet({self.render()})"

    def _check(self, other: "SymSet") -> None:
        if not isinstance(other, SymSet) or other._universe != self._universe:
            raise UniverseMismatch(f"cannot combine {self!r} with {other!r}")

    def contains(self, x) -> bool:
        p = self._payload
        if isinstance(p, _FiniteBits):
            return x in p.bits
        if isinstance(p, _PeriodicInts):
            if x is INFINITY:
                return p.infinity
            return p.member(x)
        q = Fraction(x)
        return any(iv.contains(q) for iv in p.intervals)

    def is_empty(self) -> bool:
        p = self._payload
        if isinstance(p, _FiniteBits):
            return not p.bits
        if isinstance(p, _PeriodicInts):
            return not p.residues and not p.flips and not p.infinity
        return not p.intervals

    def is_whole(self) -> bool:
        return self == SymSet.whole(self._universe)

    # -- Boolean calculus ----------------------------------------------------

    def _combine(self, other: "SymSet", op) -> "SymSet":
        self._check(other)
        a, b = self._payload, other._payload
        if isinstance(a, _FiniteBits):
            n = self._universe.size
            bits = frozenset(x for x in range(n) if op(x in a.bits, x in b.bits))
            return SymSet(self._universe, _FiniteBits(bits))
        if isinstance(a, _PeriodicInts):
            p = lcm(a.period, b.period)
            residues = frozenset(
                r for r in range(p) if op(r % a.period in a.residues, r % b.period in b.residues))
            flips = set()
            for n in a.flips | b.flips:
                if op(a.member(n), b.member(n)) != (n % p in residues):
                    flips.add(n)
            inf = op(a.infinity, b.infinity)
            return SymSet(self._universe, _canon_periodic(p, residues, flips, inf))
        if op is _OP_OR:
            return SymSet(self._universe, _IntervalUnion(_canon_intervals(a.intervals + b.intervals)))
        if op is _OP_AND:
            parts = []
            for i in a.intervals:
                for j in b.intervals:
                    lo = max(i.lo, j.lo)
                    lc = (i.lo_closed and j.lo_closed) if i.lo == j.lo else \
                         (i.lo_closed if i.lo > j.lo else j.lo_closed)
                    hi = min(i.hi, j.hi)
                    hc = (i.hi_closed and j.hi_closed) if i.hi == j.hi else \
                         (i.hi_closed if i.hi < j.hi else j.hi_closed)
                    iv = _mk_interval(lo, lc, hi, hc)
                    if iv is not None:
                        parts.append(iv)
            return SymSet(self._universe, _IntervalUnion(_canon_intervals(parts)))
        return self._combine(other.complement(), _OP_AND)

    def union(self, other: "SymSet") -> "SymSet":
        return self._combine(other, _OP_OR)

    def intersect(self, other: "SymSet") -> "SymSet":
        return self._combine(other, _OP_AND)

    def difference(self, other: "SymSet") -> "SymSet":
        return self._combine(other, _OP_DIFF)

    def complement(self) -> "SymSet":
        p = self._payload
        if isinstance(p, _FiniteBits):
            return SymSet(self._universe,
                          _FiniteBits(frozenset(range(self._universe.size)) - p.bits))
        if isinstance(p, _PeriodicInts):
            residues = frozenset(r for r in range(p.period) if r not in p.residues)
            inf = (not p.infinity) if self._universe.with_infinity else False
            return SymSet(self._universe, _canon_periodic(p.period, residues, p.flips, inf))
        out = []
        cursor, cursor_closed = Fraction(0), True
        for iv in p.intervals:
            gap = _mk_interval(cursor, cursor_closed, iv.lo, not iv.lo_closed)
            if gap is not None:
                out.append(gap)
            cursor, cursor_closed = iv.hi, not iv.hi_closed
        tail = _mk_interval(cursor, cursor_closed, 1, True)
        if tail is not None:
            out.append(tail)
        return SymSet(self._universe, _IntervalUnion(_canon_intervals(out)))

    __or__ = union
    __and__ = intersect
    __sub__ = difference
    __invert__ = complement

    def intersects(self, other: "SymSet") -> bool:
        self._check(other)
        a, b = self._payload, other._payload
        if isinstance(a, _FiniteBits):
            return bool(a.bits & b.bits)
        if isinstance(a, _PeriodicInts):
            if a.infinity and b.infinity:
                return True
            p = lcm(a.period, b.period)
            core = any(r % a.period in a.residues and r % b.period in b.residues
                       for r in range(p))
            if core:
                # a pattern overlap hits infinitely many positions, the
                # finitely many flips cannot remove them all
                flips = a.flips | b.flips
                for r in range(p):
                    if r % a.period in a.residues and r % b.period in b.residues:
                        n = r
                        while n in flips:
                            n += p
                        return True
            return any(a.member(n) and b.member(n) for n in a.flips | b.flips)
        for i in a.intervals:
            for j in b.intervals:
                if i.lo <= j.hi and j.lo <= i.hi:
                    lo = max(i.lo, j.lo)
                    hi = min(i.hi, j.hi)
                    if lo < hi:
                        return True
                    if lo == hi and i.contains(lo) and j.contains(lo):
                        return True
        return False

    def isdisjoint(self, other: "SymSet") -> bool:
        return not self.intersects(other)

    def issubset(self, other: "SymSet") -> bool:
        a, b = self._payload, other._payload
        if isinstance(a, _FiniteBits) and isinstance(b, _FiniteBits):
            self._check(other)
            return a.bits <= b.bits
        return not self.intersects(other.complement())

    # -- size and elements ---------------------------------------------------

    def cardinality(self) -> Cardinality:
        p = self._payload
        if isinstance(p, _FiniteBits):
            return Cardinality.of(len(p.bits))
        if isinstance(p, _PeriodicInts):
            if p.residues:
                return Cardinality.INFINITE
            return Cardinality.of(len(p.flips) + (1 if p.infinity else 0))
        if all(iv.lo == iv.hi for iv in p.intervals):
            return Cardinality.of(len(p.intervals))
        return Cardinality.INFINITE

    def is_finite(self) -> bool:
        return self.cardinality().finite

    def has_infinite_integer_part(self) -> bool:
        p = self._payload
        return isinstance(p, _PeriodicInts) and bool(p.residues)

    def elements(self) -> Iterator:
        """Members in the canonical enumeration order of the universe."""
        p = self._payload
        if isinstance(p, _FiniteBits):
            yield from sorted(p.bits)
            return
        if isinstance(p, _PeriodicInts):
            if p.infinity:
                yield INFINITY
            if p.residues:
                source: Iterable[int] = spiral()
            else:
                source = sorted(p.flips, key=lambda n: (abs(n), -n))
            for n in source:
                if p.member(n):
                    yield n
            return
        card = self.cardinality()
        found = 0
        for q in rationals_in_unit_interval():
            if self.contains(q):
                yield q
                found += 1
                if card.finite and found == card.count:
                    return

    def pick(self):
        """The first element in enumeration order, or None when empty."""
        for x in self.elements():
            return x
        return None

    def shift(self, k: int) -> "SymSet":
        """Translate an integer set by k; the infinity point stays fixed."""
        p = self._payload
        if not isinstance(p, _PeriodicInts):
            raise WrongUniverseKind("shift applies to integer universes")
        residues = frozenset((r + k) % p.period for r in p.residues)
        flips = frozenset(n + k for n in p.flips)
        return SymSet(self._universe, _canon_periodic(p.period, residues, flips, p.infinity))

    # -- presentation ----------------------------------------------------------

    def render(self) -> str:
        p = self._payload
        if isinstance(p, _FiniteBits):
            return "{" + ", ".join(str(x) for x in sorted(p.bits)) + "}"
        if isinstance(p, _PeriodicInts):
            if not p.residues:
                elems = [str(n) for n in sorted(p.flips)]
                if p.infinity:
                    elems.append("inf")
                return "{" + ", ".join(elems) + "}"
            core = f"periodic(p={p.period}, residues={{{', '.join(str(r) for r in sorted(p.residues))}}})"
            adds = sorted(n for n in p.flips if not p.pattern(n))
            cuts = sorted(n for n in p.flips if p.pattern(n))
            add_tokens = [str(n) for n in adds]
            if p.infinity:
                add_tokens.append("inf")
            if add_tokens:
                core += " + {" + ", ".join(add_tokens) + "}"
            if cuts:
                core += " - {" + ", ".join(str(n) for n in cuts) + "}"
            return core
        if not p.intervals:
            return "{}"
        return " ∪ ".join(iv.render() for iv in p.intervals)

    def sort_key(self):
        p = self._payload
        if isinstance(p, _FiniteBits):
            return (0, tuple(sorted(p.bits)))
        if isinstance(p, _PeriodicInts):
            return (p.period, tuple(sorted(p.residues)), tuple(sorted(p.flips)), p.infinity)
        return tuple((iv.lo, iv.hi, iv.lo_closed, iv.hi_closed) for iv in p.intervals)


_OP_OR = lambda x, y: x or y
_OP_AND = lambda x, y: x and y
_OP_DIFF = lambda x, y: x and not y


# ---------------------------------------------------------------------------
# derived operations


def distance(a: SymSet, b: SymSet) -> Fraction:
    """Exact infimum distance between two nonempty unit-interval sets."""
    if a.universe.kind is not UniverseKind.UNIT_INTERVAL:
        raise WrongUniverseKind("distance applies to unit-interval sets")
    a._check(b)
    if a.is_empty() or b.is_empty():
        raise EmptyInput("distance needs nonempty sets")
    best = None
    for i in a.payload.intervals:
        for j in b.payload.intervals:
            if i.lo <= j.hi and j.lo <= i.hi:
                return Fraction(0)
            gap = j.lo - i.hi if j.lo > i.hi else i.lo - j.hi
            if best is None or gap < best:
                best = gap
    return best


def interval_closure(a: SymSet) -> SymSet:
    """Close each interval. This is the metric closure inside [0,1] rationals."""
    if a.universe.kind is not UniverseKind.UNIT_INTERVAL:
        raise WrongUniverseKind("interval closure applies to unit-interval sets")
    ivs = [Interval(iv.lo, iv.hi, True, True) for iv in a.payload.intervals]
    return SymSet.from_intervals(a.universe, ivs)


def interval_expand(a: SymSet, eps: Fraction) -> SymSet:
    """Grow each interval by eps on both sides, clamped to [0,1], closed."""
    if a.universe.kind is not UniverseKind.UNIT_INTERVAL:
        raise WrongUniverseKind("interval expansion applies to unit-interval sets")
    eps = Fraction(eps)
    ivs = []
    for iv in a.payload.intervals:
        lo = max(Fraction(0), iv.lo - eps)
        hi = min(Fraction(1), iv.hi + eps)
        ivs.append(Interval(lo, hi, True, True))
    return SymSet.from_intervals(a.universe, ivs)


def probe_window(*sets: SymSet, factor: int = 3, pad: int = 2) -> range:
    """An integer window provably large enough to decide equality questions.

    Covers factor * lcm(periods) plus every flip position on both sides.
    """
    periods = [1]
    span = pad
    for s in sets:
        p = s.payload
        if isinstance(p, _PeriodicInts):
            periods.append(p.period)
            if p.flips:
                span = max(span, max(abs(n) for n in p.flips) + pad)
    hi = factor * lcm(*periods) + span
    return range(-hi, hi + 1)


def all_subsets(universe: Universe) -> list[SymSet]:
    """Every subset of a finite universe, in a stable order."""
    if universe.kind is not UniverseKind.FINITE:
        raise WrongUniverseKind("subset enumeration needs a finite universe")
    ground = range(universe.size)
    out = []
    for r in range(universe.size + 1):
        for combo in itertools.combinations(ground, r):
            out.append(SymSet.of(universe, combo))
    return out
