"""Closed-form countable families of sets and functions.

Every sequence kind can produce an arbitrary term and knows its limit union
and limit intersection in closed form; no limit is ever approximated by
truncation. Set sequence kinds:

* ``constant(a)``;
* ``list_then_constant(items, tail)``;
* ``prefixes(s)``: term n is the first n elements of s in the universe's
  canonical enumeration order;
* ``shrink_tail(core, tail)``: term n is core together with the tail
  elements at integer distance at least n from zero, a descending chain
  whose intersection is the core;
* ``interval_shrink(target)``: term n grows a closed interval union by
  1/(n+1) on each side, a descending chain squeezing onto the target;
* ``complements(inner)``: pointwise complements of another sequence.

Function sequences: constant, eventually constant with a declared tail, and
pointwise powers of a unit-interval map (whose limit is the characteristic
function of the fiber over one, computed symbolically).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import LimitNotComputable, UniverseMismatch, WrongUniverseKind
from .maps import FunctionSpec
from .universe import SymSet, Universe, UniverseKind, interval_expand


@dataclass(frozen=True)
class SetSequence:
    universe: Universe
    kind: str
    data: tuple

    # -- constructors --------------------------------------------------------

    @staticmethod
    def constant(a: SymSet) -> "SetSequence":
        return SetSequence(a.universe, "constant", (a,))

    @staticmethod
    def list_then_constant(items, tail: SymSet) -> "SetSequence":
        items = tuple(items)
        if any(x.universe != tail.universe for x in items):
            raise UniverseMismatch("sequence entries must share one universe")
        return SetSequence(tail.universe, "list_then_constant", (items, tail))

    @staticmethod
    def prefixes(s: SymSet) -> "SetSequence":
        return SetSequence(s.universe, "prefixes", (s,))

    @staticmethod
    def shrink_tail(core: SymSet, tail: SymSet) -> "SetSequence":
        if core.universe != tail.universe:
            raise UniverseMismatch("core and tail must share one universe")
        if core.universe.kind is not UniverseKind.INTEGERS:
            raise WrongUniverseKind("shrinking tails use integer distance from zero")
        return SetSequence(core.universe, "shrink_tail", (core, tail))

    @staticmethod
    def interval_shrink(target: SymSet) -> "SetSequence":
        if target.universe.kind is not UniverseKind.UNIT_INTERVAL:
            raise WrongUniverseKind("interval shrinking lives on the unit interval")
        if any(not (iv.lo_closed and iv.hi_closed) for iv in target.payload.intervals):
            raise WrongUniverseKind("the shrink target must be a closed interval union")
        return SetSequence(target.universe, "interval_shrink", (target,))

    @staticmethod
    def complements(inner: "SetSequence") -> "SetSequence":
        return SetSequence(inner.universe, "complements", (inner,))

    # -- terms and limits ------------------------------------------------------

    def term(self, n: int) -> SymSet:
        k, d = self.kind, self.data
        if k == "constant":
            return d[0]
        if k == "list_then_constant":
            items, tail = d
            return items[n] if n < len(items) else tail
        if k == "prefixes":
            first = itertools.islice(d[0].elements(), n)
            return SymSet.of(self.universe, first)
        if k == "shrink_tail":
            core, tail = d
            # the window {k : |k| >= n} never holds the infinity point
            window = SymSet.periodic(self.universe, 1, [0], minus=range(-(n - 1), n))
            return core | (tail & window)
        if k == "interval_shrink":
            return interval_expand(d[0], Fraction(1, n + 1))
        return self.universe_complement(d[0].term(n))

    def universe_complement(self, a: SymSet) -> SymSet:
        return a.complement()

    def limit_union(self) -> SymSet:
        k, d = self.kind, self.data
        if k == "constant":
            return d[0]
        if k == "list_then_constant":
            items, tail = d
            out = tail
            for x in items:
                out = out | x
            return out
        if k == "prefixes":
            return d[0]
        if k == "shrink_tail":
            return d[0] | d[1]
        if k == "interval_shrink":
            return self.term(0)
        return d[0].limit_intersection().complement()

    def limit_intersection(self) -> SymSet:
        k, d = self.kind, self.data
        if k == "constant":
            return d[0]
        if k == "list_then_constant":
            items, tail = d
            out = tail
            for x in items:
                out = out & x
            return out
        if k == "prefixes":
            return self.term(0)
        if k == "shrink_tail":
            return d[0]
        if k == "interval_shrink":
            return d[0]
        return d[0].limit_union().complement()

    def is_nonincreasing(self) -> bool:
        k = self.kind
        if k in ("constant", "shrink_tail", "interval_shrink"):
            return True
        if k == "prefixes":
            return self.data[0].is_empty()
        if k == "list_then_constant":
            items, tail = self.data
            chain = list(items) + [tail]
            return all(b.issubset(a) for a, b in zip(chain, chain[1:]))
        return self.data[0].is_nondecreasing()

    def is_nondecreasing(self) -> bool:
        k = self.kind
        if k == "constant":
            return True
        if k == "prefixes":
            return True
        if k == "shrink_tail":
            return (self.data[1] & self.universe_complement(self.data[0])).is_empty()
        if k == "interval_shrink":
            return self.data[0].is_empty() or self.data[0].is_whole()
        if k == "list_then_constant":
            items, tail = self.data
            chain = list(items) + [tail]
            return all(a.issubset(b) for a, b in zip(chain, chain[1:]))
        return self.data[0].is_nonincreasing()

    def render(self) -> str:
        k, d = self.kind, self.data
        if k == "constant":
            return f"constant({d[0].render()})"
        if k == "list_then_constant":
            items, tail = d
            inner = "; ".join(x.render() for x in items)
            return f"list_then_constant([{inner}], {tail.render()})"
        if k == "prefixes":
            return f"prefixes({d[0].render()})"
        if k == "shrink_tail":
            return f"shrink_tail(core={d[0].render()}, tail={d[1].render()})"
        if k == "interval_shrink":
            return f"interval_shrink({d[0].render()})"
        return f"complements({d[0].render()})"


@dataclass(frozen=True)
class FunctionSequence:
    kind: str
    data: tuple

    @staticmethod
    def constant(f: FunctionSpec) -> "FunctionSequence":
        return FunctionSequence("constant", (f,))

    @staticmethod
    def eventually_constant(terms, limit: FunctionSpec) -> "FunctionSequence":
        terms = tuple(terms)
        if any(t.domain != limit.domain or t.codomain != limit.codomain for t in terms):
            raise UniverseMismatch("sequence terms must share domain and codomain")
        return FunctionSequence("eventually_constant", (terms, limit))

    @staticmethod
    def powers(f: FunctionSpec) -> "FunctionSequence":
        """Terms are pointwise powers of f; f must land in the unit interval."""
        if f.codomain.kind is not UniverseKind.UNIT_INTERVAL:
            raise WrongUniverseKind("powers need unit-interval values")
        return FunctionSequence("powers", (f,))

    @property
    def domain(self) -> Universe:
        f = self.data[0] if self.kind != "eventually_constant" else self.data[1]
        return f.domain

    @property
    def codomain(self) -> Universe:
        f = self.data[0] if self.kind != "eventually_constant" else self.data[1]
        return f.codomain

    def term(self, n: int) -> FunctionSpec:
        if self.kind == "constant":
            return self.data[0]
        if self.kind == "eventually_constant":
            terms, limit = self.data
            return terms[n] if n < len(terms) else limit
        return _power(self.data[0], n + 1)

    def pointwise_limit(self) -> FunctionSpec:
        """The exact pointwise limit; powers converge to the fiber over one."""
        if self.kind == "constant":
            return self.data[0]
        if self.kind == "eventually_constant":
            return self.data[1]
        f = self.data[0]
        return FunctionSpec.characteristic(f.domain, f.codomain, _fiber_over_one(f))

    def term_pool(self, count: int = 3):
        """Enough terms to witness the sequence: every listed term for the
        eventually constant kind, the first few powers otherwise."""
        if self.kind == "eventually_constant":
            terms, limit = self.data
            return list(terms) + [limit]
        return [self.term(n) for n in range(count)]

    def render(self) -> str:
        if self.kind == "constant":
            return f"constant({self.data[0].render()})"
        if self.kind == "eventually_constant":
            terms, limit = self.data
            inner = "; ".join(t.render() for t in terms)
            return f"eventually_constant([{inner}], {limit.render()})"
        return f"powers({self.data[0].render()})"


def _power(f: FunctionSpec, n: int) -> FunctionSpec:
    if f.pieces is not None:
        return FunctionSpec.step(f.domain, f.codomain,
                                 [(region, Fraction(v) ** n) for region, v in f.pieces])
    if f.special is not None and f.special[0] == "decay":
        _, target, power = f.special
        return FunctionSpec.decay(f.domain, f.codomain, target, power=power * n)
    raise LimitNotComputable("no closed form for powers of this map kind")


def _fiber_over_one(f: FunctionSpec) -> SymSet:
    if f.pieces is not None:
        out = SymSet.empty(f.domain)
        for region, v in f.pieces:
            if Fraction(v) == 1:
                out = out | region
        return out
    if f.special is not None and f.special[0] == "decay":
        return f.special[1]
    raise LimitNotComputable("no closed form for this limit")
