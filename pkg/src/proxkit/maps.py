"""Total functions between universes with computable images and preimages.

Most maps are kept in a piecewise-constant normal form: a finite partition
of the domain into symbolic regions, each carrying one codomain value.
Tables, residue-class maps, characteristic functions and step maps all
normalise to that form, so equality is extensional.

Two kinds escape the finite-image normal form and are handled by rule:

* ``identity`` on a universe;
* ``affine_residue``: n maps to n plus a per-residue-class offset, with
  finitely many explicit exceptions (this includes plain shifts);
* ``decay``: value 1 on a target set, value (k+1)/(k+2) raised to a fixed
  power on the k-th non-target element in enumeration order, so the values
  climb toward 1 along any infinite set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import UniverseMismatch, UnsupportedKind, WrongUniverseKind
from .universe import INFINITY, SymSet, Universe, UniverseKind


def _value_key(v):
    if v is INFINITY:
        return (1, Fraction(0))
    return (0, Fraction(v))


def _check_value(codomain: Universe, v):
    if codomain.kind is UniverseKind.FINITE:
        if not (isinstance(v, int) and 0 <= v < codomain.size):
            raise UniverseMismatch(f"value {v!r} outside {codomain!r}")
        return v
    if codomain.kind is UniverseKind.INTEGERS:
        if v is INFINITY:
            if not codomain.with_infinity:
                raise UniverseMismatch("codomain has no infinity point")
            return v
        if not isinstance(v, int):
            raise UniverseMismatch(f"value {v!r} outside {codomain!r}")
        return v
    q = Fraction(v)
    if not 0 <= q <= 1:
        raise UniverseMismatch(f"value {v!r} outside the unit interval")
    return q


def _render_value(v) -> str:
    return "inf" if v is INFINITY else str(v)


@dataclass(frozen=True)
class FunctionSpec:
    domain: Universe
    codomain: Universe
    pieces: tuple | None = None           # ((region, value), ...) partitioning the domain
    special: tuple | None = None          # ("identity",) | ("affine", p, offsets, exc) | ("decay", target, power)

    # -- constructors --------------------------------------------------------

    @staticmethod
    def step(domain: Universe, codomain: Universe, parts) -> "FunctionSpec":
        """Build from (region, value) pairs; the regions must partition the domain."""
        merged: dict = {}
        seen = SymSet.empty(domain)
        for region, value in parts:
            if region.universe != domain:
                raise UniverseMismatch("step region outside the domain universe")
            if region.is_empty():
                continue
            if seen.intersects(region):
                raise UniverseMismatch("step regions overlap")
            seen = seen | region
            value = _check_value(codomain, value)
            key = _value_key(value)
            if key in merged:
                merged[key] = (merged[key][0] | region, value)
            else:
                merged[key] = (region, value)
        if not seen.is_whole():
            raise UniverseMismatch("step regions do not cover the domain")
        pieces = tuple(sorted(merged.values(), key=lambda rv: rv[0].sort_key()))
        return FunctionSpec(domain, codomain, pieces=pieces)

    @staticmethod
    def table(domain: Universe, codomain: Universe, values) -> "FunctionSpec":
        if domain.kind is not UniverseKind.FINITE:
            raise WrongUniverseKind("tables need a finite domain")
        values = list(values)
        if len(values) != domain.size:
            raise UniverseMismatch("table length must equal the universe size")
        parts = [(SymSet.point(domain, i), v) for i, v in enumerate(values)]
        return FunctionSpec.step(domain, codomain, parts)

    @staticmethod
    def residue_map(domain: Universe, codomain: Universe, period: int,
                    values: dict, exceptions: dict | None = None) -> "FunctionSpec":
        """Constant on each residue class mod period, with finite exceptions."""
        if domain.kind is not UniverseKind.INTEGERS or domain.with_infinity:
            raise WrongUniverseKind("residue maps live on the plain integers")
        exceptions = dict(exceptions or {})
        if set(values) != set(range(period)):
            raise UniverseMismatch("residue map needs a value for every class")
        parts = []
        exc_positions = sorted(exceptions)
        for r in range(period):
            region = SymSet.periodic(domain, period, [r],
                                     minus=[n for n in exc_positions if n % period == r])
            parts.append((region, values[r]))
        for n in exc_positions:
            parts.append((SymSet.point(domain, n), exceptions[n]))
        return FunctionSpec.step(domain, codomain, parts)

    @staticmethod
    def characteristic(domain: Universe, codomain: Universe, a: SymSet) -> "FunctionSpec":
        """1 on the set, 0 off it; codomain is finite(2) or the unit interval."""
        if a.universe != domain:
            raise UniverseMismatch("characteristic set outside the domain universe")
        one: object = 1
        zero: object = 0
        if codomain.kind is UniverseKind.UNIT_INTERVAL:
            one, zero = Fraction(1), Fraction(0)
        elif not (codomain.kind is UniverseKind.FINITE and codomain.size >= 2):
            raise WrongUniverseKind("characteristic maps land in finite(2+) or the unit interval")
        return FunctionSpec.step(domain, codomain, [(a, one), (a.complement(), zero)])

    @staticmethod
    def constant(domain: Universe, codomain: Universe, value) -> "FunctionSpec":
        return FunctionSpec.step(domain, codomain, [(SymSet.whole(domain), value)])

    @staticmethod
    def identity(universe: Universe) -> "FunctionSpec":
        return FunctionSpec(universe, universe, special=("identity",))

    @staticmethod
    def affine_residue(domain: Universe, period: int, offsets: dict,
                       exceptions: dict | None = None) -> "FunctionSpec":
        """n maps to n + offsets[n mod period], with explicit exceptions."""
        if domain.kind is not UniverseKind.INTEGERS or domain.with_infinity:
            raise WrongUniverseKind("affine residue maps live on the plain integers")
        if set(offsets) != set(range(period)):
            raise UniverseMismatch("affine map needs an offset for every class")
        offs = tuple(int(offsets[r]) for r in range(period))
        exc = tuple(sorted((int(n), int(v)) for n, v in (exceptions or {}).items()))
        return FunctionSpec(domain, domain, special=("affine", period, offs, exc))

    @staticmethod
    def shift_map(domain: Universe, k: int) -> "FunctionSpec":
        return FunctionSpec.affine_residue(domain, 1, {0: k})

    @staticmethod
    def decay(domain: Universe, codomain: Universe, target: SymSet,
              power: int = 1) -> "FunctionSpec":
        if target.universe != domain:
            raise UniverseMismatch("decay target outside the domain universe")
        if codomain.kind is not UniverseKind.UNIT_INTERVAL:
            raise WrongUniverseKind("decay maps land in the unit interval")
        if power < 1:
            raise UniverseMismatch("decay power must be positive")
        return FunctionSpec(domain, codomain, special=("decay", target, power))

    # -- evaluation ---------------------------------------------------------

    def apply(self, x):
        if self.pieces is not None:
            for region, value in self.pieces:
                if region.contains(x):
                    return value
            raise UniverseMismatch(f"{x!r} is outside the domain")
        tag = self.special[0]
        if tag == "identity":
            return x
        if tag == "affine":
            _, period, offs, exc = self.special
            for n, v in exc:
                if n == x:
                    return v
            return x + offs[x % period]
        _, target, power = self.special
        if target.contains(x):
            return Fraction(1)
        k = self._decay_rank(x)
        return self._decay_value(k)

    def _decay_rank(self, x) -> int:
        _, target, _ = self.special
        for k, y in enumerate(target.complement().elements()):
            if y == x:
                return k
        raise UniverseMismatch(f"{x!r} is outside the domain")

    def _decay_value(self, k: int) -> Fraction:
        power = self.special[2]
        return Fraction(k + 1, k + 2) ** power

    def is_finite_image(self) -> bool:
        return self.pieces is not None

    def image_values(self) -> tuple:
        """The (finite) list of values taken, for piecewise maps."""
        if self.pieces is None:
            raise UnsupportedKind("this map does not have a finite image")
        return tuple(v for _, v in self.pieces)

    def image_of(self, a: SymSet) -> SymSet:
        """Exact forward image of a set, when representable in the codomain."""
        if a.universe != self.domain:
            raise UniverseMismatch("image argument outside the domain universe")
        if self.pieces is not None:
            vals = [v for region, v in self.pieces if region.intersects(a)]
            return SymSet.of(self.codomain, vals)
        tag = self.special[0]
        if tag == "identity":
            return a
        if tag == "affine":
            _, period, offs, exc = self.special
            exc_pos = SymSet.of(self.domain, [n for n, _ in exc])
            body = a - exc_pos
            out = SymSet.empty(self.codomain)
            for r in range(period):
                cls = SymSet.periodic(self.domain, period, [r])
                out = out | (body & cls).shift(offs[r])
            hits = [v for n, v in exc if a.contains(n)]
            return out | SymSet.of(self.codomain, hits)
        raise UnsupportedKind("no closed form for the forward image of a decay map")

    def preimage(self, s: SymSet) -> SymSet:
        if s.universe != self.codomain:
            raise UniverseMismatch("preimage argument outside the codomain universe")
        if self.pieces is not None:
            out = SymSet.empty(self.domain)
            for region, value in self.pieces:
                if s.contains(value):
                    out = out | region
            return out
        tag = self.special[0]
        if tag == "identity":
            return s
        if tag == "affine":
            _, period, offs, exc = self.special
            exc_pos = SymSet.of(self.domain, [n for n, _ in exc])
            out = SymSet.empty(self.domain)
            for r in range(period):
                cls = SymSet.periodic(self.domain, period, [r])
                out = out | ((s.shift(-offs[r]) & cls) - exc_pos)
            out = out | SymSet.of(self.domain, [n for n, v in exc if s.contains(v)])
            return out
        return self._decay_preimage(s)

    def _decay_preimage(self, s: SymSet) -> SymSet:
        _, target, _ = self.special
        out = target if s.contains(Fraction(1)) else SymSet.empty(self.domain)
        if s.is_empty():
            return out
        rest = list(target.complement().elements()) if target.complement().is_finite() else None
        ivs = s.payload.intervals
        tail = next((iv for iv in ivs if iv.hi == 1 and iv.lo < 1), None)
        if rest is not None:
            hits = [x for k, x in enumerate(rest) if s.contains(self._decay_value(k))]
            return out | SymSet.of(self.domain, hits)
        elements = target.complement().elements()
        if tail is None:
            # the decay values stay strictly below one, so the lone point 1
            # never matches and the relevant bound is the largest other end
            caps = [iv.hi for iv in ivs if iv.hi < 1]
            if not caps:
                return out
            beta = max(caps)
            k = 0
            hits = []
            for x in elements:
                v = self._decay_value(k)
                if v > beta:
                    break
                if s.contains(v):
                    hits.append(x)
                k += 1
            return out | SymSet.of(self.domain, hits)
        # values below the tail threshold are settled one by one, everything
        # farther out lands inside the tail interval
        head_misses = []
        k = 0
        for x in elements:
            v = self._decay_value(k)
            if v > tail.lo or (v == tail.lo and tail.lo_closed):
                break
            if not s.contains(v):
                head_misses.append(x)
            k += 1
        return out | (target.complement() - SymSet.of(self.domain, head_misses))

    # -- structure -----------------------------------------------------------

    def cells(self) -> tuple:
        """The level-set partition (region, value), for finite-image maps."""
        if self.pieces is None:
            raise UnsupportedKind("this map has no finite level-set partition")
        return self.pieces

    def render(self) -> str:
        if self.pieces is not None:
            inner = ", ".join(f"{region.render()}: {_render_value(v)}"
                              for region, v in self.pieces)
            return "step{" + inner + "}"
        tag = self.special[0]
        if tag == "identity":
            return "identity"
        if tag == "affine":
            _, period, offs, exc = self.special
            if period == 1 and not exc:
                return f"shift({offs[0]})"
            offsets = ", ".join(f"{r}: {offs[r]}" for r in range(period))
            body = f"affine_residue(p={period}, offsets={{{offsets}}}"
            if exc:
                body += ", exceptions={" + ", ".join(f"{n}: {v}" for n, v in exc) + "}"
            return body + ")"
        _, target, power = self.special
        if power == 1:
            return f"decay({target.render()})"
        return f"decay({target.render()}, power={power})"


def identity_map(universe: Universe) -> FunctionSpec:
    return FunctionSpec.identity(universe)


def compose(g: FunctionSpec, f: FunctionSpec) -> FunctionSpec:
    """The composite mapping x to g(f(x))."""
    if f.codomain != g.domain:
        raise UniverseMismatch("composition needs matching middle universes")
    if f.special == ("identity",):
        return g
    if g.special == ("identity",):
        return f
    if f.pieces is not None:
        return FunctionSpec.step(f.domain, g.codomain,
                                 [(region, g.apply(v)) for region, v in f.pieces])
    if g.pieces is not None:
        return FunctionSpec.step(f.domain, g.codomain,
                                 [(f.preimage(region), v) for region, v in g.pieces])
    if f.special[0] == "affine" and g.special[0] == "affine":
        _, pf, offs_f, exc_f = f.special
        _, pg, offs_g, exc_g = g.special
        p = lcm(pf, pg)
        offsets = {}
        for r in range(p):
            step = offs_f[r % pf]
            offsets[r] = step + offs_g[(r + step) % pg]
        exceptions = {n: g.apply(v) for n, v in exc_f}
        for n, _ in exc_g:
            pre = f.preimage(SymSet.point(f.domain, n))
            for x in pre.elements():
                exceptions.setdefault(x, g.apply(f.apply(x)))
        return FunctionSpec.affine_residue(f.domain, p, offsets, exceptions)
    raise UnsupportedKind("no closed form for this composition")


def all_functions(domain: Universe, codomain: Universe):
    """Every map between two finite universes, in a stable order."""
    if domain.kind is not UniverseKind.FINITE or codomain.kind is not UniverseKind.FINITE:
        raise WrongUniverseKind("exhaustive function enumeration needs finite universes")
    for values in itertools.product(range(codomain.size), repeat=domain.size):
        yield FunctionSpec.table(domain, codomain, values)
