"""Deterministic probe pools of canonical sets for family-based law checks.

The integer pool holds every periodic pattern of period at most four,
decorated with a fixed menu of flip sets drawn from the window -2..2, with
the empty set and the whole line among them. The unit-interval pool mixes
single intervals over a small endpoint grid with selected two-interval
unions. Both pools are sorted by canonical key, so every consumer sees the
same order.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import WrongUniverseKind
from .universe import INFINITY, SymSet, Universe, UniverseKind, all_subsets

_FLIP_MENU = (
    (),
    (-2,), (-1,), (0,), (1,), (2,),
    (-1, 0), (0, 1), (1, 2), (-2, 2),
)

_ENDPOINTS = tuple(Fraction(*t) for t in
                   ((0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1)))


def integer_pool(universe: Universe) -> tuple:
    """The canonical family of eventually periodic sets (at least 200 entries)."""
    if universe.kind is not UniverseKind.INTEGERS:
        raise WrongUniverseKind("the integer pool needs an integer universe")
    seen = {}
    for period in range(1, 5):
        for bits in range(2 ** period):
            residues = [r for r in range(period) if bits >> r & 1]
            for flips in _FLIP_MENU:
                plus = [n for n in flips if n % period not in residues]
                minus = [n for n in flips if n % period in residues]
                s = SymSet.periodic(universe, period, residues, plus=plus, minus=minus)
                seen[s.sort_key()] = s
    return tuple(seen[k] for k in sorted(seen))


def integer_pool_with_infinity(universe: Universe) -> tuple:
    """The integer pool on an infinity-extended universe, each set with and
    without the infinity point."""
    if not universe.with_infinity:
        raise WrongUniverseKind("this pool needs the infinity-extended universe")
    inf_point = SymSet.of(universe, (INFINITY,))
    out = {}
    for s in integer_pool(universe):
        out[s.sort_key()] = s
        t = s | inf_point
        out[t.sort_key()] = t
    return tuple(out[k] for k in sorted(out))


def interval_pool(universe: Universe) -> tuple:
    """The canonical family of rational interval unions (at least 200 entries)."""
    if universe.kind is not UniverseKind.UNIT_INTERVAL:
        raise WrongUniverseKind("the interval pool needs the unit interval universe")
    singles = []
    for lo, hi in itertools.combinations_with_replacement(_ENDPOINTS, 2):
        for lc, hc in itertools.product((True, False), repeat=2):
            s = SymSet.interval(universe, lo, hi, lc, hc)
            singles.append(s)
    seen = {s.sort_key(): s for s in singles}
    basics = sorted(seen.values(), key=lambda s: s.sort_key())
    for a, b in itertools.combinations(basics, 2):
        u = a | b
        if len(u.payload.intervals) == 2:
            seen.setdefault(u.sort_key(), u)
        if len(seen) >= 240:
            break
    seen.setdefault(SymSet.empty(universe).sort_key(), SymSet.empty(universe))
    return tuple(seen[k] for k in sorted(seen))


def closed_interval_pool(universe: Universe) -> tuple:
    """Closed interval unions only; the certified proximally-zero shapes."""
    out = {}
    for s in interval_pool(universe):
        if all(iv.lo_closed and iv.hi_closed for iv in s.payload.intervals):
            out[s.sort_key()] = s
    return tuple(out[k] for k in sorted(out))


def pool_for(universe: Universe) -> tuple:
    if universe.kind is UniverseKind.FINITE:
        return tuple(all_subsets(universe))
    if universe.kind is UniverseKind.INTEGERS:
        if universe.with_infinity:
            return integer_pool_with_infinity(universe)
        return integer_pool(universe)
    return interval_pool(universe)


def carrier_pool(universe: Universe, carrier: SymSet) -> tuple:
    """The canonical pool restricted into a carrier set."""
    out = {}
    for s in pool_for(universe):
        t = s & carrier
        out[t.sort_key()] = t
    return tuple(out[k] for k in sorted(out))
