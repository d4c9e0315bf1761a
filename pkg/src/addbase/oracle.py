"""Brute-force reference implementations.

These deliberately avoid the bitmask kernels: sets are plain frozensets of
element indices and sums go through ``group.add`` one pair at a time.  The
verify suites and the golden-file generator use these as the independent
side of every dual-route check, so nothing here may import from
:mod:`addbase.sumsets`.
"""

from __future__ import annotations

import itertools
from typing import FrozenSet


def naive_sumset(group, a: FrozenSet[int], b: FrozenSet[int]) -> frozenset:
    return frozenset(group.add(x, y) for x in a for y in b)


def naive_fold(group, a: FrozenSet[int], h: int) -> frozenset:
    out = frozenset(a)
    for _ in range(h - 1):
        out = naive_sumset(group, out, a)
    return out


def naive_fold_nested(group, a: FrozenSet[int], h: int) -> frozenset:
    """Literal h-nested-loop fold: sums over all h-tuples."""
    out = set()
    for combo in itertools.product(sorted(a), repeat=h):
        total = 0
        for x in combo:
            total = group.add(total, x)
        out.add(total)
    return frozenset(out)


def naive_weak_union(group, a: FrozenSet[int], h: int) -> frozenset:
    out: set[int] = set()
    power = frozenset(a)
    out |= power
    for _ in range(h - 1):
        power = naive_sumset(group, power, a)
        out |= power
    return frozenset(out)


def naive_covers_by(group, a: FrozenSet[int], h_max: int) -> bool:
    """True iff some fold count h <= h_max has hA = G (plain iteration)."""
    everything = frozenset(range(group.order))
    power = frozenset(a)
    for _ in range(h_max - 1):
        if power == everything:
            return True
        power = naive_sumset(group, power, a)
    return power == everything


def naive_nice_order(group, a: FrozenSet[int]) -> int | None:
    """Least h with hA = G, or None; stops at the first repeated fold."""
    everything = frozenset(range(group.order))
    seen = set()
    power = frozenset(a)
    h = 1
    while True:
        if power == everything:
            return h
        if power in seen:
            return None
        seen.add(power)
        power = naive_sumset(group, power, a)
        h += 1


def naive_weak_order(group, a: FrozenSet[int]) -> int | None:
    everything = frozenset(range(group.order))
    seen = set()
    union: set[int] = set()
    power = frozenset(a)
    h = 1
    while True:
        union |= power
        if union == everything:
            return h
        if power in seen:
            return None
        seen.add(power)
        power = naive_sumset(group, power, a)
        h += 1


def naive_generates(group, a: FrozenSet[int]) -> bool:
    """Closure of A - A under addition/negation, by plain breadth-first growth."""
    diffs = frozenset(group.add(x, group.neg(y)) for x in a for y in a)
    closed = set(diffs) | {0}
    frontier = set(closed)
    while frontier:
        fresh = set()
        for x in frontier:
            for d in diffs:
                s = group.add(x, d)
                if s not in closed:
                    fresh.add(s)
        closed |= fresh
        frontier = fresh
    return len(closed) == group.order


def naive_is_exceptional(group, a: FrozenSet[int], element: int) -> bool:
    rest = frozenset(a - {element})
    if not rest:
        return group.order > 1
    return naive_nice_order(group, rest) is None


def naive_exceptional_count(group, a: FrozenSet[int]) -> int:
    return sum(1 for e in a if naive_is_exceptional(group, a, e))
