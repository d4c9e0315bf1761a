"""Exact h-fold sumsets, weak unions and order diagnostics.

A sumset A+B is the union, over elements a of the cheaper side, of the other
side's mask translated by a.  Fold powers hA are computed by binary splitting
with a small LRU memo keyed by (group, mask, h); a survey run recomputes
powers of thousands of sets and the memo collapses the shared work.

Order search never times out: over a finite group the sequence A, 2A, 3A,...
is eventually periodic, so iterating until the first repeated mask yields a
proven verdict.  ``nice_order is None`` means "provably never covers", not
"gave up".
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from dataclasses import dataclass

from .bits import iter_bits
from .errors import BadParameters, BadWindow, EmptySet, QuotientMismatch
from .groups import GroupSubset, QuotientGroup, Subgroup, subgroup_closure


@dataclass(frozen=True)
class OrderProfile:
    """Basis diagnostics of one subset.

    nice_order: least h with hA = G (None if unreachable).
    weak_nice_order: least h with A u 2A u ... u hA = G (None if unreachable).
    stabilization: least h at which the fold sequence enters its eventual cycle.
    """

    generates_by_differences: bool
    nice_order: int | None
    weak_nice_order: int | None
    stabilization: int

    def to_json(self) -> dict:
        return {
            "generatesByDifferences": self.generates_by_differences,
            "niceOrder": self.nice_order,
            "weakNiceOrder": self.weak_nice_order,
            "stabilization": self.stabilization,
        }


@dataclass(frozen=True)
class TruncationWindow:
    """Inclusive index range [lo, hi] in which coverage assertions are evaluated."""

    lo_index: int
    hi_index: int


class _FoldCache:
    """LRU memo for intermediate fold powers; lookups/inserts behave atomically."""

    def __init__(self, budget: int = 1 << 16):
        self.budget = budget
        self._data: OrderedDict[tuple, int] = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            val = self._data.get(key)
            if val is not None:
                self._data.move_to_end(key)
            return val

    def put(self, key, value):
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.budget:
                self._data.popitem(last=False)

    def clear(self):
        with self._lock:
            self._data.clear()


_fold_cache = _FoldCache()


def set_fold_cache_budget(entries: int) -> None:
    """Resize the memo; the new budget applies from the next insert."""
    _fold_cache.budget = max(1, entries)


def clear_fold_cache() -> None:
    _fold_cache.clear()


def sumset_masks(group, a_mask: int, b_mask: int) -> int:
    """Mask of {a+b}; iterates the smaller set, translating the larger mask."""
    if a_mask == 0 or b_mask == 0:
        return 0
    if a_mask.bit_count() > b_mask.bit_count():
        a_mask, b_mask = b_mask, a_mask
    out = 0
    for a in iter_bits(a_mask):
        out |= group.translate_mask(b_mask, a)
        if out == group.full_mask:
            break
    return out


def sumset(a: GroupSubset, b: GroupSubset) -> GroupSubset:
    a._check(b)
    return GroupSubset(a.group, sumset_masks(a.group, a.mask, b.mask))


def _fold_mask(group, mask: int, h: int) -> int:
    if h == 1:
        return mask
    key = (group, mask, h)
    hit = _fold_cache.get(key)
    if hit is not None:
        return hit
    half = h // 2
    left = _fold_mask(group, mask, half)
    right = _fold_mask(group, mask, h - half)
    result = sumset_masks(group, left, right)
    _fold_cache.put(key, result)
    return result


def fold_sumset(a: GroupSubset, h: int) -> GroupSubset:
    """The h-fold sumset hA (sums of exactly h elements, repetition allowed)."""
    if h < 1:
        raise BadParameters(f"fold count must be >= 1, got {h}")
    return GroupSubset(a.group, _fold_mask(a.group, a.mask, h))


def weak_union(a: GroupSubset, h: int) -> GroupSubset:
    """Union of iA for 1 <= i <= h: everything writable as a sum of at most h."""
    if h < 1:
        raise BadParameters(f"fold count must be >= 1, got {h}")
    group = a.group
    power = a.mask
    union = a.mask
    for _ in range(h - 1):
        if union == group.full_mask:
            break
        power = sumset_masks(group, power, a.mask)
        union |= power
    return GroupSubset(group, union)


def order_profile(a: GroupSubset) -> OrderProfile:
    """Nice and weak-nice orders of a set, with cycle-detection stopping.

    Walks hA for h = 1, 2, ... keeping the running union.  Stops when hA
    covers the group (nice) or when a mask repeats (the sequence entered its
    cycle; further folds add nothing new, so both verdicts are final).
    """
    if a.mask == 0:
        raise EmptySet("order profile of the empty set")
    group = a.group
    diff = sumset_masks(group, a.mask, group.negate_mask(a.mask))
    generates = subgroup_closure(GroupSubset(group, diff)).carrier.is_full()

    seen: dict[int, int] = {}
    power = a.mask
    union = 0
    h = 1
    nice = weak = None
    while True:
        union |= power
        if weak is None and union == group.full_mask:
            weak = h
        if power == group.full_mask:
            nice = h
            stabilization = h
            break
        if power in seen:
            stabilization = seen[power]
            break
        seen[power] = h
        power = sumset_masks(group, power, a.mask)
        h += 1
    return OrderProfile(generates, nice, weak, stabilization)


def difference_set(a: GroupSubset) -> GroupSubset:
    """A - A as a set."""
    return GroupSubset(a.group, sumset_masks(a.group, a.mask, a.group.negate_mask(a.mask)))


def generated_subgroup(a: GroupSubset) -> Subgroup:
    """Subgroup generated by A - A (the basis criterion object)."""
    return subgroup_closure(difference_set(a))


def lift_set(a_quot: GroupSubset, group, subgroup: Subgroup) -> GroupSubset:
    """Full preimage in G of a subset of the quotient G/H."""
    q = a_quot.group
    if not isinstance(q, QuotientGroup) or q.parent != group or q.subgroup is not subgroup:
        raise QuotientMismatch("set does not live over the quotient of (G, H)")
    hmask = subgroup.carrier.mask
    out = 0
    for cid in iter_bits(a_quot.mask):
        out |= group.translate_mask(hmask, subgroup.coset_reps[cid])
    return GroupSubset(group, out)


def intersection_chain_check(
    a: GroupSubset, n: int, m: int, k: int
) -> tuple[bool, int | None]:
    """Find c in nA and (n+m)A, then confirm kc lies in (kn+im)A for 0 <= i <= k.

    Returns (verdict, witness).  When the intersection is empty the verdict is
    False with no witness; when a witness exists the chain membership always
    holds, so False-with-witness would indicate a kernel bug.
    """
    if min(n, m, k) < 1:
        raise BadParameters("n, m, k must all be >= 1")
    group = a.group
    inter = _fold_mask(group, a.mask, n) & _fold_mask(group, a.mask, n + m)
    if inter == 0:
        return False, None
    c = next(iter_bits(inter))
    kc = group.scale(k, c)
    for i in range(k + 1):
        if kc not in fold_sumset(a, k * n + i * m):
            return False, c
    return True, c


def windowed_covers(a: GroupSubset, h: int, window: TruncationWindow) -> bool:
    """True iff every element with index in [lo, hi] lies in hA."""
    group = a.group
    if not 0 <= window.lo_index <= window.hi_index < group.order:
        raise BadWindow(
            f"window [{window.lo_index},{window.hi_index}] invalid for order {group.order}"
        )
    span = window.hi_index - window.lo_index + 1
    wanted = ((1 << span) - 1) << window.lo_index
    return (_fold_mask(group, a.mask, h) & wanted) == wanted


def full_window(group) -> TruncationWindow:
    return TruncationWindow(0, group.order - 1)
