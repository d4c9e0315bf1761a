"""Generators for the explicit extremal sets, each paired with its checks.

Every construction here is a finite, desk-scale model:

* ``minimal_basis_model`` builds a group as a "direct sum" of small symmetric
  digit sets (balanced-ternary digits in Z/3^K, or unit vectors in (Z/2)^K)
  and returns the punctured union-of-classes set B whose h-fold sums cover
  the interior while every element of B is essential.
* ``fpt_example`` builds the truncated polynomial-ring set (monomials, then
  full coefficient lines, then a full tail) that maximizes the number of
  exceptional elements for its nice order.
* ``vsd_basis`` / ``vs2_nice_check`` cover the unit-vector constructions in
  F(p,d) together with the sum-of-coefficients niceness criterion.
* ``search_x_lower_witness`` runs the exhaustive 2-element scan in Z/g that
  exhibits a weak basis of small weak order but maximal nice order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ._version import __version__
from .errors import (
    BadParameters,
    DegenerateD,
    NoWitnessFound,
    TruncationTooSmall,
)
from .groups import (
    FiniteAbelianGroup,
    GroupSubset,
    make_group,
    poly_group,
    vector_group,
)
from .sumsets import OrderProfile, fold_sumset, order_profile, weak_union


# -- balanced ternary ---------------------------------------------------------


def balanced_ternary(n: int) -> list[int]:
    """Digits of n in base 3 over {-1, 0, 1}, least significant first.

    The representation is unique and has no trailing zeros; 0 maps to [].
    """
    digits = []
    while n:
        d = ((n + 1) % 3) - 1
        digits.append(d)
        n = (n - d) // 3
    return digits


def ternary_value(digits: list[int]) -> int:
    value = 0
    for d in reversed(digits):
        value = 3 * value + d
    return value


# -- direct-sum digit models ----------------------------------------------------


@dataclass(frozen=True)
class DirectSumModel:
    """A group written as a direct sum of digit sets.

    Each element decomposes uniquely as a sum of one member per digit set;
    the decomposition table is built by enumerating the full product, which
    doubles as the injectivity check.  ``class_partition`` groups digit-set
    indices into the classes used by the minimal-basis construction.
    """

    group: FiniteAbelianGroup
    lambda_sets: tuple[GroupSubset, ...]
    class_partition: tuple[tuple[int, ...], ...]
    components: dict[int, tuple[int, ...]]

    def support(self, element: int) -> tuple[int, ...]:
        """Indices of digit sets with nonzero component in the decomposition."""
        return tuple(
            i for i, comp in enumerate(self.components[element]) if comp != 0
        )

    def class_of(self, element: int) -> int | None:
        """Index of the class containing the support, None if support straddles."""
        supp = self.support(element)
        if not supp:
            return None
        for j, cls in enumerate(self.class_partition):
            if all(i in cls for i in supp):
                return j
        return None

    def is_interior(self, element: int) -> bool:
        """Support omits at least one digit-set index inside every class."""
        supp = set(self.support(element))
        return all(any(i not in supp for i in cls) for cls in self.class_partition)


def _decompose_all(group, lambda_sets) -> dict[int, tuple[int, ...]]:
    size_product = 1
    for lam in lambda_sets:
        size_product *= lam.size
    if size_product != group.order:
        raise BadParameters(
            f"digit-set sizes multiply to {size_product}, group order is {group.order}"
        )
    table: dict[int, tuple[int, ...]] = {}
    for combo in itertools.product(*(lam.members() for lam in lambda_sets)):
        total = 0
        for part in combo:
            total = group.add(total, part)
        if total in table:
            raise BadParameters("digit decomposition is not injective")
        table[total] = combo
    return table


def minimal_basis_model(
    K: int, h: int, variant: str
) -> tuple[DirectSumModel, GroupSubset]:
    """Build the order-h minimal-basis model over K digit sets.

    variant "ternary": G = Z/3^K with digit sets {0, 3^i, -3^i}.
    variant "chain2":  G = (Z/2)^K with digit sets {0, e_i}.

    Digit-set indices are dealt round-robin into h classes; B is the union of
    all elements supported inside a single class, minus zero.
    """
    if not 2 <= h <= K:
        raise BadParameters(f"need 2 <= h <= K, got h={h}, K={K}")
    if variant == "ternary":
        group = make_group([3**K])
        lambda_sets = tuple(
            GroupSubset.from_indices(group, [0, 3**i, (3**K - 3**i) % 3**K])
            for i in range(K)
        )
    elif variant == "chain2":
        group = make_group([2] * K)
        lambda_sets = tuple(
            GroupSubset.from_indices(group, [0, group.strides[i]]) for i in range(K)
        )
    else:
        raise BadParameters(f"unknown variant {variant!r}")
    classes = tuple(
        tuple(i for i in range(K) if i % h == j) for j in range(h)
    )
    model = DirectSumModel(group, lambda_sets, classes, _decompose_all(group, lambda_sets))
    b_mask = 0
    for x in range(group.order):
        if x != 0 and model.class_of(x) is not None:
            b_mask |= 1 << x
    return model, GroupSubset(group, b_mask)


def minimality_witness_candidate(model: DirectSumModel, element: int) -> int:
    """Heuristic witness: the element plus one small digit from each other class.

    This is the natural first candidate for a sum that should force the
    element's participation, but digit carries can defeat it (two same-class
    digits can re-decompose across classes, e.g. 1 + 10 = 8 + 3 in balanced
    ternary), so callers must confirm against the actual fold difference.
    """
    own = model.class_of(element)
    if own is None:
        raise BadParameters("element is not supported inside a single class")
    group = model.group
    x = element
    for j, cls in enumerate(model.class_partition):
        if j == own:
            continue
        lam = model.lambda_sets[cls[0]]
        x = group.add(x, lam.members()[1])
    return x


# -- truncated polynomial-ring extremal set -----------------------------------


def fpt_params(p: int, h: int) -> tuple[int, int]:
    """Euclidean split h = k(p-1) + r + 1 with 0 <= r < p-1."""
    k = (h - 1) // (p - 1)
    r = (h - 1) - k * (p - 1)
    return k, r


def fpt_example(p: int, h: int, N: int) -> GroupSubset:
    """The extremal set over poly(p,N): low monomials, coefficient lines, full tail.

    Members: t^0 ... t^(k-1); the lines c*t^i for k <= i < k+r; and every
    polynomial supported on degrees >= k+r (in particular 0).  Requires
    N >= k+r+2 so the tail is nonzero inside the truncation and the
    h-summand extremal element exists.
    """
    if h < 2:
        raise BadParameters("h must be >= 2")
    if p < 2:
        raise BadParameters("p must be a prime >= 2")
    k, r = fpt_params(p, h)
    if N < k + r + 2:
        raise TruncationTooSmall(
            f"need N >= k+r+2 = {k + r + 2} for (p={p}, h={h}), got N={N}"
        )
    group = poly_group(p, N)
    mask = 0
    for i in range(k):
        coords = [0] * N
        coords[i] = 1
        mask |= 1 << group.encode(coords)
    for i in range(k, k + r):
        for c in range(p):
            coords = [0] * N
            coords[i] = c
            mask |= 1 << group.encode(coords)
    # full tail: everything supported on degrees >= k+r
    tail = 1
    for axis in range(N - 1, -1, -1):
        b = group.strides[axis]
        allowed = range(p) if axis >= k + r else (0,)
        acc = 0
        for v in allowed:
            acc |= tail << (v * b)
        tail = acc
    return GroupSubset(group, mask | tail)


def fpt_extremal_element(p: int, h: int, N: int) -> int:
    """The element needing a full h summands: sum of (p-1)t^i, then t^i, then t^(k+r)."""
    k, r = fpt_params(p, h)
    group = poly_group(p, N)
    coords = [0] * N
    for i in range(k):
        coords[i] = p - 1
    for i in range(k, k + r):
        coords[i] = 1
    coords[k + r] = 1
    return group.encode(coords)


# -- unit-vector constructions in F(p,d) ---------------------------------------


def vsd_basis(p: int, d: int) -> GroupSubset:
    """The set {e_1, ..., e_d, e_1 + ... + e_d} over F(p,d); needs d != 1 mod p."""
    if d < 1:
        raise BadParameters("d must be >= 1")
    if (d - 1) % p == 0:
        raise DegenerateD(f"d={d} is 1 mod p={p}; the sum vector breaks niceness")
    group = vector_group(p, d)
    members = [group.strides[i] for i in range(d)]
    members.append(group.encode([1] * d))
    return GroupSubset.from_indices(group, members)


@dataclass(frozen=True)
class Vs2Check:
    """Niceness criterion for {e_1,...,e_d, sum_i alpha_i e_i} vs brute force."""

    criterion: bool
    brute_force: bool
    nice_order: int | None

    @property
    def agrees(self) -> bool:
        return self.criterion == self.brute_force

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "bruteForce": self.brute_force,
            "agrees": self.agrees,
            "niceOrder": self.nice_order,
        }


def vs2_nice_check(p: int, d: int, alphas: list[int]) -> Vs2Check:
    """Criterion: nice basis iff sum(alphas) != 1 mod p; verified by iteration."""
    if d < 1 or len(alphas) != d:
        raise BadParameters(f"need exactly d={d} coefficients")
    criterion = sum(alphas) % p != 1 % p
    group = vector_group(p, d)
    members = [group.strides[i] for i in range(d)]
    members.append(group.encode([a % p for a in alphas]))
    subset = GroupSubset.from_indices(group, members)
    profile = order_profile(subset)
    return Vs2Check(criterion, profile.nice_order is not None, profile.nice_order)


# -- exhaustive 2-element witness scan ------------------------------------------


@dataclass(frozen=True)
class WitnessRecord:
    """Outcome of an extremal witness search, reverifiable from the raw set."""

    parameters: dict
    subset: GroupSubset
    verified_profile: OrderProfile
    extra_checks: dict[str, bool]
    all_witnesses: tuple[tuple[int, int], ...] | None = None

    def to_json(self) -> dict:
        group = self.subset.group
        payload = {
            "params": dict(sorted(self.parameters.items())),
            "groupSpec": group.spec_string(),
            "elements": [list(group.decode(i)) for i in self.subset],
            "profile": self.verified_profile.to_json(),
            "extraChecks": dict(sorted(self.extra_checks.items())),
            "toolVersion": __version__,
        }
        if self.all_witnesses is not None:
            payload["allWitnesses"] = [list(w) for w in self.all_witnesses]
        return payload


def x_lower_target(h: int) -> tuple[int, int]:
    """Modulus g and target order k = g-1 for the weak-order-h witness scan."""
    if h < 1:
        raise BadParameters("h must be >= 1")
    g = (h * (h + 4)) // 3 + 1
    return g, g - 1


def search_x_lower_witness(h: int, collect_all: bool = False) -> WitnessRecord:
    """Scan 2-element subsets of Z/g for weak order <= h and nice order g-1.

    Pairs are scanned in lexicographic (min, max) order and the first hit is
    returned for reproducibility; with collect_all every qualifying pair is
    recorded.  A witness is expected to exist for every h, so an empty scan
    is surfaced as a hard NoWitnessFound error rather than a quiet result.
    """
    g, k = x_lower_target(h)
    group = make_group([g])
    first: GroupSubset | None = None
    hits: list[tuple[int, int]] = []
    for a in range(g):
        for b in range(a + 1, g):
            subset = GroupSubset(group, (1 << a) | (1 << b))
            if not weak_union(subset, h).is_full():
                continue
            if k > 1 and fold_sumset(subset, k - 1).is_full():
                continue
            if not fold_sumset(subset, k).is_full():
                continue
            hits.append((a, b))
            if first is None:
                first = subset
                if not collect_all:
                    break
        if first is not None and not collect_all:
            break
    if first is None:
        raise NoWitnessFound(
            f"no 2-element subset of Z/{g} has weak order <= {h} and nice order {k}"
        )
    profile = order_profile(first)
    checks = {
        "weakCoversAtH": profile.weak_nice_order is not None
        and profile.weak_nice_order <= h,
        "kMinusOneFails": k == 1 or not fold_sumset(first, k - 1).is_full(),
        "kCovers": profile.nice_order == k,
    }
    return WitnessRecord(
        {"h": h, "g": g, "k": k},
        first,
        profile,
        checks,
        tuple(hits) if collect_all else None,
    )
