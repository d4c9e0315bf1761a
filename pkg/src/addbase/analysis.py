"""Basis tests, regular/exceptional classification, and bound calculators.

A set is a basis of a finite group exactly when the subgroup generated by its
difference set A - A is the whole group; an element a is regular exactly when
A\\{a} still has that property.  Classification therefore costs one subgroup
closure per element instead of a fresh order search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    BadParameters,
    BudgetExceeded,
    EmptySet,
    NotABasis,
    NotOrderTwo,
    PreconditionViolated,
    TooSmall,
)
from .groups import (
    FiniteAbelianGroup,
    GroupSubset,
    multiples_subgroup,
    prime_factor_count,
)
from .sumsets import OrderProfile, fold_sumset, generated_subgroup, order_profile

DEFAULT_SUBSET_BUDGET = 1 << 12


def is_basis(a: GroupSubset) -> bool:
    """True iff <A - A> = G; on finite groups this is equivalent to
    the existence of h with hA = G."""
    if a.mask == 0:
        raise EmptySet("basis test on the empty set")
    return generated_subgroup(a).carrier.is_full()


@dataclass(frozen=True)
class ClassificationReport:
    """Per-element regular/exceptional verdicts for one basis."""

    subset: GroupSubset
    profile: OrderProfile
    is_exceptional: dict[int, bool]
    exceptional_count: int
    minimal_at_order: dict[int, bool]

    def exceptional_elements(self) -> list[int]:
        return [e for e, bad in sorted(self.is_exceptional.items()) if bad]

    def to_json(self) -> dict:
        group = self.subset.group
        elements = []
        for e in sorted(self.is_exceptional):
            elements.append(
                {
                    "element": list(group.decode(e)),
                    "label": group.element_label(e),
                    "verdict": "exceptional" if self.is_exceptional[e] else "regular",
                    "minimalAtOrder": self.minimal_at_order[e],
                }
            )
        return {
            "elements": elements,
            "exceptionalCount": self.exceptional_count,
            "profile": self.profile.to_json(),
        }


def classify(a: GroupSubset) -> ClassificationReport:
    """Regular/exceptional verdict per element, plus minimality at the nice order."""
    if a.mask == 0:
        raise EmptySet("classification of the empty set")
    if a.size < 2:
        raise TooSmall("classification needs at least two elements")
    if not is_basis(a):
        raise NotABasis("set does not generate the group by differences")
    profile = order_profile(a)
    h = profile.nice_order
    full = a.group.full_mask
    exceptional: dict[int, bool] = {}
    minimal: dict[int, bool] = {}
    count = 0
    for e in a:
        rest = a.without(e)
        regular = generated_subgroup(rest).carrier.is_full()
        exceptional[e] = not regular
        count += not regular
        minimal[e] = fold_sumset(rest, h).mask != full
    return ClassificationReport(a, profile, exceptional, count, minimal)


def max_exceptional_count(
    group,
    h: int,
    family: str | Iterable[GroupSubset] = "exhaustive",
    budget: int = DEFAULT_SUBSET_BUDGET,
) -> tuple[int, GroupSubset | None]:
    """Maximum exceptional count over sets of nice order exactly h.

    This is a finite-group stand-in for the extremal exceptional-element
    functional: the maximum runs over every subset with nice order exactly h,
    enumerated exhaustively in ascending mask order (or over an explicitly
    supplied family).  Returns the max and the first subset attaining it.
    The h = 1 case is an explicit guard: the only order-1 set is G itself and
    the functional is 0 by convention.
    """
    if h < 1:
        raise BadParameters("h must be >= 1")
    if h == 1:
        return 0, None
    if isinstance(family, str):
        if family != "exhaustive":
            raise BadParameters(f"unknown enumeration family {family!r}")
        total = (1 << group.order) - 1
        if total > budget:
            raise BudgetExceeded(
                f"{total} subsets exceeds enumeration budget {budget}"
            )
        candidates = (GroupSubset(group, m) for m in range(1, total + 1))
    else:
        candidates = iter(family)
    best = 0
    witness: GroupSubset | None = None
    for subset in candidates:
        if subset.size < 2:
            continue
        profile = order_profile(subset)
        if profile.nice_order != h:
            continue
        report = classify(subset)
        if report.exceptional_count > best or witness is None:
            best = report.exceptional_count
            witness = subset
    return best, witness


def _is_m_torsion(group, m: int) -> bool:
    if isinstance(group, FiniteAbelianGroup):
        return all(m % n == 0 for n in group.moduli)
    return all(group.scale(m, x) == 0 for x in group.elements())


def torsion_cover_check(a: GroupSubset, m: int, s: int) -> bool:
    """Check s*m-fold coverage for a generating set of an m-torsion group.

    Coverage smA = G is guaranteed whenever G is m-torsion, A - A generates,
    and s >= (number of prime factors of |G| with multiplicity); a False
    return therefore signals a kernel bug, not a legitimate outcome.
    """
    group = a.group
    if m < 1:
        raise BadParameters("m must be >= 1")
    if not _is_m_torsion(group, m):
        raise PreconditionViolated(f"group is not {m}-torsion")
    if a.mask == 0 or not generated_subgroup(a).carrier.is_full():
        raise PreconditionViolated("A - A does not generate the group")
    if s < prime_factor_count(group.order):
        raise PreconditionViolated(
            f"s={s} below prime-factor count of |G|={group.order}"
        )
    return fold_sumset(a, s * m).is_full()


@dataclass(frozen=True)
class BoundReport:
    """Right-hand sides of the order bounds for removing a regular element."""

    h: int
    general_upper: int
    torsion_upper: int | None
    x_lower: int

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "generalUpper": self.general_upper,
            "torsionUpper": self.torsion_upper,
            "xLower": self.x_lower,
        }


def bound_x_general(h: int, quotient_sizes: dict[int, int]) -> int:
    """h^2 + h * max_m Omega(|G/mG|) + h - 1 over 1 <= m <= h."""
    if h < 1:
        raise BadParameters("h must be >= 1")
    worst = 0
    for m in range(1, h + 1):
        size = quotient_sizes.get(m)
        if size is None or size < 1:
            raise BadParameters(f"missing or invalid quotient size for m={m}")
        worst = max(worst, prime_factor_count(size))
    return h * h + h * worst + h - 1


def bound_x_torsion(p: int, h: int) -> tuple[int | None, int | None]:
    """(p*h + p - 1, 2*h - 3*p + 3) for prime-exponent-p groups.

    The upper bound needs h >= p and the lower needs h >= 3(p-1)/2; outside
    those ranges the corresponding entry is None.
    """
    if h < 1 or p < 2:
        raise BadParameters("need h >= 1 and prime p >= 2")
    upper = p * h + p - 1 if h >= p else None
    lower = 2 * h - 3 * p + 3 if 2 * h >= 3 * (p - 1) else None
    return upper, lower


def z_profile(h: int) -> dict[int, int]:
    """Quotient sizes |Z/mZ| = m for 1 <= m <= h (the integer-lattice profile)."""
    return {m: m for m in range(1, h + 1)}


def quotient_size_profile(group: FiniteAbelianGroup, h: int) -> dict[int, int]:
    """|G/mG| for 1 <= m <= h, computed from the multiples subgroups."""
    return {
        m: group.order // multiples_subgroup(group, m).carrier.size
        for m in range(1, h + 1)
    }


def bound_report(group: FiniteAbelianGroup, h: int) -> BoundReport:
    general = bound_x_general(h, quotient_size_profile(group, h))
    exponent = math.lcm(*group.moduli)
    torsion = None
    if prime_factor_count(exponent) == 1 and all(n == exponent for n in group.moduli):
        torsion = bound_x_torsion(exponent, h)[0]
    return BoundReport(h, general, torsion, (h * (h + 4)) // 3)


def removal_witness(a: GroupSubset, element: int, h: int) -> int | None:
    """Least x in hA \\ h(A\\{element}): a sum of h elements forced to use
    `element`.  None means removing the element costs nothing at fold h."""
    if element not in a:
        raise BadParameters("element is not in the set")
    covered = fold_sumset(a, h).mask
    rest = a.without(element)
    remaining = fold_sumset(rest, h).mask if rest.mask else 0
    diff = covered & ~remaining
    if diff == 0:
        return None
    return (diff & -diff).bit_length() - 1


@dataclass(frozen=True)
class BadElementReport:
    """Removal orders for a set of nice order at most 2.

    An element is counted bad when removing it leaves a set of nice order
    >= 4 or no order at all.  The report is descriptive: nothing is asserted
    about how many bad elements can occur.
    """

    removal_orders: dict[int, int | None]
    bad_count: int


def bad_element_report(a: GroupSubset) -> BadElementReport:
    if a.mask == 0:
        raise EmptySet("report on the empty set")
    profile = order_profile(a)
    if profile.nice_order is None or profile.nice_order > 2:
        raise NotOrderTwo("set must have nice order at most 2")
    orders: dict[int, int | None] = {}
    bad = 0
    for e in a:
        rest = a.without(e)
        if rest.mask == 0:
            orders[e] = None
        else:
            orders[e] = order_profile(rest).nice_order
        if orders[e] is None or orders[e] >= 4:
            bad += 1
    return BadElementReport(orders, bad)
