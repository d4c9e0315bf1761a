"""Basis tests, classification, extremal functional and bound calculators."""

import pytest

from addbase import oracle
from addbase.analysis import (
    bad_element_report,
    bound_report,
    bound_x_general,
    bound_x_torsion,
    classify,
    is_basis,
    max_exceptional_count,
    quotient_size_profile,
    removal_witness,
    torsion_cover_check,
    z_profile,
)
from addbase.errors import (
    BadParameters,
    BudgetExceeded,
    EmptySet,
    NotABasis,
    NotOrderTwo,
    PreconditionViolated,
    TooSmall,
)
from addbase.groups import GroupSubset, make_group, prime_factor_count
from addbase.sumsets import fold_sumset, order_profile


def subset(group, members):
    return GroupSubset.from_indices(group, members)


def test_is_basis_examples():
    z5 = make_group([5])
    assert is_basis(subset(z5, [2, 3]))
    z4 = make_group([4])
    assert not is_basis(subset(z4, [0, 2]))
    assert not is_basis(subset(z4, [3]))
    with pytest.raises(EmptySet):
        is_basis(GroupSubset.empty(z4))


def test_criterion_equivalence_small():
    # generation by differences is exactly "some fold covers"
    for n in range(2, 11):
        g = make_group([n])
        for mask in range(1, 1 << n):
            a = GroupSubset(g, mask)
            fast = is_basis(a)
            slow = oracle.naive_covers_by(g, frozenset(a.members()), 2 * n)
            assert fast == slow


def test_classify_examples():
    z4 = make_group([4])
    report = classify(subset(z4, [0, 1, 2]))
    assert report.exceptional_elements() == [1]
    assert report.exceptional_count == 1
    assert report.profile.nice_order == 2

    report = classify(subset(z4, [0, 1]))
    assert report.profile.nice_order == 3
    assert report.exceptional_count == 2  # both removals leave singletons

    with pytest.raises(NotABasis):
        classify(subset(z4, [0, 2]))
    with pytest.raises(TooSmall):
        classify(subset(z4, [1]))


def test_classify_minimality_flags():
    z4 = make_group([4])
    report = classify(subset(z4, [0, 1, 2]))
    # removing any element strictly shrinks 2A here
    assert all(report.minimal_at_order.values())
    g = make_group([5])
    report = classify(GroupSubset.full(g))
    assert report.profile.nice_order == 1
    # at h = 1 every removal shrinks 1A = A
    assert all(report.minimal_at_order.values())
    assert report.exceptional_count == 0


def test_classify_matches_oracle_exceptional():
    for moduli in [(6,), (2, 4), (3, 3)]:
        g = make_group(moduli)
        for mask in range(1, 1 << g.order):
            a = GroupSubset(g, mask)
            if a.size < 2 or not is_basis(a):
                continue
            report = classify(a)
            expected = {
                e: oracle.naive_is_exceptional(g, frozenset(a.members()), e)
                for e in a
            }
            assert report.is_exceptional == expected


def test_classification_translation_compatible():
    g = make_group([8])
    a = subset(g, [0, 1, 4])
    base = classify(a)
    for b in range(8):
        shifted = a.translated(g.neg(b))
        moved = classify(shifted)
        for e in a:
            assert moved.is_exceptional[g.add(e, g.neg(b))] == base.is_exceptional[e]


def test_max_exceptional_count_frozen_values():
    z5 = make_group([5])
    value, witness = max_exceptional_count(z5, 2)
    assert value == 0 and witness.members() == [0, 1, 2]
    assert value <= 1

    z8 = make_group([8])
    value, witness = max_exceptional_count(z8, 3)
    assert value == 1 and witness.members() == [0, 1, 3]
    assert value <= 2

    assert max_exceptional_count(z8, 1) == (0, None)


def test_max_exceptional_count_budget_and_family():
    big = make_group([16])
    with pytest.raises(BudgetExceeded):
        max_exceptional_count(big, 2)
    z5 = make_group([5])
    family = [subset(z5, [0, 1, 2]), subset(z5, [1, 2])]
    value, witness = max_exceptional_count(z5, 2, family=family)
    assert value == 0 and witness.members() == [0, 1, 2]
    with pytest.raises(BadParameters):
        max_exceptional_count(z5, 2, family="everything")


def test_torsion_cover_examples():
    v = make_group([2, 2])
    a = GroupSubset.from_coords(v, [(1, 0), (0, 1), (1, 1)])
    assert torsion_cover_check(a, 2, 2)

    w = make_group([3, 3])
    b = GroupSubset.from_coords(w, [(1, 0), (0, 1), (1, 1)])
    assert torsion_cover_check(b, 3, 2)

    with pytest.raises(PreconditionViolated):
        torsion_cover_check(a, 2, 1)  # s below the prime-factor count
    with pytest.raises(PreconditionViolated):
        torsion_cover_check(b, 2, 4)  # group is not 2-torsion
    with pytest.raises(PreconditionViolated):
        torsion_cover_check(GroupSubset.from_coords(v, [(1, 0)]), 2, 2)


def test_torsion_cover_exhaustive():
    for moduli, p in [([2], 2), ([2, 2], 2), ([2, 2, 2], 2), ([3, 3], 3)]:
        g = make_group(moduli)
        s = prime_factor_count(g.order)
        for mask in range(1, 1 << g.order):
            a = GroupSubset(g, mask)
            if not is_basis(a):
                continue
            assert torsion_cover_check(a, p, s)


def test_bound_x_general():
    assert bound_x_general(2, {1: 1, 2: 2}) == 7
    assert bound_x_general(1, {1: 1}) == 1
    assert bound_x_general(3, {1: 1, 2: 2, 3: 3}) == 14
    with pytest.raises(BadParameters):
        bound_x_general(2, {1: 1})  # missing m=2


def test_bound_x_general_monotone():
    base = bound_x_general(3, {1: 1, 2: 2, 3: 3})
    assert bound_x_general(3, {1: 1, 2: 4, 3: 3}) >= base
    assert bound_x_general(3, {1: 1, 2: 2, 3: 27}) >= base
    assert bound_x_general(4, {1: 1, 2: 2, 3: 3, 4: 4}) >= base


def test_bound_x_torsion():
    assert bound_x_torsion(2, 5) == (11, 7)
    assert bound_x_torsion(3, 3) == (11, 0)
    assert bound_x_torsion(2, 2) == (5, 1)
    assert bound_x_torsion(5, 3) == (None, None)
    assert bound_x_torsion(3, 2) == (None, None)  # h < p and 2h < 3(p-1)
    for h in range(2, 21):
        upper, lower = bound_x_torsion(2, h)
        assert 2 * h - 2 <= upper and lower <= upper


def test_quotient_profiles_and_report():
    g = make_group([12])
    sizes = quotient_size_profile(g, 4)
    assert sizes == {1: 1, 2: 2, 3: 3, 4: 4}
    assert z_profile(3) == {1: 1, 2: 2, 3: 3}

    rep = bound_report(g, 2)
    assert rep.general_upper == 7  # matches the integer-lattice profile at h=2
    assert rep.torsion_upper is None
    assert rep.x_lower == 4

    v = make_group([3, 3])
    rep = bound_report(v, 3)
    assert rep.torsion_upper == 11
    assert rep.x_lower == 7


def test_bad_element_report():
    z5 = make_group([5])
    rep = bad_element_report(GroupSubset.full(z5))
    assert rep.bad_count == 0
    assert all(v == 2 for v in rep.removal_orders.values())

    rep = bad_element_report(subset(z5, [0, 1, 2, 3]))
    assert rep.bad_count == 0

    z3 = make_group([3])
    rep = bad_element_report(subset(z3, [0, 1]))  # 2A = Z/3, removals -> singletons
    assert rep.removal_orders == {0: None, 1: None}
    assert rep.bad_count == 2

    with pytest.raises(NotOrderTwo):
        bad_element_report(subset(z5, [2, 3]))  # nice order 4


def test_removal_witness():
    z4 = make_group([4])
    a = subset(z4, [0, 1, 2])
    w = removal_witness(a, 1, 2)
    assert w is not None
    assert w in fold_sumset(a, 2)
    assert w not in fold_sumset(a.without(1), 2)
    g = make_group([5])
    assert removal_witness(GroupSubset.full(g), 0, 2) is None
    with pytest.raises(BadParameters):
        removal_witness(a, 3, 2)
