"""Group arithmetic, subgroup machinery and transversals."""

import random

import pytest

from addbase.errors import (
    BadParameters,
    EmptyModuli,
    EmptySet,
    NoSymmetricTransversal,
    NotASubgroup,
    OrderOverflow,
    ParseError,
)
from addbase.groups import (
    GroupSubset,
    make_group,
    multiples_subgroup,
    parse_group_spec,
    poly_group,
    prime_factor_count,
    quotient_view,
    subgroup_closure,
    subgroup_from_subset,
    symmetric_transversal,
    vector_group,
)


def test_make_group_basic():
    g = make_group([5])
    assert g.order == 5 and g.moduli == (5,)
    g = make_group([2, 2, 2])
    assert g.order == 8
    assert all(g.add(x, x) == 0 for x in range(8))  # exponent 2
    g = make_group([2, 4])
    x = g.encode([1, 3])
    assert g.decode(g.add(x, x)) == (0, 2)


def test_make_group_errors():
    with pytest.raises(EmptyModuli):
        make_group([])
    with pytest.raises(OrderOverflow):
        make_group([2] * 30)
    with pytest.raises(BadParameters):
        make_group([1, 5])


def test_encode_decode_bijection():
    for moduli in [(5,), (2, 4), (3, 3), (2, 3, 5)]:
        g = make_group(moduli)
        seen = set()
        for i in range(g.order):
            coords = g.decode(i)
            assert g.encode(coords) == i
            seen.add(coords)
        assert len(seen) == g.order


def test_last_coordinate_varies_fastest():
    g = make_group([3, 4])
    assert g.decode(0) == (0, 0)
    assert g.decode(1) == (0, 1)
    assert g.decode(4) == (1, 0)


def test_group_axioms_small():
    g = make_group([4, 3])
    for a in range(g.order):
        assert g.add(a, g.neg(a)) == 0
        for b in range(g.order):
            assert g.add(a, b) == g.add(b, a)


def test_translate_and_negate_masks_agree_with_elementwise():
    rng = random.Random(7)
    for moduli in [(7,), (2, 4), (3, 3, 2)]:
        g = make_group(moduli)
        for _ in range(20):
            members = rng.sample(range(g.order), rng.randint(1, g.order - 1))
            s = GroupSubset.from_indices(g, members)
            t = rng.randrange(g.order)
            expect = sorted(g.add(x, t) for x in members)
            assert s.translated(t).members() == expect
            assert s.negated().members() == sorted(g.neg(x) for x in members)


def test_subgroup_closure_examples():
    z8 = make_group([8])
    h = subgroup_closure(GroupSubset.from_indices(z8, [2]))
    assert h.carrier.members() == [0, 2, 4, 6]
    assert h.coset_count == 2

    g = make_group([5])
    assert subgroup_closure(GroupSubset.from_indices(g, [0])).carrier.members() == [0]

    v = make_group([2, 2])
    h = subgroup_closure(GroupSubset.from_coords(v, [(1, 0), (0, 1)]))
    assert h.carrier.is_full() and h.coset_count == 1

    with pytest.raises(EmptySet):
        subgroup_closure(GroupSubset.empty(z8))


def test_closure_idempotent_and_lagrange():
    for moduli in [(12,), (2, 4), (3, 3), (2, 2, 2), (6, 2)]:
        g = make_group(moduli)
        for mask in range(1, 1 << min(g.order, 10)):
            s = GroupSubset(g, mask)
            h = subgroup_closure(s)
            again = subgroup_closure(h.carrier)
            assert again.carrier.mask == h.carrier.mask
            assert g.order % h.carrier.size == 0
            assert h.coset_count * h.carrier.size == g.order


def test_multiples_subgroup_examples():
    z6 = make_group([6])
    h = multiples_subgroup(z6, 2)
    assert h.carrier.members() == [0, 2, 4]
    assert z6.order // h.carrier.size == 2

    z5 = make_group([5])
    assert multiples_subgroup(z5, 3).carrier.is_full()

    e3 = make_group([2, 2, 2])
    h = multiples_subgroup(e3, 2)
    assert h.carrier.members() == [0]
    assert h.coset_count == 8


def test_multiples_subgroup_matches_direct_computation():
    for moduli in [(6,), (2, 4), (3, 3), (12,), (4, 6)]:
        g = make_group(moduli)
        for m in range(1, 9):
            expect = sorted({g.scale(m, x) for x in range(g.order)})
            assert multiples_subgroup(g, m).carrier.members() == expect


def test_quotient_view_examples():
    z6 = make_group([6])
    h = subgroup_closure(GroupSubset.from_indices(z6, [2]))
    q = quotient_view(z6, h)
    assert q.order == 2

    g = make_group([4, 2])
    h = subgroup_from_subset(GroupSubset.from_coords(g, [(0, 0), (0, 1)]))
    q = quotient_view(g, h)
    assert q.order == 4
    # projection forgets the second coordinate
    for a in range(4):
        assert q.project(g.encode([a, 0])) == q.project(g.encode([a, 1]))

    z5 = make_group([5])
    q = quotient_view(z5, subgroup_closure(GroupSubset.from_indices(z5, [1])))
    assert q.order == 1


def test_quotient_projection_is_homomorphism():
    for moduli, gens in [((6,), [2]), ((12,), [3]), ((2, 4), [(0, 2)]), ((3, 3), [(1, 2)])]:
        g = make_group(moduli)
        if isinstance(gens[0], tuple):
            s = GroupSubset.from_coords(g, gens)
        else:
            s = GroupSubset.from_indices(g, gens)
        h = subgroup_closure(s)
        q = quotient_view(g, h)
        for x in range(g.order):
            for y in range(g.order):
                assert q.project(g.add(x, y)) == q.add(q.project(x), q.project(y))


def test_quotient_rejects_unverified_subgroup():
    z6 = make_group([6])
    with pytest.raises(NotASubgroup):
        subgroup_from_subset(GroupSubset.from_indices(z6, [0, 2]))
    z8 = make_group([8])
    h = subgroup_closure(GroupSubset.from_indices(z8, [4]))
    with pytest.raises(NotASubgroup):
        quotient_view(z6, h)


def test_prime_factor_count():
    assert prime_factor_count(1) == 0
    assert prime_factor_count(12) == 3
    assert prime_factor_count(8) == 3
    assert prime_factor_count(97) == 1
    rng = random.Random(11)
    for _ in range(50):
        a = rng.randint(1, 10**6)
        b = rng.randint(1, 10**6)
        assert prime_factor_count(a * b) == prime_factor_count(a) + prime_factor_count(b)


def _all_transversals(group, subgroup):
    import itertools

    cosets = []
    for cid in range(subgroup.coset_count):
        rep = subgroup.coset_reps[cid]
        cosets.append(
            GroupSubset(group, group.translate_mask(subgroup.carrier.mask, rep)).members()
        )
    return itertools.product(*cosets)


def test_symmetric_transversal_z6():
    z6 = make_group([6])
    h = subgroup_closure(GroupSubset.from_indices(z6, [2]))
    lam = symmetric_transversal(z6, h)
    assert lam.members() == [0, 3]
    # exhaustive: {0,3} is the only symmetric transversal
    symmetric = [
        t
        for t in _all_transversals(z6, h)
        if 0 in t and sorted(z6.neg(x) for x in t) == sorted(t)
    ]
    assert symmetric == [(0, 3)]


def test_symmetric_transversal_exponent_two():
    v = make_group([2, 2])
    h = subgroup_closure(GroupSubset.from_indices(v, [0]))
    lam = symmetric_transversal(v, h)
    assert lam.is_full()


def test_symmetric_transversal_obstruction():
    z4 = make_group([4])
    h = subgroup_closure(GroupSubset.from_indices(z4, [2]))
    # exhaustive: neither transversal of {1,3} is symmetric
    for t in _all_transversals(z4, h):
        assert not (0 in t and sorted(z4.neg(x) for x in t) == sorted(t))
    with pytest.raises(NoSymmetricTransversal):
        symmetric_transversal(z4, h)


def test_symmetric_transversal_postconditions():
    for moduli, gens in [((9,), [3]), ((12,), [4]), ((2, 4), [(1, 0)]), ((3, 3), [(0, 1)])]:
        g = make_group(moduli)
        if isinstance(gens[0], tuple):
            s = GroupSubset.from_coords(g, gens)
        else:
            s = GroupSubset.from_indices(g, gens)
        h = subgroup_closure(s)
        try:
            lam = symmetric_transversal(g, h)
        except NoSymmetricTransversal:
            continue
        assert 0 in lam
        assert lam.negated().mask == lam.mask
        counts = [0] * h.coset_count
        for x in lam:
            counts[h.coset_index[x]] += 1
        assert counts == [1] * h.coset_count


def test_parse_group_spec():
    assert parse_group_spec("C(5)").moduli == (5,)
    assert parse_group_spec("C(2,4)").moduli == (2, 4)
    f = parse_group_spec("F(2,3)")
    assert f.moduli == (2, 2, 2) and f.spec_string() == "F(2,3)"
    p = parse_group_spec("poly(2,4)")
    assert p.moduli == (2, 2, 2, 2) and p.spec_string() == "poly(2,4)"
    with pytest.raises(ParseError):
        parse_group_spec("D(5)")
    with pytest.raises(ParseError):
        parse_group_spec("C(x)")


def test_poly_labels():
    g = poly_group(3, 4)
    assert g.element_label(g.encode([0, 0, 0, 0])) == "0"
    assert g.element_label(g.encode([1, 0, 0, 0])) == "1"
    assert g.element_label(g.encode([0, 1, 0, 0])) == "t"
    assert g.element_label(g.encode([0, 0, 2, 0])) == "2t^2"
    assert g.element_label(g.encode([1, 1, 0, 2])) == "1+t+2t^3"


def test_vector_group_spec_roundtrip():
    g = vector_group(5, 2)
    assert g.order == 25
    assert parse_group_spec(g.spec_string()) == g
