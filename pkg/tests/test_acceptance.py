"""Acceptance criteria, one test per criterion, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines.

Criterion 2 is asserted literally as stated and is expected to FAIL: the
unqualified exceptional-count bound has genuine finite counterexamples (all
of them small sets with |A| <= h+1; see the companion qualified test, which
passes).  The failure is intentional and documented, not a regression.
"""

import json
import time
from pathlib import Path

from addbase import oracle
from addbase.analysis import classify, is_basis, removal_witness, torsion_cover_check
from addbase.analysis import bound_x_general, bound_x_torsion, z_profile
from addbase.cli import main
from addbase.constructions import (
    balanced_ternary,
    fpt_example,
    fpt_params,
    minimal_basis_model,
    search_x_lower_witness,
    ternary_value,
    vsd_basis,
    x_lower_target,
)
from addbase.groups import GroupSubset, make_group, parse_group_spec, prime_factor_count
from addbase.sumsets import fold_sumset, order_profile, weak_union
from addbase.verify import EBOUND_FAMILY

GOLDEN = Path(__file__).resolve().parent.parent / "golden"


def verdict(num, name, passed, detail=""):
    tag = "PASS" if passed else "FAIL"
    suffix = f"  ({detail})" if detail else ""
    print(f"[criterion {num:02d}] {name}: {tag}{suffix}")
    return passed


def test_criterion_1_basis_criterion_equivalence():
    start = time.monotonic()
    mismatches = 0
    sets_checked = 0
    for n in range(2, 11):
        group = make_group([n])
        for mask in range(1, 1 << n):
            subset = GroupSubset(group, mask)
            sets_checked += 1
            fast = is_basis(subset)
            slow = oracle.naive_covers_by(group, frozenset(subset.members()), 2 * n)
            mismatches += fast != slow
    elapsed = time.monotonic() - start
    ok = mismatches == 0 and elapsed < 60.0
    verdict(1, "difference-closure criterion vs naive iteration oracle", ok,
            f"{sets_checked} sets, {mismatches} mismatches, {elapsed:.1f}s")
    assert mismatches == 0
    assert elapsed < 60.0


def _ebound_violations():
    violations = []
    for spec in EBOUND_FAMILY:
        group = parse_group_spec(spec)
        for mask in range(1, 1 << group.order):
            subset = GroupSubset(group, mask)
            if subset.size < 2 or not is_basis(subset):
                continue
            report = classify(subset)
            h = report.profile.nice_order
            if report.exceptional_count > h - 1:
                violations.append((spec, mask, h, report.exceptional_count, subset.size))
    return violations


def test_criterion_2_exceptional_bound_literal():
    # literal form: every basis subset with nice order h has at most h-1
    # exceptional elements.  This is FALSE on finite groups (smallest
    # counterexample: {0,1} in Z/3, nice order 2, both elements exceptional),
    # so this test documents an honest red criterion.
    violations = _ebound_violations()
    ok = not violations
    verdict(2, "exceptional-count bound, literal form over all bases", ok,
            f"{len(violations)} violations, e.g. {violations[0] if violations else None}")
    assert not violations, (
        f"{len(violations)} finite small-set counterexamples; "
        "the bound as literally stated cannot hold on finite groups "
        "(see the qualified companion criterion and the removal argument, "
        "which needs |A| >= h+2)"
    )


def test_criterion_2q_exceptional_bound_qualified():
    # the form the removal argument proves: whenever |A| >= h+2 the bound
    # holds, and every literal violation is a small set with |A| <= h+1
    violations = _ebound_violations()
    qualified = [v for v in violations if v[4] >= v[2] + 2]
    all_small = all(size <= h + 1 for (_, _, h, _, size) in violations)
    ok = not qualified and all_small
    verdict(2, "exceptional-count bound for |A| >= h+2 (qualified form)", ok,
            f"{len(violations)} small-set artifacts, 0 qualified violations")
    assert not qualified
    assert all_small


def test_criterion_3_fpt_exact_values():
    ok = True
    for p, h, n_trunc in [(2, 2, 6), (2, 3, 6), (2, 4, 7), (3, 3, 6), (3, 5, 7)]:
        subset = fpt_example(p, h, n_trunc)
        group = subset.group
        k, _ = fpt_params(p, h)
        report = classify(subset)
        expected_set = sorted(group.strides[i] for i in range(k))
        ok &= report.profile.nice_order == h
        ok &= report.exceptional_elements() == expected_set
        ok &= report.exceptional_count == (h - 1) // (p - 1)
    verdict(3, "truncated polynomial-ring sets: order and exceptional set", ok)
    assert ok


def test_criterion_4_unit_vector_clauses():
    start = time.monotonic()
    ok = True
    for p, d in [(2, 2), (2, 4), (3, 2), (3, 3), (5, 2)]:
        subset = vsd_basis(p, d)
        half = ((d + 1) * (p - 1)) // 2
        k = d * (p - 1)
        ok &= (weak_union(subset, half).mask | 1) == subset.group.full_mask
        ok &= not fold_sumset(subset, k - 1).is_full()
        ok &= fold_sumset(subset, k).is_full()
    elapsed = time.monotonic() - start
    ok &= elapsed < 30.0
    verdict(4, "unit-vectors-plus-sum clauses", ok, f"{elapsed:.1f}s")
    assert ok


def test_criterion_5_xlower_witnesses():
    expected = {2: 4, 3: 7, 4: 10, 5: 15}
    ok = True
    for h, nice in expected.items():
        record = search_x_lower_witness(h)
        g, k = x_lower_target(h)
        # reverify the stored profile from scratch
        group = make_group([g])
        rebuilt = GroupSubset.from_indices(group, list(record.subset))
        fresh = order_profile(rebuilt)
        ok &= fresh == record.verified_profile
        ok &= fresh.nice_order == nice == k
        ok &= fresh.weak_nice_order <= h
    verdict(5, "2-element witnesses with nice order 4/7/10/15", ok)
    assert ok


def test_criterion_6_torsion_covering():
    ok = True
    checked = 0
    for moduli, p in [([2, 2], 2), ([2, 2, 2], 2), ([3, 3], 3)]:
        group = make_group(moduli)
        s = prime_factor_count(group.order)
        for mask in range(1, 1 << group.order):
            subset = GroupSubset(group, mask)
            if not is_basis(subset):
                continue
            checked += 1
            ok &= torsion_cover_check(subset, p, s)
    verdict(6, "torsion covering at Omega(|G|)*p folds, exhaustive", ok,
            f"{checked} generating sets")
    assert ok


def test_criterion_7_minimal_basis_models():
    start = time.monotonic()
    ok = True
    for variant, big_k, h in [
        ("ternary", 4, 2),
        ("ternary", 5, 3),
        ("chain2", 6, 2),
        ("chain2", 6, 3),
    ]:
        model, basis = minimal_basis_model(big_k, h, variant)
        covered = fold_sumset(basis, h)
        for a in basis:
            ok &= removal_witness(basis, a, h) is not None
        interior = [x for x in model.group.elements() if model.is_interior(x)]
        ok &= all(x in covered for x in interior)
    elapsed = time.monotonic() - start
    ok &= elapsed < 120.0
    verdict(7, "minimal-basis models: witnesses and interior coverage", ok,
            f"{elapsed:.1f}s")
    assert ok


def test_criterion_8_balanced_ternary():
    import itertools

    ok = all(
        ternary_value(balanced_ternary(n)) == n for n in range(-(3**7), 3**7 + 1)
    )
    for big_k in range(1, 8):
        modulus = 3**big_k
        residues = {
            ternary_value(list(d)) % modulus
            for d in itertools.product((-1, 0, 1), repeat=big_k)
        }
        ok &= len(residues) == modulus
    verdict(8, "balanced ternary roundtrip and residue bijectivity", ok)
    assert ok


def test_criterion_9_formula_calculators():
    ok = bound_x_general(2, z_profile(2)) == 7
    ok &= bound_x_torsion(2, 5) == (11, 7)
    for h in range(2, 21):
        upper, lower = bound_x_torsion(2, h)
        ok &= upper is not None and lower is not None
        ok &= 2 * h - 2 <= upper and lower <= upper
    verdict(9, "closed-form bound calculators", ok)
    assert ok


def test_criterion_10_determinism(tmp_path, capsys):
    from addbase.verify import suite_names

    ok = True
    # survey across thread counts, byte-for-byte, against the golden files
    survey_outs = []
    tables = []
    for threads in ("1", "2", "8"):
        table = tmp_path / f"survey_t{threads}.tsv"
        code = main(
            [
                "survey",
                "--hCap", "2",
                "--nMax", "10",
                "--threads", threads,
                "--table", str(table),
            ]
        )
        out = capsys.readouterr().out
        ok &= code == 0
        survey_outs.append(out)
        tables.append(table.read_text())
    ok &= len(set(survey_outs)) == 1
    ok &= len(set(tables)) == 1
    ok &= survey_outs[0] == (GOLDEN / "survey_hcap2_nmax10.json").read_text()
    ok &= tables[0] == (GOLDEN / "survey_hcap2_nmax10.tsv").read_text()

    # every verify suite: byte-identical across thread counts, golden match
    golden_mismatch = []
    for name in suite_names():
        outs = []
        for threads in ("1", "2", "8"):
            main(
                [
                    "verify",
                    "--suite", name,
                    "--threads", threads,
                    "--golden-dir", str(GOLDEN),
                ]
            )
            outs.append(capsys.readouterr().out)
        ok &= len(set(outs)) == 1
        doc = json.loads(outs[0])
        if doc["payload"]["goldenMatches"] is not True:
            golden_mismatch.append(name)
            ok = False
    with capsys.disabled():
        verdict(10, "byte determinism across 1/2/8 threads vs golden", ok,
                f"golden mismatches: {golden_mismatch or 'none'}")
    assert ok
