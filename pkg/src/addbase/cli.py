"""Command-line surface.

Every command prints one CommandResult JSON document (or a flat table with
--format table) and exits 0 on success, 2 on parse/validation problems, 3 on
mathematical precondition failures, 4 on budget overruns and 5 on
verification failures.  Identical inputs produce byte-identical JSON:
keys are sorted, there are no timestamps, and --threads never changes a byte
of output.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from ._version import __version__
from .analysis import classify, removal_witness
from .constructions import (
    balanced_ternary,
    fpt_example,
    fpt_params,
    minimal_basis_model,
    search_x_lower_witness,
    ternary_value,
    vs2_nice_check,
    vsd_basis,
)
from .errors import AddbaseError, BadParameters, ParseError
from .groups import GroupSubset, parse_group_spec
from .jsonio import canonical_json, command_envelope
from .survey import DEFAULT_SURVEY_CAP, survey_payload
from .sumsets import fold_sumset, order_profile
from .verify import run_suite, suite_names


def _split_top_level(text: str) -> list[str]:
    items = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            items.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    items.append("".join(current))
    return [item.strip() for item in items if item.strip()]


def parse_set_literal(group, text: str) -> GroupSubset:
    """Element list: flat indices and/or coordinate tuples, comma separated."""
    indices = []
    for item in _split_top_level(text):
        if item.startswith("("):
            if not item.endswith(")"):
                raise ParseError(f"bad tuple literal {item!r}")
            try:
                coords = [int(x) for x in item[1:-1].split(",") if x.strip()]
            except ValueError as exc:
                raise ParseError(f"bad tuple literal {item!r}") from exc
            indices.append(group.encode(coords))
        else:
            try:
                indices.append(int(item))
            except ValueError as exc:
                raise ParseError(f"bad element literal {item!r}") from exc
    if not indices:
        raise ParseError("empty set literal")
    return GroupSubset.from_indices(group, indices)


def _echo_set(subset: GroupSubset) -> list[list[int]]:
    return [list(subset.group.decode(i)) for i in subset]


# -- command handlers ------------------------------------------------------------


def _run_order(args) -> tuple[dict, dict, int]:
    group = parse_group_spec(args.group)
    subset = parse_set_literal(group, args.set)
    echo = {"group": group.spec_string(), "set": _echo_set(subset)}
    return echo, order_profile(subset).to_json(), 0


def _construct_for_group(group, literal: str) -> GroupSubset:
    """Parse 'kind:key=val,...' and build the named set over the given group."""
    kind, _, body = literal.partition(":")
    params: dict[str, int] = {}
    for piece in body.split(","):
        if not piece.strip():
            continue
        key, _, value = piece.partition("=")
        try:
            params[key.strip()] = int(value)
        except ValueError as exc:
            raise ParseError(f"bad construct parameter {piece!r}") from exc
    if kind == "fpt":
        p, h = params.get("p"), params.get("h")
        if p is None or h is None:
            raise ParseError("fpt construct needs p= and h=")
        n_trunc = params.get("N", len(group.moduli))
        subset = fpt_example(p, h, n_trunc)
    elif kind == "vsd":
        p, d = params.get("p"), params.get("d")
        if p is None or d is None:
            raise ParseError("vsd construct needs p= and d=")
        subset = vsd_basis(p, d)
    else:
        raise ParseError(f"unknown construct kind {kind!r}")
    if subset.group.moduli != group.moduli:
        raise ParseError(
            f"construct {literal!r} lives over {subset.group.spec_string()}, "
            f"not {group.spec_string()}"
        )
    return GroupSubset(group, subset.mask)


def _run_classify(args) -> tuple[dict, dict, int]:
    group = parse_group_spec(args.group)
    if args.set is not None:
        subset = parse_set_literal(group, args.set)
        echo = {"group": group.spec_string(), "set": _echo_set(subset)}
    elif args.construct is not None:
        subset = _construct_for_group(group, args.construct)
        echo = {"group": group.spec_string(), "construct": args.construct}
    else:
        raise ParseError("classify needs --set or --construct")
    report = classify(subset)
    payload = report.to_json()
    payload["exceptional"] = [
        group.element_label(e) for e in report.exceptional_elements()
    ]
    return echo, payload, 0


def _run_construct(args) -> tuple[dict, dict, int]:
    kind = args.kind
    if kind == "balanced-ternary":
        if args.n is None:
            raise ParseError("balanced-ternary needs --n")
        digits = balanced_ternary(args.n)
        echo = {"kind": kind, "n": args.n}
        return echo, {"digits": digits, "value": ternary_value(digits)}, 0

    if kind == "minimal":
        if args.variant is None or args.K is None or args.h is None:
            raise ParseError("minimal needs --variant, --K and --h")
        model, basis = minimal_basis_model(args.K, args.h, args.variant)
        group = model.group
        covered = fold_sumset(basis, args.h)
        witnesses = []
        all_minimal = True
        for a in basis:
            w = removal_witness(basis, a, args.h)
            all_minimal &= w is not None
            witnesses.append(
                {
                    "element": list(group.decode(a)),
                    "witness": None if w is None else list(group.decode(w)),
                    "essential": w is not None,
                }
            )
        interior = [x for x in group.elements() if model.is_interior(x)]
        interior_covered = sum(1 for x in interior if x in covered)
        echo = {"kind": kind, "variant": args.variant, "K": args.K, "h": args.h}
        payload = {
            "groupSpec": group.spec_string(),
            "classes": [list(cls) for cls in model.class_partition],
            "digitSets": [_echo_set(lam) for lam in model.lambda_sets],
            "basis": _echo_set(basis),
            "basisSize": basis.size,
            "witnesses": witnesses,
            "allMinimal": all_minimal,
            "interiorCount": len(interior),
            "interiorCovered": interior_covered,
            "profile": order_profile(basis).to_json(),
        }
        return echo, payload, 0

    if kind == "fpt":
        if args.p is None or args.h is None or args.N is None:
            raise ParseError("fpt needs --p, --h and --N")
        subset = fpt_example(args.p, args.h, args.N)
        group = subset.group
        k, r = fpt_params(args.p, args.h)
        report = classify(subset)
        echo = {"kind": kind, "p": args.p, "h": args.h, "N": args.N}
        payload = {
            "groupSpec": group.spec_string(),
            "k": k,
            "r": r,
            "size": subset.size,
            "elements": _echo_set(subset),
            "labels": [group.element_label(e) for e in subset],
            "profile": report.profile.to_json(),
            "exceptional": [
                group.element_label(e) for e in report.exceptional_elements()
            ],
            "exceptionalCount": report.exceptional_count,
            "expectedCount": (args.h - 1) // (args.p - 1),
        }
        return echo, payload, 0

    if kind == "vsd":
        if args.p is None or args.d is None:
            raise ParseError("vsd needs --p and --d")
        subset = vsd_basis(args.p, args.d)
        group = subset.group
        half = ((args.d + 1) * (args.p - 1)) // 2
        k = args.d * (args.p - 1)
        from .sumsets import weak_union

        cover_half = (weak_union(subset, half).mask | 1) == group.full_mask
        echo = {"kind": kind, "p": args.p, "d": args.d}
        payload = {
            "groupSpec": group.spec_string(),
            "elements": _echo_set(subset),
            "halfBound": half,
            "k": k,
            "checks": {
                "coverHalf": cover_half,
                "kMinusOneFails": not fold_sumset(subset, k - 1).is_full(),
                "kCovers": fold_sumset(subset, k).is_full(),
            },
        }
        return echo, payload, 0

    if kind == "vs2check":
        if args.p is None or args.d is None or args.alphas is None:
            raise ParseError("vs2check needs --p, --d and --alphas")
        try:
            alphas = [int(x) for x in args.alphas.split(",") if x.strip()]
        except ValueError as exc:
            raise ParseError(f"bad --alphas {args.alphas!r}") from exc
        result = vs2_nice_check(args.p, args.d, alphas)
        echo = {"kind": kind, "p": args.p, "d": args.d, "alphas": alphas}
        return echo, result.to_json(), 0

    raise ParseError(f"unknown construct kind {kind!r}")


def _run_search_xlower(args) -> tuple[dict, dict, int]:
    record = search_x_lower_witness(args.h, collect_all=args.all)
    return {"h": args.h}, record.to_json(), 0


def _run_survey(args) -> tuple[dict, dict, int]:
    cap = DEFAULT_SURVEY_CAP
    env_budget = os.environ.get("ADDBASE_BUDGET")
    if env_budget is not None:
        try:
            cap = int(env_budget)
        except ValueError as exc:
            raise ParseError(f"bad ADDBASE_BUDGET value {env_budget!r}") from exc
    payload, tsv = survey_payload(args.hCap, args.nMax, threads=args.threads, cap=cap)
    table_path = args.table or f"survey_hcap{args.hCap}_nmax{args.nMax}.tsv"
    Path(table_path).write_text(tsv)
    if args.plot:
        from .plotting import render_survey_figure

        render_survey_figure(payload["groups"], args.plot)
    return {"hCap": args.hCap, "nMax": args.nMax}, payload, 0


def _run_verify(args) -> tuple[dict, dict, int]:
    golden_dir = args.golden_dir
    echo = {"suite": args.suite}
    if args.suite == "all":
        summaries = []
        ok = True
        for name in suite_names():
            result = run_suite(name, golden_dir)
            summaries.append(
                {
                    "suite": name,
                    "allPassed": result["allPassed"],
                    "goldenMatches": result["goldenMatches"],
                }
            )
            ok &= result["allPassed"] and result["goldenMatches"] is not False
        return echo, {"suites": summaries, "allPassed": ok}, 0 if ok else 5
    result = run_suite(args.suite, golden_dir)
    ok = result["allPassed"] and result["goldenMatches"] is not False
    return echo, result, 0 if ok else 5


# -- rendering -------------------------------------------------------------------


def _has_dict(obj) -> bool:
    if isinstance(obj, dict):
        return True
    if isinstance(obj, list):
        return any(_has_dict(item) for item in obj)
    return False


def _inline(value) -> str:
    if isinstance(value, list):
        return "(" + ",".join(_inline(v) for v in value) + ")"
    return _scalar(value)


def _render_table(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            value = obj[key]
            if isinstance(value, dict) and value:
                lines.append(f"{pad}{key}:")
                lines.extend(_render_table(value, indent + 1))
            elif isinstance(value, list) and _has_dict(value):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_table(value, indent + 1))
            elif isinstance(value, list) and value:
                lines.append(f"{pad}{key}: " + ", ".join(_inline(v) for v in value))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                lines.extend(_render_table(item, indent))
                lines.append(pad + "-")
            else:
                lines.append(f"{pad}{_scalar(item)}")
        if lines and lines[-1] == pad + "-":
            lines.pop()
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return lines


def _scalar(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, dict)):
        return "{}" if isinstance(value, dict) else "[]"
    return str(value)


# -- entry point -----------------------------------------------------------------

_HANDLERS = {
    "order": _run_order,
    "classify": _run_classify,
    "construct": _run_construct,
    "search-xlower": _run_search_xlower,
    "survey": _run_survey,
    "verify": _run_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "table"], default="json")
    common.add_argument("--threads", type=int, default=1)

    parser = argparse.ArgumentParser(
        prog="addbase",
        description="Additive-basis analysis on finite abelian groups",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", parents=[common], help="order profile of a set")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)

    p = sub.add_parser("classify", parents=[common], help="regular/exceptional verdicts")
    p.add_argument("--group", required=True)
    p.add_argument("--set")
    p.add_argument("--construct")

    p = sub.add_parser("construct", parents=[common], help="build a named set")
    p.add_argument(
        "kind",
        choices=["balanced-ternary", "minimal", "fpt", "vsd", "vs2check"],
    )
    p.add_argument("--n", type=int)
    p.add_argument("--variant", choices=["ternary", "chain2"])
    p.add_argument("--K", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--alphas")

    p = sub.add_parser("search-xlower", parents=[common], help="2-element witness scan")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--all", action="store_true", help="record every witness pair")

    p = sub.add_parser("survey", parents=[common], help="small-h census over Z/n")
    p.add_argument("--hCap", type=int, required=True)
    p.add_argument("--nMax", type=int, required=True)
    p.add_argument("--table", help="table file path (default survey_hcap..._nmax....tsv)")
    p.add_argument("--plot", help="also render a figure of the maxima to this file")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=suite_names() + ["all"])
    p.add_argument("--golden-dir", default="golden")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        args.threads = 1
    command = args.command
    try:
        echo, payload, code = _HANDLERS[command](args)
        envelope = command_envelope(command, echo, payload)
    except AddbaseError as err:
        envelope = command_envelope(command, {}, None, error=err)
        code = err.exit_code
    if getattr(args, "format", "json") == "table":
        sys.stdout.write("\n".join(_render_table(envelope)) + "\n")
    else:
        sys.stdout.write(canonical_json(envelope))
    return code


if __name__ == "__main__":
    sys.exit(main())
