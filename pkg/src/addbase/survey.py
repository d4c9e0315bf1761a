"""Small-h census over cyclic groups.

For each n up to a cap, enumerate every subset of Z/n whose differences
generate and whose weak nice order is at most the cap, and record its nice
order.  Rows are emitted in (n ascending, mask ascending) order so the
delimited output is reproducible; sharding the mask range across threads
must not change a byte of it.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import BadParameters, BudgetExceeded
from .groups import GroupSubset, make_group
from .sumsets import order_profile

DEFAULT_SURVEY_CAP = 14

_TSV_HEADER = "groupSpec\tweakOrderCap\tsetMask\tniceOrder\tisMaxForGroup"


@dataclass(frozen=True)
class SurveyRow:
    group_spec: str
    weak_order_cap: int
    set_mask: int
    nice_order: int
    is_max_for_group: bool

    def tsv(self) -> str:
        return "\t".join(
            [
                self.group_spec,
                str(self.weak_order_cap),
                str(self.set_mask),
                str(self.nice_order),
                "true" if self.is_max_for_group else "false",
            ]
        )


def _scan_masks(group, h_cap: int, lo: int, hi: int) -> list[tuple[int, int]]:
    out = []
    for mask in range(lo, hi):
        profile = order_profile(GroupSubset(group, mask))
        if not profile.generates_by_differences:
            continue
        if profile.weak_nice_order is None or profile.weak_nice_order > h_cap:
            continue
        out.append((mask, profile.nice_order))
    return out


def survey_rows(
    h_cap: int, n_max: int, threads: int = 1, cap: int = DEFAULT_SURVEY_CAP
) -> list[SurveyRow]:
    if h_cap < 1 or n_max < 2:
        raise BadParameters("need hCap >= 1 and nMax >= 2")
    if n_max > cap:
        raise BudgetExceeded(f"nMax {n_max} exceeds survey cap {cap}")
    rows: list[SurveyRow] = []
    for n in range(2, n_max + 1):
        group = make_group([n])
        spec = group.spec_string()
        total = 1 << n
        if threads > 1:
            chunk = max(64, total // (threads * 4))
            bounds = [(lo, min(lo + chunk, total)) for lo in range(1, total, chunk)]
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = pool.map(
                    lambda be: _scan_masks(group, h_cap, be[0], be[1]), bounds
                )
                found = [item for part in parts for item in part]
            found.sort()
        else:
            found = _scan_masks(group, h_cap, 1, total)
        best = max((order for _, order in found), default=0)
        rows.extend(
            SurveyRow(spec, h_cap, mask, order, order == best)
            for mask, order in found
        )
    return rows


def survey_summary(rows: list[SurveyRow]) -> list[dict]:
    groups: dict[str, dict] = {}
    for row in rows:
        entry = groups.setdefault(
            row.group_spec,
            {"groupSpec": row.group_spec, "maxNiceOrder": 0, "argmaxMasks": []},
        )
        entry["maxNiceOrder"] = max(entry["maxNiceOrder"], row.nice_order)
    for row in rows:
        if row.is_max_for_group:
            groups[row.group_spec]["argmaxMasks"].append(row.set_mask)
    return list(groups.values())


def rows_to_tsv(rows: list[SurveyRow]) -> str:
    lines = [_TSV_HEADER]
    lines.extend(row.tsv() for row in rows)
    return "\n".join(lines) + "\n"


def table_sha256(tsv: str) -> str:
    return hashlib.sha256(tsv.encode("utf-8")).hexdigest()


def survey_payload(
    h_cap: int, n_max: int, threads: int = 1, cap: int = DEFAULT_SURVEY_CAP
) -> tuple[dict, str]:
    """The JSON payload and TSV table for one survey run."""
    rows = survey_rows(h_cap, n_max, threads=threads, cap=cap)
    tsv = rows_to_tsv(rows)
    payload = {
        "hCap": h_cap,
        "nMax": n_max,
        "groups": survey_summary(rows),
        "rowCount": len(rows),
        "tableSha256": table_sha256(tsv),
    }
    return payload, tsv
