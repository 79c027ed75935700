"""Daily in-degree evolution of the most-mentioned accounts."""
from __future__ import annotations

import csv
import io
import warnings
from collections import defaultdict
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Iterable, Sequence

from ..errors import BadInput
from ..ingest import TweetRecord, date_range
from .graphs import build_interaction_graph

ACCOUNT_TYPES = (
    "news outlet",
    "politician",
    "citizen",
    "weather station",
    "meteorologist",
    "journalist",
    "musician",
    "agency",
)
DEFAULT_TYPE = "citizen"


@dataclass(frozen=True)
class AccountLabel:
    handle: str
    type: str

    def __post_init__(self):
        if self.type not in ACCOUNT_TYPES:
            raise BadInput(f"unknown account type {self.type!r} for @{self.handle}")


def parse_labels(text: str) -> list[AccountLabel]:
    rows = list(csv.reader(io.StringIO(text)))
    if rows and [c.strip().lower() for c in rows[0][:2]] == ["handle", "type"]:
        rows = rows[1:]
    return [
        AccountLabel(row[0].strip().lstrip("@").lower(), row[1].strip().lower())
        for row in rows
        if row and row[0].strip()
    ]


def load_labels(path) -> list[AccountLabel]:
    """Read a ``handle,type`` CSV."""
    return parse_labels(Path(path).read_text(encoding="utf-8"))


@dataclass
class DailyInDegreeTable:
    days: list[date]
    accounts: list[str]
    account_types: dict[str, str]
    by_account: dict[date, dict[str, int]]

    @property
    def types(self) -> list[str]:
        present = set(self.account_types.values())
        return [t for t in ACCOUNT_TYPES if t in present]

    @property
    def by_type(self) -> dict[date, dict[str, int]]:
        out = {}
        for day in self.days:
            row = dict.fromkeys(self.types, 0)
            for handle, value in self.by_account[day].items():
                row[self.account_types[handle]] += value
            out[day] = row
        return out


def top_accounts(records: Iterable[TweetRecord], k: int = 50) -> list[str]:
    """Top-k handles by weighted in-degree in the aggregate graph; ties by handle."""
    indeg = build_interaction_graph(records).in_degrees(weighted=True)
    ranked = sorted(indeg.items(), key=lambda kv: (-kv[1], kv[0]))
    return [h for h, _ in ranked[:k]]


def daily_top50_table(
    records: Sequence[TweetRecord],
    labels: Iterable[AccountLabel],
    k: int = 50,
    start: date | None = None,
    end: date | None = None,
) -> DailyInDegreeTable:
    """Daily weighted in-degree of the aggregate top-k accounts, per account and per type.

    Accounts missing from ``labels`` are typed as citizens with a warning.
    """
    records = list(records)
    top = top_accounts(records, k)
    label_map = {lab.handle: lab.type for lab in labels}
    unlabeled = [h for h in top if h not in label_map]
    if unlabeled:
        warnings.warn(
            f"{len(unlabeled)} top account(s) unlabeled, typed as {DEFAULT_TYPE}: {', '.join(unlabeled[:5])}",
            stacklevel=2,
        )
    types = {h: label_map.get(h, DEFAULT_TYPE) for h in top}

    by_day: dict[date, list[TweetRecord]] = defaultdict(list)
    for r in records:
        by_day[r.day].append(r)
    if start is None or end is None:
        known = sorted(by_day)
        start = start or (known[0] if known else None)
        end = end or (known[-1] if known else None)
    days = date_range(start, end) if start and end else []

    table = {}
    for day in days:
        indeg = build_interaction_graph(by_day.get(day, ())).in_degrees(weighted=True)
        table[day] = {h: indeg.get(h, 0) for h in top}
    return DailyInDegreeTable(days, top, types, table)
