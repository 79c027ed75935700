"""Corpus sentiment: lexicon-weighted average happiness, daily series, lens sweeps."""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from datetime import date
from typing import Iterable, Mapping, Sequence

from .distribution import WordDistribution
from .errors import DateAxisMismatch, EmptyAfterMask
from .lexicon import NEUTRAL, Lexicon, apply_lens, as_mask, tokenize

__all__ = [
    "WordDistribution",
    "SeriesPoint",
    "SentimentSeries",
    "SweepPoint",
    "corpus_sentiment",
    "distribution_of",
    "daily_series",
    "series_difference",
    "lens_sweep",
    "parse_grid",
]


@dataclass(frozen=True)
class SeriesPoint:
    day: date
    sentiment: float | None
    tokens: int


@dataclass
class SentimentSeries:
    points: list[SeriesPoint]

    def __post_init__(self):
        for a, b in zip(self.points, self.points[1:]):
            if not a.day < b.day:
                raise ValueError("series dates must be strictly increasing")

    @property
    def days(self) -> list[date]:
        return [p.day for p in self.points]

    def values(self) -> list[float | None]:
        return [p.sentiment for p in self.points]

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class SweepPoint:
    radius: float
    mean: float | None
    variance: float | None
    days: int

    @property
    def empty(self) -> bool:
        return self.days == 0


def _weighted_mean(dist: WordDistribution, lex: Lexicon) -> float:
    total = dist.total
    return math.fsum((lex[t] - NEUTRAL) * c for t, c in dist.counts.items()) / total


def corpus_sentiment(dist: WordDistribution, lex: Lexicon, mask=1.0) -> float:
    """Average adjusted happiness over the lens-surviving, renormalized distribution."""
    return _weighted_mean(apply_lens(dist, lex, mask), lex)


def distribution_of(records) -> WordDistribution:
    """Token distribution of a bucket; passes WordDistributions through untouched."""
    if isinstance(records, WordDistribution):
        return records
    counts = WordDistribution()
    for r in records:
        counts.counts.update(tokenize(r if isinstance(r, str) else r.text))
    return counts


def _scored(dist: WordDistribution, lex: Lexicon) -> WordDistribution:
    return dist.restricted(lex)


def _series(day_dists: Mapping[date, WordDistribution], lex: Lexicon, mask) -> SentimentSeries:
    points = []
    for day, dist in day_dists.items():
        try:
            kept = apply_lens(dist, lex, mask)
        except EmptyAfterMask:
            points.append(SeriesPoint(day, None, 0))
            continue
        points.append(SeriesPoint(day, _weighted_mean(kept, lex), kept.total))
    return SentimentSeries(points)


def daily_series(buckets: Mapping[date, Iterable], lex: Lexicon, mask=1.0) -> SentimentSeries:
    """One point per bucket; days with nothing surviving the lens get ``sentiment=None``.

    ``tokens`` counts lens-surviving tokens, the weight each day carries
    when distributions are merged.
    """
    mask = as_mask(mask)
    dists = {day: _scored(distribution_of(b), lex) for day, b in sorted(buckets.items())}
    return _series(dists, lex, mask)


def series_difference(a: SentimentSeries, b: SentimentSeries) -> SentimentSeries:
    """Pointwise ``a - b``; a null on either side gives a null point."""
    if a.days != b.days:
        raise DateAxisMismatch("series cover different days")
    points = []
    for pa, pb in zip(a.points, b.points):
        if pa.sentiment is None or pb.sentiment is None:
            value = None
        else:
            value = pa.sentiment - pb.sentiment
        points.append(SeriesPoint(pa.day, value, pa.tokens + pb.tokens))
    return SentimentSeries(points)


def parse_grid(spec: str) -> list[float]:
    """``"start:stop:step"`` inclusive of stop, e.g. ``0:3:0.1`` gives 31 radii."""
    try:
        start, stop, step = (float(x) for x in spec.split(":"))
    except ValueError:
        raise ValueError(f"bad grid {spec!r}; expected start:stop:step") from None
    if step <= 0 or stop < start:
        raise ValueError(f"bad grid {spec!r}")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 10) for i in range(n)]


def lens_sweep(buckets: Mapping[date, Iterable], lex: Lexicon, radii: Sequence[float] | None = None) -> list[SweepPoint]:
    """Mean and population variance of the daily series at each lens radius.

    Null days are excluded from the statistics; a radius where every day is
    null comes back with ``mean=variance=None`` and ``days=0``.
    """
    radii = list(radii) if radii is not None else parse_grid("0:3:0.1")
    if not radii or any(b < a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be non-empty and ascending")
    dists = {day: _scored(distribution_of(b), lex) for day, b in sorted(buckets.items())}
    out = []
    for radius in radii:
        values = [p.sentiment for p in _series(dists, lex, as_mask(radius)).points if p.sentiment is not None]
        if not values:
            out.append(SweepPoint(radius, None, None, 0))
        else:
            out.append(SweepPoint(radius, statistics.fmean(values), statistics.pvariance(values), len(values)))
    return out
