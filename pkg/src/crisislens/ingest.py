"""Archive parsing and the three corpus-collection procedures.

Input is newline-delimited JSON, one message per line::

    {"id": "1", "author": "someone", "text": "...", "lang": "es",
     "created_at": "2017-09-20T06:15:00Z",
     "entities": {"hashtags": ["PuertoRico"], "mentions": ["nwssanjuan"]},
     "retweet_of": null, "geo": {"lat": 18.22, "lon": -66.59}}

Everything here is a streaming transform over ``TweetRecord`` iterables, so
files can be sharded across workers and the resulting bins/buckets merged by key.
"""
from __future__ import annotations

import json
import logging
import re
import unicodedata
from collections import OrderedDict
from dataclasses import dataclass, field
from datetime import date, datetime, timedelta, timezone
from typing import Iterable, Iterator, Mapping, Sequence

from ._text import contains_any, fold
from .errors import MalformedRecord

log = logging.getLogger(__name__)

OTHER = "other"
UNDETERMINED = "und"

_HASHTAG_RE = re.compile(r"(?<![\w#])#(\w+)")
_MENTION_RE = re.compile(r"(?<![\w@])@(\w+)")


@dataclass(frozen=True)
class GeoPoint:
    lat: float
    lon: float


@dataclass(frozen=True)
class TweetRecord:
    id: str
    author: str
    timestamp: datetime
    text: str
    language: str = UNDETERMINED
    hashtags: tuple[str, ...] = ()
    mentions: tuple[str, ...] = ()
    retweet_of: str | None = None
    geo: GeoPoint | None = None

    @property
    def day(self) -> date:
        return self.timestamp.date()

    @property
    def targets(self) -> tuple[str, ...]:
        """Distinct accounts this record mentions or retweets, in first-seen order."""
        if self.retweet_of is None:
            return self.mentions
        return _dedupe(self.mentions + (self.retweet_of,))

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "author": self.author,
            "created_at": format_timestamp(self.timestamp),
            "lang": self.language,
            "text": self.text,
            "entities": {"hashtags": list(self.hashtags), "mentions": list(self.mentions)},
            "retweet_of": self.retweet_of,
            "geo": None if self.geo is None else {"lat": self.geo.lat, "lon": self.geo.lon},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, separators=(",", ":"))


@dataclass(frozen=True)
class GeoRegion:
    """Union of lat/lon bounding boxes, given as (lat_min, lat_max, lon_min, lon_max)."""

    name: str
    boxes: tuple[tuple[float, float, float, float], ...]

    def __post_init__(self):
        if not self.boxes:
            raise ValueError(f"region {self.name!r} has no boxes")
        for lat_min, lat_max, lon_min, lon_max in self.boxes:
            if not (lat_min < lat_max and lon_min < lon_max):
                raise ValueError(f"degenerate box in region {self.name!r}")

    def contains(self, lat: float, lon: float) -> bool:
        return any(
            a <= lat <= b and c <= lon <= d for a, b, c, d in self.boxes
        )


@dataclass
class CollectionConfig:
    keywords: list[str]
    date_start: date
    date_end: date
    languages: list[str] = field(default_factory=lambda: ["es", "en"])
    victim_keywords: list[str] = field(default_factory=list)
    victim_language: str = "es"

    def __post_init__(self):
        if self.date_start > self.date_end:
            raise ValueError("date_start is after date_end")


def _dedupe(items: Iterable[str]) -> tuple[str, ...]:
    return tuple(dict.fromkeys(items))


def _norm_handle(value) -> str:
    if isinstance(value, Mapping):
        value = value.get("screen_name") or value.get("text") or value.get("tag") or ""
    return unicodedata.normalize("NFC", str(value)).lstrip("@#").lower()


def parse_timestamp(value: str) -> datetime:
    """Parse ISO-8601 (or the classic ``Wed Sep 20 06:15:00 +0000 2017`` form) to UTC seconds."""
    value = value.strip()
    try:
        if value.endswith(("Z", "z")):
            value = value[:-1] + "+00:00"
        ts = datetime.fromisoformat(value)
    except ValueError:
        ts = datetime.strptime(value, "%a %b %d %H:%M:%S %z %Y")
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc).replace(microsecond=0)


def format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def parse_record(line: str) -> TweetRecord:
    """Parse one NDJSON line.

    Hashtags and mentions are the union of the structured ``entities`` lists
    and a scan of the text for ``#tag``/``@handle`` tokens, lowercased and
    deduplicated with structured entries first.
    """
    try:
        obj = json.loads(line)
    except (json.JSONDecodeError, TypeError) as exc:
        raise MalformedRecord(f"unparseable JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise MalformedRecord("record is not a JSON object")
    missing = [k for k in ("id", "author", "text", "created_at") if obj.get(k) in (None, "")]
    if missing:
        raise MalformedRecord(f"missing required field(s): {', '.join(missing)}")

    try:
        timestamp = parse_timestamp(str(obj["created_at"]))
    except ValueError:
        raise MalformedRecord(f"bad timestamp {obj['created_at']!r}") from None

    text = unicodedata.normalize("NFC", str(obj["text"]))
    entities = obj.get("entities") or {}
    hashtags = [_norm_handle(h) for h in entities.get("hashtags") or ()]
    hashtags += [h.lower() for h in _HASHTAG_RE.findall(text)]
    mentions = [_norm_handle(m) for m in entities.get("mentions") or ()]
    mentions += [m.lower() for m in _MENTION_RE.findall(text)]

    retweet_of = obj.get("retweet_of")
    retweet_of = _norm_handle(retweet_of) if retweet_of else None

    geo = obj.get("geo")
    point = None
    if isinstance(geo, Mapping) and geo.get("lat") is not None and geo.get("lon") is not None:
        try:
            point = GeoPoint(float(geo["lat"]), float(geo["lon"]))
        except (TypeError, ValueError):
            raise MalformedRecord(f"bad geo {geo!r}") from None

    lang = obj.get("lang") or UNDETERMINED
    return TweetRecord(
        id=str(obj["id"]),
        author=_norm_handle(obj["author"]),
        timestamp=timestamp,
        text=text,
        language=str(lang),
        hashtags=_dedupe(h for h in hashtags if h),
        mentions=_dedupe(m for m in mentions if m),
        retweet_of=retweet_of or None,
        geo=point,
    )


def read_records(lines: Iterable[str], strict: bool = False, stats: dict | None = None) -> Iterator[TweetRecord]:
    """Parse a stream of lines, skipping blanks.

    Malformed lines are skipped and counted in ``stats["malformed"]`` unless
    ``strict`` is set, in which case the first one raises.
    """
    seen: set[str] = set()
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            record = parse_record(line)
        except MalformedRecord as exc:
            if strict:
                raise MalformedRecord(f"line {lineno}: {exc}") from None
            if stats is not None:
                stats["malformed"] = stats.get("malformed", 0) + 1
            log.warning("skipping line %d: %s", lineno, exc)
            continue
        if record.id in seen:
            if stats is not None:
                stats["duplicates"] = stats.get("duplicates", 0) + 1
            continue
        seen.add(record.id)
        yield record


def keyword_filter(records: Iterable[TweetRecord], keywords: Iterable[str]) -> Iterator[TweetRecord]:
    """Keep records whose folded text contains any keyword as a substring."""
    keys = tuple(fold(k) for k in keywords)
    for record in records:
        if contains_any(fold(record.text), keys):
            yield record


def language_bin(records: Iterable[TweetRecord], languages: Sequence[str] = ("es", "en")) -> dict[str, list[TweetRecord]]:
    bins: dict[str, list[TweetRecord]] = {lang: [] for lang in languages}
    bins[OTHER] = []
    for record in records:
        bins.get(record.language, bins[OTHER]).append(record)
    return bins


def _in_range(record: TweetRecord, dates: tuple[date, date]) -> bool:
    return dates[0] <= record.day <= dates[1]


def extract_seed_users(records: Iterable[TweetRecord], region: GeoRegion, dates: tuple[date, date]) -> set[str]:
    return {
        r.author
        for r in records
        if r.geo is not None and _in_range(r, dates) and region.contains(r.geo.lat, r.geo.lon)
    }


def expand_user_sample(records: Iterable[TweetRecord], seeds: set[str], dates: tuple[date, date]) -> set[str]:
    """Seeds plus every in-range author who mentioned or retweeted a seed (one hop)."""
    if not seeds:
        raise ValueError("seed set is empty")
    sample = set(seeds)
    for r in records:
        if _in_range(r, dates) and not seeds.isdisjoint(r.targets):
            sample.add(r.author)
    return sample


def victim_filter(
    records: Iterable[TweetRecord],
    sample: set[str],
    victim_keywords: Iterable[str],
    language: str = "es",
) -> Iterator[TweetRecord]:
    keys = tuple(fold(k) for k in victim_keywords)
    for r in records:
        if (
            r.author in sample
            and r.language == language
            and r.targets
            and contains_any(fold(r.text), keys)
        ):
            yield r


def date_range(start: date, end: date) -> list[date]:
    return [start + timedelta(days=i) for i in range((end - start).days + 1)]


def bucket_by_day(
    records: Iterable[TweetRecord],
    start: date | None = None,
    end: date | None = None,
) -> OrderedDict[date, list[TweetRecord]]:
    """Stable partition by UTC day.

    With an explicit range every day in it gets a bucket (possibly empty) and
    records outside the range are dropped. Without one the range spans the
    earliest to latest record.
    """
    records = list(records)
    if start is None or end is None:
        days = [r.day for r in records]
        if not days and (start is None or end is None):
            return OrderedDict()
        start = start or min(days)
        end = end or max(days)
    buckets: OrderedDict[date, list[TweetRecord]] = OrderedDict((d, []) for d in date_range(start, end))
    for r in records:
        bucket = buckets.get(r.day)
        if bucket is not None:
            bucket.append(r)
    return buckets


def filter_dates(records: Iterable[TweetRecord], start: date | None, end: date | None) -> Iterator[TweetRecord]:
    for r in records:
        if (start is None or r.day >= start) and (end is None or r.day <= end):
            yield r
