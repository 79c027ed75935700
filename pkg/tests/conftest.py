from __future__ import annotations

import sys
from datetime import datetime, timezone
from pathlib import Path

import pytest

from crisislens.config import resolve_data_path
from crisislens.ingest import GeoPoint, TweetRecord
from crisislens.lexicon import load_lexicon

TESTS = Path(__file__).parent
DATA = TESTS / "data"
ARCHIVE = DATA / "archive_1000.ndjson"
LABELS = DATA / "labels.csv"

sys.path.insert(0, str(TESTS))

_ids = iter(range(10**9))


def rec(text="", author="a", day="2017-09-20", time="12:00:00", lang="es", hashtags=(), mentions=(),
        retweet_of=None, geo=None, id=None) -> TweetRecord:
    ts = datetime.fromisoformat(f"{day}T{time}").replace(tzinfo=timezone.utc)
    return TweetRecord(
        id=str(next(_ids)) if id is None else id,
        author=author,
        timestamp=ts,
        text=text,
        language=lang,
        hashtags=tuple(hashtags),
        mentions=tuple(mentions),
        retweet_of=retweet_of,
        geo=None if geo is None else GeoPoint(*geo),
    )


@pytest.fixture(scope="session")
def lex_es():
    return load_lexicon(resolve_data_path("package:lexicon_es.csv", None), "es")


@pytest.fixture(scope="session")
def lex_en():
    return load_lexicon(resolve_data_path("package:lexicon_en.csv", None), "en")
