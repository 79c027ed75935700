"""Happiness lexicons, tokenization and the neutral lens."""
from __future__ import annotations

import csv
import io
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

import regex

from ._text import fold
from .distribution import WordDistribution
from .errors import BadScore, DuplicateToken, EmptyAfterMask

NEUTRAL = 5.0
SCORE_MIN, SCORE_MAX = 1.0, 9.0
MAX_RADIUS = 4.0

_EMOJI_ANY = regex.compile(r"[\p{Extended_Pictographic}\p{Regional_Indicator}]")
_EMOJI_SPLIT = regex.compile(r"((?=[\p{Extended_Pictographic}\p{Regional_Indicator}])\X)")
_EDGE_PUNCT = regex.compile(r"^[\p{P}--[#@]]+|[\p{P}--[#@]]+$", regex.V1)


def _strip_punct(word: str) -> str:
    if unicodedata.category(word[0])[0] == "P" or unicodedata.category(word[-1])[0] == "P":
        return _EDGE_PUNCT.sub("", word)
    return word


def tokenize(text: str) -> list[str]:
    """Split text into lexicon tokens.

    Case-folds and NFC-normalizes, splits on whitespace, strips leading and
    trailing punctuation other than ``#`` and ``@``, and emits each emoji
    grapheme cluster as its own token.

    >>> tokenize("¡Huracán María!")
    ['huracán', 'maría']
    >>> tokenize("ayuda 🙏🙏")
    ['ayuda', '🙏', '🙏']
    """
    text = fold(text)
    has_emoji = _EMOJI_ANY.search(text) is not None
    tokens = []
    for word in text.split():
        if has_emoji and _EMOJI_ANY.search(word):
            for i, piece in enumerate(_EMOJI_SPLIT.split(word)):
                if not piece:
                    continue
                if i % 2:
                    tokens.append(piece)
                else:
                    piece = _strip_punct(piece)
                    if piece:
                        tokens.append(piece)
        else:
            word = _strip_punct(word)
            if word:
                tokens.append(word)
    return tokens


@dataclass(frozen=True)
class LensMask:
    """Excludes words whose raw score lies strictly inside (5 - radius, 5 + radius)."""

    radius: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.radius <= MAX_RADIUS:
            raise ValueError(f"lens radius must be in [0, {MAX_RADIUS}], got {self.radius}")

    def keeps(self, raw_score: float) -> bool:
        return not (NEUTRAL - self.radius < raw_score < NEUTRAL + self.radius)


def as_mask(mask) -> LensMask:
    if mask is None:
        return LensMask(0.0)
    return mask if isinstance(mask, LensMask) else LensMask(float(mask))


class Lexicon(Mapping):
    """Immutable token -> raw score (1..9) table for one language."""

    def __init__(self, entries: Mapping[str, float], language: str = "und"):
        clean: dict[str, float] = {}
        for token, score in entries.items():
            key = fold(token).strip()
            score = float(score)
            if not SCORE_MIN <= score <= SCORE_MAX:
                raise BadScore(f"{token!r}: score {score} outside [1, 9]")
            if key in clean:
                raise DuplicateToken(f"{token!r} appears more than once")
            clean[key] = score
        self._entries = MappingProxyType(clean)
        self.language = language

    def __getitem__(self, token: str) -> float:
        return self._entries[token]

    def __iter__(self):
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        return f"Lexicon(language={self.language!r}, size={len(self)})"

    def adjusted(self, token: str) -> float | None:
        raw = self._entries.get(token)
        return None if raw is None else raw - NEUTRAL

    def merged(self, other: "Lexicon", language: str = "mixed") -> "Lexicon":
        """Union of two lexicons; overlapping tokens must agree on score."""
        entries = dict(self._entries)
        for token, score in other.items():
            if token in entries and entries[token] != score:
                raise DuplicateToken(f"{token!r} scored differently in the two lexicons")
            entries[token] = score
        return Lexicon(entries, language)


def adjusted_score(lex: Lexicon, token: str) -> float | None:
    """Raw score minus the neutral midpoint 5, or None for unscored tokens."""
    return lex.adjusted(token)


def _parse_float(value: str) -> float | None:
    try:
        return float(value)
    except ValueError:
        return None


def parse_lexicon(text: str, language: str = "und", source: str = "<string>") -> Lexicon:
    first = text.split("\n", 1)[0]
    delimiter = "\t" if "\t" in first else ","
    rows = [row for row in csv.reader(io.StringIO(text), delimiter=delimiter) if row and any(c.strip() for c in row)]
    if not rows:
        return Lexicon({}, language)

    token_col, score_col = 0, 1
    header = [c.strip().lower() for c in rows[0]]
    if len(header) > 1 and _parse_float(header[1]) is None:
        for name in ("token", "word"):
            if name in header:
                token_col = header.index(name)
        for name in ("score", "happiness_average", "happs"):
            if name in header:
                score_col = header.index(name)
        rows = rows[1:]

    entries: dict[str, float] = {}
    for lineno, row in enumerate(rows, 2):
        if len(row) <= max(token_col, score_col):
            raise BadScore(f"{source}:{lineno}: expected token and score columns")
        token = fold(row[token_col]).strip()
        score = _parse_float(row[score_col].strip())
        if score is None:
            raise BadScore(f"{source}:{lineno}: score {row[score_col]!r} is not a number")
        if not SCORE_MIN <= score <= SCORE_MAX:
            raise BadScore(f"{source}:{lineno}: {token!r} has score {score} outside [1, 9]")
        if token in entries:
            raise DuplicateToken(f"{source}:{lineno}: duplicate token {token!r}")
        entries[token] = score
    return Lexicon(entries, language)


def load_lexicon(path, language: str | None = None) -> Lexicon:
    """Read a ``token,score[,stddev]`` CSV or TSV file (UTF-8, with header)."""
    path = Path(path)
    if language is None:
        stem = path.stem.lower()
        language = stem.rsplit("_", 1)[-1] if "_" in stem else "und"
    return parse_lexicon(path.read_text(encoding="utf-8"), language, source=str(path))


def surviving_tokens(dist: WordDistribution, lex: Lexicon, mask) -> set[str]:
    mask = as_mask(mask)
    return {t for t in dist.counts if t in lex and mask.keeps(lex[t])}


def apply_lens(dist: WordDistribution, lex: Lexicon, mask=1.0) -> WordDistribution:
    """Drop unscored and near-neutral tokens; frequencies renormalize over survivors."""
    kept = dist.restricted(surviving_tokens(dist, lex, mask))
    if not kept:
        raise EmptyAfterMask("no scored tokens survive the lens")
    return kept
