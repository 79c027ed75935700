"""Word shift constructions.

Two kinds of shift are built here:

* sentiment shifts between two corpora treated as disjoint vocabularies
  (e.g. Spanish vs English), where the bars sum exactly to the difference
  in average happiness;
* divergence shifts, where each bar is a token's share of the
  Jensen-Shannon divergence, colored by how diverse the messages using
  that token are.

Sign convention: positive contributions point left, toward corpus A.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from .distribution import WordDistribution
from .errors import EmptyDistribution
from .infotheory import CORPUS_1, jsd
from .lexicon import NEUTRAL, Lexicon, apply_lens, as_mask, tokenize

LEFT, RIGHT = "left", "right"
DEFAULT_TOP = 50

_RT_PREFIX = re.compile(r"^rt\s+@\w+\s*:?\s*")
_SPACES = re.compile(r"\s+")


@dataclass(frozen=True)
class WordshiftEntry:
    token: str
    contribution: float
    side: str
    klass: str
    corpus: str | None = None
    entropy_color: float | None = None
    raw_entropy_bits: float | None = None

    @property
    def signed(self) -> float:
        """Contribution with left positive; JSD magnitudes get their side's sign."""
        if self.entropy_color is None:
            return self.contribution
        return self.contribution if self.side == LEFT else -self.contribution

    def to_dict(self) -> dict:
        return asdict(self)


def _rank_key(entry: WordshiftEntry):
    return (-abs(entry.contribution), entry.token, entry.corpus or "")


def _sentiment_entries(dist: WordDistribution, lex: Lexicon, sign: int, owner: str) -> list[WordshiftEntry]:
    total = dist.total
    owner_side = LEFT if sign > 0 else RIGHT
    entries = []
    for token, count in dist.counts.items():
        h = lex[token] - NEUTRAL
        value = sign * h * count / total
        mood = "happy" if h > 0 else "sad" if h < 0 else "neutral"
        side = LEFT if value > 0 else RIGHT if value < 0 else owner_side
        entries.append(WordshiftEntry(token, value, side, f"{mood}-{owner_side}", owner))
    return entries


def sentiment_shift(
    dist_a: WordDistribution,
    dist_b: WordDistribution,
    lex: Lexicon,
    mask=1.0,
    k: int | None = DEFAULT_TOP,
    lex_b: Lexicon | None = None,
) -> list[WordshiftEntry]:
    """Per-token contributions to ``<h>_A - <h>_B``.

    A token in corpus A contributes ``h' * p_A`` and a token in corpus B
    contributes ``-h' * p_B``, with ``h'`` the adjusted score and ``p`` the
    lens-renormalized frequency. Shared surface forms give one entry per
    corpus. ``k=None`` returns every entry.
    """
    mask = as_mask(mask)
    lex_b = lex if lex_b is None else lex_b
    kept_a = apply_lens(dist_a, lex, mask)
    kept_b = apply_lens(dist_b, lex_b, mask)
    entries = _sentiment_entries(kept_a, lex, +1, "A") + _sentiment_entries(kept_b, lex_b, -1, "B")
    entries.sort(key=_rank_key)
    return entries if k is None else entries[:k]


def normalize_message(text: str) -> str:
    text = _SPACES.sub(" ", text.casefold()).strip()
    return _RT_PREFIX.sub("", text)


def text_entropy(texts: Sequence[str]) -> tuple[float, float]:
    """(normalized, raw bits) entropy of distinct normalized message texts."""
    n = len(texts)
    if n == 0:
        raise EmptyDistribution("no messages")
    if n == 1:
        return 0.0, 0.0
    counts = Counter(normalize_message(t) for t in texts)
    bits = -math.fsum(c / n * math.log2(c / n) for c in counts.values())
    bits = max(bits, 0.0) + 0.0  # fsum of zeros negated is -0.0
    return min(bits / math.log2(n), 1.0), bits


def tweet_diversity(records: Sequence) -> float:
    """Normalized entropy in [0, 1] of the messages in a sub-collection.

    Retweets of one message normalize to the same text, so a token spread
    only by a retweet storm scores near zero.
    """
    return text_entropy([_text_of(r) for r in records])[0]


def _text_of(record) -> str:
    return record if isinstance(record, str) else record.text


def jsd_shift(
    corpus_a: Sequence,
    corpus_b: Sequence,
    k: int | None = DEFAULT_TOP,
) -> list[WordshiftEntry]:
    """Top-k tokens by Jensen-Shannon contribution between two message collections.

    Tokens with zero contribution are omitted, so identical corpora give an
    empty shift. Each entry's ``entropy_color`` is the diversity of all
    messages (from either corpus) containing the token.
    """
    if not corpus_a or not corpus_b:
        raise EmptyDistribution("both corpora must contain messages")
    texts = [_text_of(r) for r in corpus_a] + [_text_of(r) for r in corpus_b]
    token_lists = [tokenize(t) for t in texts]
    split = len(corpus_a)
    dist_a = WordDistribution(Counter(t for toks in token_lists[:split] for t in toks))
    dist_b = WordDistribution(Counter(t for toks in token_lists[split:] for t in toks))
    if not dist_a or not dist_b:
        raise EmptyDistribution("a corpus has no tokens")

    report = jsd(dist_a, dist_b)
    ranked = [c for c in report.ranked() if c.bits > 0.0]
    if k is not None:
        ranked = ranked[:k]

    wanted = {c.token for c in ranked}
    holders: dict[str, list[str]] = {t: [] for t in wanted}
    for text, toks in zip(texts, token_lists):
        for t in wanted.intersection(toks):
            holders[t].append(text)

    entries = []
    for c in ranked:
        color, bits = text_entropy(holders[c.token])
        side = LEFT if c.direction == CORPUS_1 else RIGHT
        klass = "more-frequent-corpus-1" if c.direction == CORPUS_1 else "more-frequent-corpus-2"
        entries.append(WordshiftEntry(c.token, c.bits, side, klass, "A" if side == LEFT else "B", color, bits))
    return entries


def shift_document(kind: str, labels: Iterable[str], k: int | None, entries: Sequence[WordshiftEntry], **extra) -> dict:
    doc = {
        "kind": kind,
        "corpus_labels": list(labels),
        "k": k,
        "entries": [
            {
                "token": e.token,
                "contribution": e.contribution,
                "side": e.side,
                "klass": e.klass,
                "entropy_color": e.entropy_color,
                "raw_entropy_bits": e.raw_entropy_bits,
            }
            for e in entries
        ],
    }
    doc.update(extra)
    return doc
