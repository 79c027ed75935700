from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping


@dataclass
class WordDistribution:
    """Token multiset; relative frequencies are ``count / total``."""

    counts: Counter = field(default_factory=Counter)

    def __post_init__(self):
        if not isinstance(self.counts, Counter):
            self.counts = Counter(self.counts)
        for token, c in self.counts.items():
            if c < 0 or int(c) != c:
                raise ValueError(f"count for {token!r} must be a non-negative integer")
        # zero counts carry no mass and would only pollute supports
        for token in [t for t, c in self.counts.items() if c == 0]:
            del self.counts[token]

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]) -> "WordDistribution":
        return cls(Counter(tokens))

    @classmethod
    def from_texts(cls, texts: Iterable[str]) -> "WordDistribution":
        from .lexicon import tokenize

        counts: Counter = Counter()
        for text in texts:
            counts.update(tokenize(text))
        return cls(counts)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __len__(self) -> int:
        return len(self.counts)

    def __bool__(self) -> bool:
        return bool(self.counts)

    def __add__(self, other: "WordDistribution") -> "WordDistribution":
        return WordDistribution(self.counts + other.counts)

    def frequencies(self) -> dict[str, float]:
        total = self.total
        if total == 0:
            return {}
        return {t: c / total for t, c in self.counts.items()}

    def restricted(self, keep: Iterable[str] | Mapping) -> "WordDistribution":
        keep = keep if isinstance(keep, (set, frozenset, Mapping)) else set(keep)
        return WordDistribution(Counter({t: c for t, c in self.counts.items() if t in keep}))

    def scaled(self, k: int) -> "WordDistribution":
        return WordDistribution(Counter({t: c * k for t, c in self.counts.items()}))
