"""Shannon entropy, KL divergence and weighted Jensen-Shannon divergence, in bits.

The divergence is kept as an exact per-token decomposition: each token's
term ``pi1*p1*log2(p1/m) + pi2*p2*log2(p2/m)`` is non-negative and the terms
sum to the total.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .distribution import WordDistribution
from .errors import EmptyDistribution, SupportViolation

CORPUS_1 = 1
CORPUS_2 = 2


def _probabilities(dist) -> dict:
    """Normalize a WordDistribution, a token->weight mapping or a weight sequence."""
    if isinstance(dist, WordDistribution):
        weights = dist.counts
    elif isinstance(dist, Mapping):
        weights = dist
    else:
        weights = dict(enumerate(dist))
    if any(w < 0 for w in weights.values()):
        raise ValueError("negative weight in distribution")
    total = math.fsum(weights.values())
    if total <= 0:
        raise EmptyDistribution("distribution has no mass")
    return {k: w / total for k, w in weights.items() if w > 0}


def _mass(dist) -> float:
    if isinstance(dist, WordDistribution):
        return float(dist.total)
    if isinstance(dist, Mapping):
        return math.fsum(dist.values())
    return math.fsum(dist)


def shannon_entropy(dist) -> float:
    """``-sum p log2 p``; zero-probability entries contribute nothing."""
    p = _probabilities(dist)
    return 0.0 - math.fsum(pi * math.log2(pi) for pi in p.values())  # 0.0 - x avoids -0.0


def kl_divergence(p, q) -> float:
    p, q = _probabilities(p), _probabilities(q)
    missing = [k for k in p if k not in q]
    if missing:
        raise SupportViolation(f"{len(missing)} token(s) of p are absent from q, e.g. {missing[0]!r}")
    return math.fsum(pi * math.log2(pi / q[k]) for k, pi in p.items())


@dataclass(frozen=True)
class Contribution:
    token: str
    bits: float
    direction: int | None  # CORPUS_1, CORPUS_2, or None on an exact frequency tie
    p1: float
    p2: float


@dataclass
class DivergenceReport:
    total: float
    weights: tuple[float, float]
    contributions: dict[str, Contribution] = field(default_factory=dict)
    mixture: dict[str, float] = field(default_factory=dict)

    def ranked(self, k: int | None = None) -> list[Contribution]:
        """Largest contributions first; ties in bits go to the smaller token."""
        items = sorted(self.contributions.values(), key=lambda c: (-c.bits, c.token))
        return items if k is None else items[:k]

    def to_dict(self) -> dict:
        return {
            "total_bits": self.total,
            "weights": list(self.weights),
            "contributions": [
                {"token": c.token, "bits": c.bits, "direction": c.direction}
                for c in self.ranked()
            ],
        }


def mixture(p1: Mapping[str, float], p2: Mapping[str, float], pi1: float, pi2: float) -> dict[str, float]:
    tokens = sorted(set(p1) | set(p2))
    return {t: pi1 * p1.get(t, 0.0) + pi2 * p2.get(t, 0.0) for t in tokens}


def _term(weight: float, p: float, m: float) -> float:
    return 0.0 if p == 0.0 or weight == 0.0 else weight * p * math.log2(p / m)


def jsd(p1, p2, weights: tuple[float, float] | None = None) -> DivergenceReport:
    """Weighted Jensen-Shannon divergence with its per-token decomposition.

    Default weights are the corpora's relative sizes (token totals). Each
    token's direction is the corpus where it is relatively more frequent.
    """
    if weights is None:
        n1, n2 = _mass(p1), _mass(p2)
        if n1 <= 0 or n2 <= 0:
            raise EmptyDistribution("both corpora must be non-empty")
        pi1 = n1 / (n1 + n2)
        pi2 = n2 / (n1 + n2)
    else:
        pi1, pi2 = (float(w) for w in weights)
        if pi1 < 0 or pi2 < 0 or abs(pi1 + pi2 - 1.0) > 1e-12:
            raise ValueError("weights must be non-negative and sum to 1")
    q1, q2 = _probabilities(p1), _probabilities(p2)
    m = mixture(q1, q2, pi1, pi2)

    contributions = {}
    for token, mi in m.items():
        a, b = q1.get(token, 0.0), q2.get(token, 0.0)
        bits = _term(pi1, a, mi) + _term(pi2, b, mi)
        direction = CORPUS_1 if a > b else CORPUS_2 if b > a else None
        contributions[token] = Contribution(token, bits, direction, a, b)
    total = math.fsum(c.bits for c in contributions.values())
    return DivergenceReport(total, (pi1, pi2), contributions, m)


def binary_entropy(pi1: float, pi2: float) -> float:
    """Upper bound of the weighted divergence: H(pi1, pi2)."""
    return shannon_entropy([pi1, pi2]) if pi1 > 0 and pi2 > 0 else 0.0
