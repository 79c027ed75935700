"""Wilson-bound removal of off-topic communities."""
from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Iterable

from .._text import contains_any, fold
from ..errors import BadInput, EmptyCommunity
from ..ingest import TweetRecord
from .graphs import InteractionGraph
from .louvain import CommunityPartition


def z_for_confidence(confidence: float) -> float:
    """Two-sided standard-normal quantile, e.g. 0.99 -> 2.5758."""
    if not 0.0 <= confidence < 1.0:
        raise BadInput(f"confidence must be in [0, 1), got {confidence}")
    return NormalDist().inv_cdf((1.0 + confidence) / 2.0)


def wilson_lower_bound(successes: int, trials: int, confidence: float | None = 0.99, *, z: float | None = None) -> float:
    """Lower end of the Wilson score interval for ``successes / trials``.

    Pass ``z`` directly to bypass the confidence-to-quantile conversion.
    """
    if trials < 1 or successes < 0 or successes > trials:
        raise BadInput(f"need 0 <= k <= n and n >= 1, got k={successes}, n={trials}")
    if z is None:
        if confidence is None:
            raise BadInput("give either confidence or z")
        z = z_for_confidence(confidence)
    if z < 0:
        raise BadInput("z must be non-negative")
    n = trials
    p = successes / n
    z2 = z * z
    centre = p + z2 / (2 * n)
    margin = z * math.sqrt(p * (1 - p) / n + z2 / (4 * n * n))
    if p == 0.0:
        return 0.0
    # (centre - margin) / (1 + z2/n) rationalized: equals p^2 / (centre + margin)
    # without the cancellation that leaves tiny positives at k=0; p/s <= 1 keeps it <= p
    return p * (p / (centre + margin))


@dataclass(frozen=True)
class CommunityShare:
    community: int
    matches: int
    records: int

    @property
    def proportion(self) -> float | None:
        return self.matches / self.records if self.records else None


def community_topic_shares(
    partition: CommunityPartition,
    terms: Iterable[str],
    records: Iterable[TweetRecord],
) -> dict[int, CommunityShare]:
    """Per community: how many member-authored records mention any term."""
    keys = tuple(fold(t) for t in terms)
    matches: dict[int, int] = {c: 0 for c in partition.communities()}
    totals: dict[int, int] = dict(matches)
    for r in records:
        c = partition.assignment.get(r.author)
        if c is None:
            continue
        totals[c] += 1
        if contains_any(fold(r.text), keys):
            matches[c] += 1
    return {c: CommunityShare(c, matches[c], totals[c]) for c in sorted(totals)}


@dataclass
class TopicFilterResult:
    graph: InteractionGraph
    threshold: float | None
    shares: dict[int, CommunityShare]
    removed: list[int]


def topic_filter(
    g: InteractionGraph,
    partition: CommunityPartition,
    reference_community: int,
    terms: Iterable[str],
    confidence: float,
    records: Iterable[TweetRecord],
) -> TopicFilterResult:
    terms = list(terms)
    shares = community_topic_shares(partition, terms, records)
    ref = shares.get(reference_community)
    if ref is None or ref.records == 0:
        raise EmptyCommunity(f"reference community {reference_community} has no records")
    threshold = wilson_lower_bound(ref.matches, ref.records, confidence)
    removed = [
        c for c, s in shares.items()
        if s.proportion is not None and s.proportion >= threshold
    ]
    dropped = set().union(*(partition.members(c) for c in removed)) if removed else set()
    return TopicFilterResult(g.subgraph(g.nodes - dropped), threshold, shares, removed)


def filter_topic_communities(
    g: InteractionGraph,
    partition: CommunityPartition,
    reference_community: int,
    terms: Iterable[str],
    confidence: float,
    records: Iterable[TweetRecord],
) -> InteractionGraph:
    """Remove every community at least as on-topic as the reference's Wilson lower bound.

    Proportions are over records authored by community members. The
    reference community always clears its own bound and is removed too;
    communities without records are kept.
    """
    return topic_filter(g, partition, reference_community, terms, confidence, records).graph
