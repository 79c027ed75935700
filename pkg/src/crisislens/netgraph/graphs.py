"""Interaction and hashtag graph types and their construction."""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from datetime import date
from typing import Iterable

import numpy as np

from ..errors import EgoAbsent
from ..ingest import TweetRecord


def _csr(n: int, rows: np.ndarray, cols: np.ndarray, weights: np.ndarray):
    """CSR arrays with entries sorted by (row, col); duplicate entries are summed."""
    if rows.size == 0:
        return np.zeros(n + 1, np.int64), np.zeros(0, np.int64), np.zeros(0, np.float64)
    keys = rows.astype(np.int64) * n + cols.astype(np.int64)
    uniq, inverse = np.unique(keys, return_inverse=True)
    summed = np.bincount(inverse, weights=weights.astype(np.float64))
    r, c = np.divmod(uniq, n)
    indptr = np.zeros(n + 1, np.int64)
    np.cumsum(np.bincount(r, minlength=n), out=indptr[1:])
    return indptr, c.astype(np.int64), summed


@dataclass
class InteractionGraph:
    """Directed user graph; edge weight is the number of records linking the pair."""

    nodes: set[str] = field(default_factory=set)
    edges: dict[tuple[str, str], int] = field(default_factory=dict)
    edge_records: dict[tuple[str, str], list[str]] = field(default_factory=dict)

    directed = True

    def add_edge(self, source: str, target: str, weight: int = 1, record_id: str | None = None):
        if source == target:
            return
        self.nodes.add(source)
        self.nodes.add(target)
        key = (source, target)
        self.edges[key] = self.edges.get(key, 0) + weight
        if record_id is not None:
            self.edge_records.setdefault(key, []).append(record_id)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        """Distinct directed links, regardless of weight."""
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        return sum(self.edges.values())

    def sorted_nodes(self) -> list[str]:
        return sorted(self.nodes)

    def in_degrees(self, weighted: bool = True) -> dict[str, int]:
        deg = dict.fromkeys(self.nodes, 0)
        for (_, t), w in self.edges.items():
            deg[t] += w if weighted else 1
        return deg

    def out_degrees(self, weighted: bool = True) -> dict[str, int]:
        deg = dict.fromkeys(self.nodes, 0)
        for (s, _), w in self.edges.items():
            deg[s] += w if weighted else 1
        return deg

    def subgraph(self, keep: Iterable[str]) -> "InteractionGraph":
        keep = set(keep) & self.nodes
        g = InteractionGraph(set(keep))
        for (s, t), w in self.edges.items():
            if s in keep and t in keep:
                g.edges[(s, t)] = w
                if (s, t) in self.edge_records:
                    g.edge_records[(s, t)] = list(self.edge_records[(s, t)])
        return g

    def csr(self, undirected: bool = False):
        """(node list, indptr, indices, weights) with nodes in sorted order."""
        nodes = self.sorted_nodes()
        index = {v: i for i, v in enumerate(nodes)}
        rows = np.fromiter((index[s] for s, _ in self.edges), np.int64, len(self.edges))
        cols = np.fromiter((index[t] for _, t in self.edges), np.int64, len(self.edges))
        w = np.fromiter(self.edges.values(), np.float64, len(self.edges))
        if undirected:
            rows, cols, w = np.concatenate([rows, cols]), np.concatenate([cols, rows]), np.concatenate([w, w])
        return (nodes, *_csr(len(nodes), rows, cols, w))


@dataclass
class HashtagGraph:
    """Undirected co-occurrence graph; edge keys are sorted (a, b) pairs with a < b."""

    nodes: set[str] = field(default_factory=set)
    edges: dict[tuple[str, str], int] = field(default_factory=dict)

    directed = False

    @staticmethod
    def key(a: str, b: str) -> tuple[str, str]:
        return (a, b) if a < b else (b, a)

    def add_edge(self, a: str, b: str, weight: int = 1):
        if a == b:
            return
        self.nodes.add(a)
        self.nodes.add(b)
        k = self.key(a, b)
        self.edges[k] = self.edges.get(k, 0) + weight

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        return sum(self.edges.values())

    def sorted_nodes(self) -> list[str]:
        return sorted(self.nodes)

    def neighbors(self, node: str) -> set[str]:
        out = set()
        for a, b in self.edges:
            if a == node:
                out.add(b)
            elif b == node:
                out.add(a)
        return out

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.nodes}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def degrees(self, weighted: bool = True) -> dict[str, int]:
        deg = dict.fromkeys(self.nodes, 0)
        for (a, b), w in self.edges.items():
            deg[a] += w if weighted else 1
            deg[b] += w if weighted else 1
        return deg

    def in_degrees(self, weighted: bool = True) -> dict[str, int]:
        return self.degrees(weighted)

    def subgraph(self, keep: Iterable[str]) -> "HashtagGraph":
        keep = set(keep) & self.nodes
        return HashtagGraph(
            set(keep),
            {(a, b): w for (a, b), w in self.edges.items() if a in keep and b in keep},
        )

    def __add__(self, other: "HashtagGraph") -> "HashtagGraph":
        g = HashtagGraph(self.nodes | other.nodes, dict(self.edges))
        for k, w in other.edges.items():
            g.edges[k] = g.edges.get(k, 0) + w
        return g

    def csr(self, undirected: bool = True):
        nodes = self.sorted_nodes()
        index = {v: i for i, v in enumerate(nodes)}
        rows = np.fromiter((index[a] for a, _ in self.edges), np.int64, len(self.edges))
        cols = np.fromiter((index[b] for _, b in self.edges), np.int64, len(self.edges))
        w = np.fromiter(self.edges.values(), np.float64, len(self.edges))
        return (
            nodes,
            *_csr(len(nodes), np.concatenate([rows, cols]), np.concatenate([cols, rows]), np.concatenate([w, w])),
        )


def build_interaction_graph(records: Iterable[TweetRecord]) -> InteractionGraph:
    """One weight unit per (record, distinct target); authors are always nodes."""
    g = InteractionGraph()
    for r in records:
        g.nodes.add(r.author)
        for target in r.targets:
            g.add_edge(r.author, target, 1, r.id)
    return g


def build_hashtag_network(records: Iterable[TweetRecord], day: date | None = None) -> HashtagGraph:
    """Co-occurrence graph of records carrying two or more distinct hashtags."""
    g = HashtagGraph()
    for r in records:
        if day is not None and r.day != day:
            continue
        tags = sorted(set(r.hashtags))
        for a, b in itertools.combinations(tags, 2):
            g.add_edge(a, b)
    return g


def ego_network(g: HashtagGraph, ego: str) -> HashtagGraph:
    """Induced subgraph on the ego and its neighbours."""
    if ego not in g.nodes:
        raise EgoAbsent(f"#{ego} is not in the graph")
    return g.subgraph(g.neighbors(ego) | {ego})


def daily_ego_networks(records: Iterable[TweetRecord], ego: str) -> dict[date, HashtagGraph]:
    by_day: dict[date, list[TweetRecord]] = defaultdict(list)
    for r in records:
        by_day[r.day].append(r)
    out = {}
    for day in sorted(by_day):
        g = build_hashtag_network(by_day[day])
        if ego in g.nodes:
            out[day] = ego_network(g, ego)
    return out


def superimpose(graphs: Iterable[HashtagGraph]) -> HashtagGraph:
    total = HashtagGraph()
    for g in graphs:
        total = total + g
    return total


def connected_components(g: HashtagGraph) -> list[set[str]]:
    adj = g.adjacency()
    seen: set[str] = set()
    comps = []
    for start in sorted(adj):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    comp.add(v)
                    stack.append(v)
        comps.append(comp)
    return comps


def drop_ego_lcc(g: HashtagGraph, ego: str) -> HashtagGraph:
    """Remove the ego and keep the largest remaining connected component.

    Ties on node count go to the component with more total edge weight, then
    to the one holding the lexicographically smallest tag.
    """
    if ego not in g.nodes:
        raise EgoAbsent(f"#{ego} is not in the graph")
    rest = g.subgraph(g.nodes - {ego})
    comps = connected_components(rest)
    if not comps:
        return HashtagGraph()

    def weight(comp):
        return sum(w for (a, b), w in rest.edges.items() if a in comp)

    best = min(comps, key=lambda c: (-len(c), -weight(c), min(c)))
    return rest.subgraph(best)


def slice_records(records: Iterable[TweetRecord], start: date | None = None, end: date | None = None) -> list[TweetRecord]:
    return [r for r in records if (start is None or r.day >= start) and (end is None or r.day <= end)]


def slice_graph(records: Iterable[TweetRecord], start: date | None = None, end: date | None = None) -> InteractionGraph:
    """Interaction graph of the records falling in an inclusive UTC date window."""
    return build_interaction_graph(slice_records(records, start, end))
