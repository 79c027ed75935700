from __future__ import annotations

from collections import Counter

from ..errors import BadInput, NoReachablePairs, TooSmall
from ..kernels import path_length_totals

PATH_MODES = ("reachable", "undirected", "literal")


def density_value(n: int, m: int) -> float:
    """``m / (n (n - 1))`` for n nodes and m distinct directed links."""
    if n < 2:
        raise TooSmall(f"density needs at least 2 nodes, got {n}")
    return m / (n * (n - 1))


def density(g) -> float:
    """Fraction of ordered node pairs joined by at least one link; weights ignored."""
    return density_value(g.n, g.m)


def avg_shortest_path(g, mode: str = "reachable") -> float:
    """Mean hop distance over ordered pairs.

    ``reachable`` averages over pairs with a directed path, ``undirected``
    does the same after dropping edge direction, and ``literal`` divides the
    reachable distance sum by all n(n-1) ordered pairs.
    """
    if mode not in PATH_MODES:
        raise BadInput(f"unknown path mode {mode!r}; choose from {PATH_MODES}")
    n = g.n
    if n < 2:
        raise TooSmall(f"path length needs at least 2 nodes, got {n}")
    _, indptr, indices, _ = g.csr(undirected=(mode == "undirected") or not getattr(g, "directed", True))
    total, pairs = path_length_totals(indptr, indices, n)
    if mode == "literal":
        return total / (n * (n - 1))
    if pairs == 0:
        raise NoReachablePairs("no ordered pair of distinct nodes is connected")
    return total / pairs


def in_degree_distribution(g, weighted: bool = True) -> dict[int, int]:
    """Histogram degree -> number of nodes, including degree 0, sorted by degree."""
    hist = Counter(g.in_degrees(weighted).values())
    return dict(sorted(hist.items()))


def summary(g, path_mode: str = "reachable") -> dict:
    out = {
        "n": g.n,
        "m": g.m,
        "total_weight": g.total_weight,
        "density": density(g) if g.n >= 2 else None,
        "path_mode": path_mode,
    }
    try:
        out["avg_shortest_path"] = avg_shortest_path(g, path_mode)
    except (TooSmall, NoReachablePairs):
        out["avg_shortest_path"] = None
    out["in_degree_histogram"] = [
        {"degree": d, "nodes": c} for d, c in in_degree_distribution(g, weighted=True).items()
    ]
    return out
