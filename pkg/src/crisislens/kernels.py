"""Hot graph loops: all-pairs BFS totals and the Louvain local-moving phase.

Each kernel has a loop implementation compiled by numba and a numpy
implementation used when numba is switched off (see ``_accel``). The two
paths follow the same visiting order and tie rules and produce identical
results.

Graphs are passed as CSR arrays: ``indptr`` (n+1,), ``indices`` (nnz,) and,
for Louvain, float64 ``weights`` (nnz,).
"""
from __future__ import annotations

import numpy as np

from ._accel import USE_NUMBA, njit

# ---------------------------------------------------------------- shortest paths


@njit
def _bfs_totals_loop(indptr, indices, n):
    dist = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    total = 0
    pairs = 0
    for s in range(n):
        dist[:] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u] + 1
            for p in range(indptr[u], indptr[u + 1]):
                v = indices[p]
                if dist[v] < 0:
                    dist[v] = du
                    queue[tail] = v
                    tail += 1
                    total += du
                    pairs += 1
    return total, pairs


def _bfs_totals_numpy(indptr, indices, n):
    degree = np.diff(indptr)
    total = 0
    pairs = 0
    for s in range(n):
        visited = np.zeros(n, dtype=bool)
        visited[s] = True
        frontier = np.array([s], dtype=np.int64)
        depth = 0
        while frontier.size:
            depth += 1
            counts = degree[frontier]
            width = int(counts.sum())
            if width == 0:
                break
            starts = indptr[frontier]
            offsets = np.repeat(starts - np.cumsum(counts) + counts, counts) + np.arange(width)
            nxt = np.unique(indices[offsets])
            nxt = nxt[~visited[nxt]]
            visited[nxt] = True
            total += depth * nxt.size
            pairs += nxt.size
            frontier = nxt
    return total, pairs


def path_length_totals(indptr: np.ndarray, indices: np.ndarray, n: int) -> tuple[int, int]:
    """Sum of hop distances over reachable ordered pairs (s != t), and the pair count."""
    indptr = np.ascontiguousarray(indptr, dtype=np.int64)
    indices = np.ascontiguousarray(indices, dtype=np.int64)
    if USE_NUMBA:
        total, pairs = _bfs_totals_loop(indptr, indices, n)
    else:
        total, pairs = _bfs_totals_numpy(indptr, indices, n)
    return int(total), int(pairs)


# ---------------------------------------------------------------- louvain


@njit
def _move_nodes_loop(indptr, indices, weights, degree, order, comm, tot, m2, threshold):
    n = degree.shape[0]
    kin = np.zeros(n, np.float64)
    seen = np.zeros(n, np.bool_)
    touched = np.empty(n, np.int64)
    moves = 0
    for i in order:
        ki = degree[i]
        ci = comm[i]
        ntouched = 0
        for p in range(indptr[i], indptr[i + 1]):
            j = indices[p]
            if j == i:
                continue
            c = comm[j]
            if not seen[c]:
                seen[c] = True
                touched[ntouched] = c
                ntouched += 1
            kin[c] += weights[p]
        tot[ci] -= ki
        best = ci
        best_gain = kin[ci] - tot[ci] * ki / m2
        cand = np.sort(touched[:ntouched])
        for idx in range(ntouched):
            c = cand[idx]
            if c == ci:
                continue
            gain = kin[c] - tot[c] * ki / m2
            if gain - best_gain > threshold:
                best = c
                best_gain = gain
        for idx in range(ntouched):
            c = touched[idx]
            kin[c] = 0.0
            seen[c] = False
        comm[i] = best
        tot[best] += ki
        if best != ci:
            moves += 1
    return moves


def _move_nodes_numpy(indptr, indices, weights, degree, order, comm, tot, m2, threshold):
    moves = 0
    for i in order:
        ki = degree[i]
        ci = comm[i]
        lo, hi = indptr[i], indptr[i + 1]
        nbrs = indices[lo:hi]
        w = weights[lo:hi]
        keep = nbrs != i
        cs = comm[nbrs[keep]]
        tot[ci] -= ki
        if cs.size:
            cand, inverse = np.unique(cs, return_inverse=True)
            kin = np.bincount(inverse, weights=w[keep])
            gains = kin - tot[cand] * ki / m2
            own = np.searchsorted(cand, ci)
            own_hit = own < cand.size and cand[own] == ci
            best, best_gain = ci, (gains[own] if own_hit else 0.0 - tot[ci] * ki / m2)
            for c, g in zip(cand.tolist(), gains.tolist()):
                if c != ci and g - best_gain > threshold:
                    best, best_gain = c, g
        else:
            best = ci
        comm[i] = best
        tot[best] += ki
        if best != ci:
            moves += 1
    return moves


def move_nodes(indptr, indices, weights, degree, order, comm, tot, m2, threshold) -> int:
    """One sweep of single-node moves in ``order``; updates ``comm``/``tot`` in place.

    A node joins the neighbouring community with the largest modularity gain
    when that gain beats staying put by more than ``threshold`` (in edge
    weight units). Candidates are scanned in ascending community id, so near
    ties resolve to the smaller id.
    """
    if USE_NUMBA:
        return int(_move_nodes_loop(indptr, indices, weights, degree, order, comm, tot, m2, threshold))
    return _move_nodes_numpy(indptr, indices, weights, degree, order, comm, tot, m2, threshold)
