"""Time the graph kernels under numba and under the pure-numpy fallback.

Each backend runs in its own interpreter because the switch is read at import:

    python3 benchmarks/bench_kernels.py [--nodes 2011 5000] [--repeat 5]

The first call in each child (JIT compile, or cache load) is reported apart
from the steady-state best-of-N timings.
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

EDGES_PER_NODE = 2466 / 2011  # sparsity of the reference retweet/mention graph


def build_graph(n: int, seed: int):
    from crisislens.netgraph import InteractionGraph

    rng = np.random.default_rng(seed)
    g = InteractionGraph()
    names = [f"u{i}" for i in range(n)]
    g.nodes.update(names)
    # preferential targets give the hub-heavy in-degree seen in crisis archives
    targets = rng.zipf(1.6, size=4 * n) % n
    sources = rng.integers(0, n, size=4 * n)
    want = int(EDGES_PER_NODE * n)
    for a, b in zip(sources, targets):
        if g.m >= want:
            break
        if a != b:
            g.add_edge(names[a], names[b], int(rng.integers(1, 4)))
    return g


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def child(sizes: list[int], repeat: int) -> None:
    from crisislens import kernels
    from crisislens._accel import backend
    from crisislens.netgraph import louvain

    rows = []
    for n in sizes:
        g = build_graph(n, seed=n)
        _, indptr, indices, _ = g.csr()
        t0 = time.perf_counter()
        kernels.path_length_totals(indptr, indices, len(g.nodes))
        first_bfs = time.perf_counter() - t0
        t0 = time.perf_counter()
        louvain(g, seed=1)
        first_louvain = time.perf_counter() - t0
        rows.append({
            "backend": backend(),
            "nodes": len(g.nodes),
            "edges": g.m,
            "bfs_first": first_bfs,
            "bfs": best_of(lambda: kernels.path_length_totals(indptr, indices, len(g.nodes)), repeat),
            "louvain_first": first_louvain,
            "louvain": best_of(lambda: louvain(g, seed=1), repeat),
        })
    json.dump(rows, sys.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, nargs="+", default=[2011, 5000])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args(argv)
    if args.child:
        child(args.nodes, args.repeat)
        return 0

    results = {}
    for flag in ("1", "0"):
        env = dict(os.environ, CRISISLENS_NUMBA=flag)
        cmd = [sys.executable, __file__, "--child", "--repeat", str(args.repeat), "--nodes", *map(str, args.nodes)]
        out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
        for row in json.loads(out.stdout):
            results[(row["backend"], row["nodes"])] = row

    print(f"{'kernel':<10}{'nodes':>7}{'edges':>7}{'numba ms':>11}{'numpy ms':>11}{'speedup':>9}{'numba 1st ms':>14}")
    for n in sorted({k[1] for k in results}):
        a, b = results.get(("numba", n)), results.get(("numpy", n))
        if a is None or b is None:
            continue
        for kernel in ("bfs", "louvain"):
            print(
                f"{kernel:<10}{n:>7}{a['edges']:>7}{a[kernel] * 1e3:>11.2f}{b[kernel] * 1e3:>11.2f}"
                f"{b[kernel] / a[kernel]:>8.1f}x{a[kernel + '_first'] * 1e3:>14.1f}"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
