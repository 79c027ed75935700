import itertools
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from statsmodels.stats.proportion import proportion_confint

import oracles
from conftest import rec
from crisislens.errors import BadInput, EmptyCommunity
from crisislens.netgraph import (
    CommunityPartition,
    HashtagGraph,
    InteractionGraph,
    build_interaction_graph,
    community_topic_shares,
    filter_topic_communities,
    louvain,
    modularity,
    topic_filter,
    wilson_lower_bound,
    z_for_confidence,
)


def two_cliques(a: int, b: int) -> HashtagGraph:
    g = HashtagGraph()
    left = [f"l{i}" for i in range(a)]
    right = [f"r{i}" for i in range(b)]
    for grp in (left, right):
        for u, v in itertools.combinations(grp, 2):
            g.add_edge(u, v)
    g.add_edge(left[0], right[0])
    return g


def dense(g) -> tuple[list[str], np.ndarray]:
    nodes, indptr, indices, weights = g.csr(undirected=True)
    adj = np.zeros((len(nodes), len(nodes)))
    for i in range(len(nodes)):
        for p in range(indptr[i], indptr[i + 1]):
            adj[i, indices[p]] += weights[p]
    return nodes, adj


class TestLouvain:
    def test_two_five_cliques(self):
        g = two_cliques(5, 5)
        part = louvain(g, seed=7)
        comms = sorted(sorted(m) for m in part.communities().values())
        assert comms == [[f"l{i}" for i in range(5)], [f"r{i}" for i in range(5)]]
        best, _ = oracles.exhaustive_modularity(dense(g)[1])
        assert part.modularity == pytest.approx(best, abs=1e-9)

    def test_single_clique(self):
        g = HashtagGraph()
        for u, v in itertools.combinations("abcde", 2):
            g.add_edge(u, v)
        assert len(louvain(g).communities()) == 1

    def test_every_node_assigned(self):
        g = two_cliques(4, 6)
        g.nodes.add("isolated")
        part = louvain(g, seed=3)
        assert set(part.assignment) == g.nodes
        assert sorted(set(part.assignment.values())) == list(range(len(part.communities())))

    def test_modularity_matches_networkx(self):
        g = two_cliques(4, 3)
        part = louvain(g, seed=1)
        ref = nx.Graph()
        ref.add_edges_from(g.edges)
        comms = [set(m) for m in part.communities().values()]
        assert part.modularity == pytest.approx(nx.community.modularity(ref, comms), abs=1e-12)
        assert modularity(g, part.assignment) == pytest.approx(part.modularity, abs=1e-12)

    def test_directed_graph_symmetrized_by_weight_sum(self):
        g = InteractionGraph()
        g.add_edge("a", "b", 2)
        g.add_edge("b", "a", 1)
        g.add_edge("b", "c")
        g.add_edge("c", "d", 3)
        ref = nx.Graph()
        ref.add_weighted_edges_from([("a", "b", 3), ("b", "c", 1), ("c", "d", 3)])
        part = louvain(g, seed=0)
        comms = [set(m) for m in part.communities().values()]
        assert part.modularity == pytest.approx(nx.community.modularity(ref, comms, weight="weight"), abs=1e-12)
        assert comms == [{"a", "b"}, {"c", "d"}]

    def test_edgeless(self):
        part = louvain(InteractionGraph(nodes={"a", "b"}))
        assert len(part.communities()) == 2 and part.modularity == 0.0

    def test_seed_determinism(self):
        g = build_interaction_graph(
            rec(author=f"u{i}", mentions=[f"u{(i * 13 + 5) % 37}", f"u{(i * 3) % 11}"]) for i in range(120)
        )
        runs = {tuple(sorted(louvain(g, seed=11).assignment.items())) for _ in range(5)}
        assert len(runs) == 1


@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9), st.integers(1, 3)), min_size=1, max_size=25), st.integers(0, 99))
@settings(max_examples=40, deadline=None)
def test_louvain_never_below_singletons(edges, seed):
    g = HashtagGraph()
    for a, b, w in edges:
        if a != b:
            g.add_edge(f"n{a}", f"n{b}", w)
    if not g.edges:
        return
    part = louvain(g, seed=seed)
    singletons = modularity(g, {v: i for i, v in enumerate(sorted(g.nodes))})
    assert part.modularity >= singletons - 1e-12
    assert -0.5 - 1e-12 <= part.modularity <= 1.0
    best, _ = oracles.exhaustive_modularity(dense(g)[1]) if g.n <= 8 else (None, None)
    if best is not None:
        assert part.modularity <= best + 1e-9


class TestWilson:
    def test_z99(self):
        assert z_for_confidence(0.99) == pytest.approx(2.5758, abs=1e-4)

    def test_z_zero_is_phat(self):
        assert wilson_lower_bound(37, 80, z=0.0) == 37 / 80

    def test_zero_successes_exactly_zero(self):
        # the unrationalized form leaves about 1.7e-18 here
        assert wilson_lower_bound(0, 983, z=4.989555445159992) == 0.0

    def test_all_successes_below_one(self):
        for n in (1, 5, 100, 10_000):
            assert wilson_lower_bound(n, n, 0.95) < 1.0

    def test_reference_value(self):
        value = wilson_lower_bound(50, 100, z=1.96)
        assert value == pytest.approx(0.4038, abs=5e-4)
        assert value == pytest.approx(oracles.wilson_direct(50, 100, 1.96), abs=1e-15)

    def test_matches_statsmodels(self):
        for k, n, conf in [(3, 10, 0.9), (50, 100, 0.95), (99, 100, 0.99), (0, 7, 0.99)]:
            lo, _ = proportion_confint(k, n, alpha=1 - conf, method="wilson")
            assert wilson_lower_bound(k, n, conf) == pytest.approx(lo, abs=1e-12)

    @pytest.mark.parametrize("k,n", [(-1, 5), (6, 5), (0, 0)])
    def test_bad_input(self, k, n):
        with pytest.raises(BadInput):
            wilson_lower_bound(k, n)

    def test_bad_confidence(self):
        with pytest.raises(BadInput):
            wilson_lower_bound(1, 2, 1.0)


@given(st.integers(1, 500), st.data(), st.floats(0.001, 5.0))
def test_wilson_below_phat(n, data, z):
    k = data.draw(st.integers(1, n - 1)) if n > 1 else 1
    if k >= n:
        return
    assert wilson_lower_bound(k, n, z=z) <= k / n


@given(st.integers(2, 300), st.data(), st.lists(st.floats(0.01, 0.999), min_size=2, max_size=2))
def test_wilson_decreasing_in_confidence(n, data, confs):
    k = data.draw(st.integers(1, n - 1))
    lo, hi = sorted(confs)
    assert wilson_lower_bound(k, n, hi) <= wilson_lower_bound(k, n, lo) + 1e-15


def three_communities(n=40, props=(0.9, 0.85, 0.1)):
    """Authors c{k}_i, each writing one record; the first share mention the topic."""
    records, assignment = [], {}
    g = InteractionGraph()
    for k, p in enumerate(props):
        hits = round(p * n)
        for i in range(n):
            author = f"c{k}_{i:02d}"
            assignment[author] = k
            text = "Crisis en Venezuela" if i < hits else "ayuda para la isla"
            records.append(rec(text, author=author))
            g.add_edge(author, f"c{k}_{(i + 1) % n:02d}")
    return g, CommunityPartition(assignment, 0.0), records


class TestTopicFilter:
    def test_hand_computed_bound(self):
        g, part, records = three_communities()
        res = topic_filter(g, part, 0, ["venezuela"], 0.99, records)
        # 36/40 at z(0.99): frozen from the direct formula evaluation
        assert res.threshold == pytest.approx(oracles.wilson_direct(36, 40, z_for_confidence(0.99)), abs=1e-15)
        assert res.threshold == pytest.approx(0.71643, abs=1e-5)
        assert res.removed == [0, 1]
        assert res.graph.nodes == part.members(2)

    def test_both_fully_on_topic_removed(self):
        g, part, records = three_communities(10, (1.0, 1.0, 0.0))
        out = filter_topic_communities(g, part, 0, ["venezuela"], 0.99, records)
        assert out.nodes == part.members(2)

    def test_community_without_records_kept(self):
        g, part, records = three_communities(10, (1.0, 0.5, 0.0))
        part.assignment["silent"] = 3
        g.add_edge("silent", "c2_00")
        res = topic_filter(g, part, 0, ["venezuela"], 0.99, records)
        assert "silent" in res.graph.nodes
        assert res.shares[3].proportion is None

    def test_empty_reference(self):
        g, part, records = three_communities(5)
        part.assignment["ghost"] = 9
        with pytest.raises(EmptyCommunity):
            topic_filter(g, part, 9, ["venezuela"], 0.99, records)

    def test_shares_count_member_records(self):
        _, part, records = three_communities(10, (0.5, 0.0, 1.0))
        shares = community_topic_shares(part, ["VENEZUELA"], records)
        assert [(s.matches, s.records) for s in shares.values()] == [(5, 10), (0, 10), (10, 10)]


def test_wilson_random_triples_against_direct_formula():
    rng = random.Random(5)
    for _ in range(1000):
        n = rng.randint(1, 1000)
        k = rng.randint(0, n)
        z = rng.uniform(0.01, 4.0)
        assert wilson_lower_bound(k, n, z=z) == pytest.approx(oracles.wilson_direct(k, n, z), abs=1e-12)
