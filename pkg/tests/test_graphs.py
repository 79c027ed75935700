import warnings
from datetime import date

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rec
from crisislens.errors import BadInput, EgoAbsent, NoReachablePairs, TooSmall
from crisislens.netgraph import (
    AccountLabel,
    HashtagGraph,
    InteractionGraph,
    avg_shortest_path,
    build_hashtag_network,
    build_interaction_graph,
    connected_components,
    daily_ego_networks,
    daily_top50_table,
    density,
    density_value,
    drop_ego_lcc,
    ego_network,
    in_degree_distribution,
    parse_labels,
    slice_graph,
    slice_records,
    superimpose,
    top_accounts,
)


def digraph(*edges):
    g = InteractionGraph()
    for s, t in edges:
        g.add_edge(s, t)
    return g


def tags(*edges):
    g = HashtagGraph()
    for a, b in edges:
        g.add_edge(a, b)
    return g


class TestInteractionGraph:
    def test_distinct_target_per_record(self):
        g = build_interaction_graph([rec("@b hola @b", author="a", mentions=["b"])])
        assert g.edges == {("a", "b"): 1}

    def test_self_retweet_has_no_edge(self):
        g = build_interaction_graph([rec(author="a", retweet_of="a", mentions=["a"])])
        assert g.edges == {} and g.nodes == {"a"}

    def test_mention_plus_retweet_of_same_user(self):
        g = build_interaction_graph([rec(author="a", retweet_of="b", mentions=["b", "c"])])
        assert g.edges == {("a", "b"): 1, ("a", "c"): 1}

    def test_weights_accumulate_and_record_ids(self):
        g = build_interaction_graph([rec(author="a", mentions=["b"], id="1"), rec(author="a", mentions=["b"], id="2")])
        assert g.edges[("a", "b")] == 2
        assert g.edge_records[("a", "b")] == ["1", "2"]
        assert (g.n, g.m, g.total_weight) == (2, 1, 2)


class TestHashtagGraph:
    def test_three_tags(self):
        g = build_hashtag_network([rec(hashtags=["a", "b", "c"])])
        assert g.edges == {("a", "b"): 1, ("a", "c"): 1, ("b", "c"): 1}

    def test_single_tag(self):
        assert build_hashtag_network([rec(hashtags=["a"])]).edges == {}

    def test_day_filter(self):
        records = [rec(hashtags=["a", "b"], day="2017-09-20"), rec(hashtags=["c", "d"], day="2017-09-21")]
        assert set(build_hashtag_network(records, date(2017, 9, 21)).edges) == {("c", "d")}

    def test_keys_sorted(self):
        g = tags(("z", "a"))
        assert g.edges == {("a", "z"): 1}
        g.add_edge("q", "q")
        assert ("q", "q") not in g.edges


class TestEgo:
    def test_star(self):
        g = tags(("ego", "a"), ("ego", "b"), ("x", "y"))
        e = ego_network(g, "ego")
        assert e.nodes == {"ego", "a", "b"} and len(e.edges) == 2

    def test_triangle_is_induced(self):
        g = tags(("ego", "a"), ("ego", "b"), ("a", "b"), ("b", "far"))
        e = ego_network(g, "ego")
        assert set(e.edges) == {("a", "ego"), ("b", "ego"), ("a", "b")}
        assert "far" not in e.nodes

    def test_absent(self):
        with pytest.raises(EgoAbsent):
            ego_network(tags(("a", "b")), "ego")
        with pytest.raises(EgoAbsent):
            drop_ego_lcc(tags(("a", "b")), "ego")

    def test_drop_pure_star(self):
        out = drop_ego_lcc(tags(("ego", "b"), ("ego", "a")), "ego")
        assert out.nodes == {"a"} and out.edges == {}

    def test_drop_two_triangles_tie(self):
        g = tags(("ego", "c"), ("ego", "d"), ("c", "d"), ("ego", "a"), ("ego", "b"), ("a", "b"))
        assert drop_ego_lcc(g, "ego").nodes == {"a", "b"}

    def test_drop_picks_largest(self):
        g = tags(("ego", "a"), ("a", "b"), ("b", "c"), ("c", "d"), ("ego", "x"), ("x", "y"))
        assert drop_ego_lcc(g, "ego").nodes == {"a", "b", "c", "d"}

    def test_drop_tie_by_weight(self):
        g = tags(("ego", "a"), ("a", "b"), ("ego", "x"), ("x", "y"), ("x", "y"))
        assert drop_ego_lcc(g, "ego").nodes == {"x", "y"}

    def test_daily_superimposed(self):
        records = [
            rec(hashtags=["puertorico", "maria"], day="2017-09-20"),
            rec(hashtags=["maria", "fema"], day="2017-09-20"),
            rec(hashtags=["puertorico", "maria"], day="2017-09-21"),
            rec(hashtags=["otro", "tema"], day="2017-09-21"),
        ]
        daily = daily_ego_networks(records, "puertorico")
        assert list(daily) == [date(2017, 9, 20), date(2017, 9, 21)]
        g = superimpose(daily.values())
        assert g.edges == {("maria", "puertorico"): 2}


pairs = st.lists(st.tuples(st.sampled_from("abcdefg"), st.sampled_from("abcdefg")), max_size=20)


@given(pairs)
def test_ego_is_induced_and_lcc_connected(edges):
    g = tags(*edges, ("ego", "a"))
    e = ego_network(g, "ego")
    assert all(a in e.nodes and b in e.nodes for a, b in e.edges)
    inner = g.subgraph(e.nodes)
    assert e.edges == inner.edges
    lcc = drop_ego_lcc(g, "ego")
    assert len(connected_components(lcc)) == 1
    assert "ego" not in lcc.nodes


class TestDensity:
    def test_reference_scale(self):
        assert density_value(2011, 2466) == pytest.approx(6.1e-4, abs=1e-5)

    def test_complete(self):
        g = digraph(*[(a, b) for a in "xyz" for b in "xyz" if a != b])
        assert density(g) == 1.0

    def test_edgeless(self):
        g = InteractionGraph(nodes={"a", "b"})
        assert density(g) == 0.0

    def test_weights_ignored(self):
        assert density(digraph(("a", "b"), ("a", "b"))) == 0.5

    def test_too_small(self):
        with pytest.raises(TooSmall):
            density(InteractionGraph(nodes={"a"}))


class TestPaths:
    def test_two_cycle(self):
        assert avg_shortest_path(digraph(("a", "b"), ("b", "a"))) == 1.0

    def test_path(self):
        g = digraph(("a", "b"), ("b", "c"))
        assert avg_shortest_path(g) == pytest.approx(4 / 3, abs=1e-15)
        assert avg_shortest_path(g, "literal") == pytest.approx(4 / 6, abs=1e-15)
        assert avg_shortest_path(g, "undirected") == pytest.approx(8 / 6, abs=1e-15)

    def test_no_pairs(self):
        with pytest.raises(NoReachablePairs):
            avg_shortest_path(InteractionGraph(nodes={"a", "b"}))

    def test_bad_mode(self):
        with pytest.raises(BadInput):
            avg_shortest_path(digraph(("a", "b")), "diameter")


def nx_reachable_mean(g: nx.DiGraph) -> float:
    lengths = [d for s, row in nx.all_pairs_shortest_path_length(g) for t, d in row.items() if s != t]
    return sum(lengths) / len(lengths)


@given(st.lists(st.tuples(st.integers(0, 14), st.integers(0, 14)), min_size=1, max_size=40))
@settings(max_examples=60)
def test_paths_match_networkx(edges):
    edges = [(f"n{a}", f"n{b}") for a, b in edges if a != b]
    if not edges:
        return
    g = digraph(*edges)
    ref = nx.DiGraph(edges)
    assert avg_shortest_path(g) == pytest.approx(nx_reachable_mean(ref), abs=1e-12)
    assert avg_shortest_path(g, "undirected") == pytest.approx(nx_reachable_mean(ref.to_undirected().to_directed()), abs=1e-12)
    assert density(g) == pytest.approx(nx.density(ref), abs=1e-15)
    assert avg_shortest_path(g) >= 1.0


@given(st.lists(st.tuples(st.sampled_from("abcdef"), st.sampled_from("abcdef")), max_size=30))
def test_degree_sums(edges):
    g = digraph(*[(a, b) for a, b in edges if a != b])
    indeg, outdeg = g.in_degrees(weighted=False), g.out_degrees(weighted=False)
    assert sum(indeg.values()) == sum(outdeg.values()) == g.m
    assert sum(g.in_degrees().values()) == g.total_weight
    if g.n >= 2:
        assert 0.0 <= density(g) <= 1.0


class TestInDegree:
    def test_star(self):
        g = digraph(*[(s, "hub") for s in "abcde"])
        assert g.in_degrees()["hub"] == 5
        assert in_degree_distribution(g) == {0: 5, 5: 1}

    def test_weighted_vs_distinct(self):
        g = build_interaction_graph([rec(author="a", mentions=["b"]), rec(author="a", mentions=["b"])])
        assert in_degree_distribution(g, weighted=True) == {0: 1, 2: 1}
        assert in_degree_distribution(g, weighted=False) == {0: 1, 1: 1}


class TestEvolution:
    def test_labels(self):
        labels = parse_labels("handle,type\n@FEMA,agency\nelnuevodia,news outlet\n")
        assert labels == [AccountLabel("fema", "agency"), AccountLabel("elnuevodia", "news outlet")]
        with pytest.raises(BadInput):
            parse_labels("x,astronaut\n")

    def test_single_account(self):
        records = [rec(author=u, mentions=["fema"], day="2017-09-21") for u in "abc"]
        table = daily_top50_table(records, [AccountLabel("fema", "agency")], 1)
        assert table.by_type[date(2017, 9, 21)] == {"agency": 3}

    def test_unlabeled_warns(self):
        records = [rec(author="a", mentions=["x"])]
        with pytest.warns(UserWarning, match="unlabeled"):
            table = daily_top50_table(records, [])
        assert table.account_types["x"] == "citizen"

    def test_type_sums_equal_daily_top_in_degree(self):
        records = [
            rec(author="a", mentions=["fema", "b"], day="2017-09-20"),
            rec(author="b", retweet_of="fema", day="2017-09-21"),
            rec(author="c", mentions=["b"], day="2017-09-21"),
            rec(author="fema", mentions=["c"], day="2017-09-22"),
        ]
        labels = [AccountLabel("fema", "agency"), AccountLabel("b", "journalist"), AccountLabel("c", "citizen")]
        table = daily_top50_table(records, labels, k=2)
        assert table.accounts == ["b", "fema"]
        for day in table.days:
            assert sum(table.by_type[day].values()) == sum(table.by_account[day].values())
            direct = build_interaction_graph(r for r in records if r.day == day).in_degrees()
            assert table.by_account[day] == {h: direct.get(h, 0) for h in table.accounts}

    def test_top_accounts_ties_by_handle(self):
        records = [rec(author="a", mentions=["z"]), rec(author="a", mentions=["m"])]
        assert top_accounts(records, 2) == ["m", "z"]

    def test_slice_matches_direct_construction(self):
        records = [rec(author=f"u{i}", mentions=[f"u{(i * 7) % 5}"], day=f"2017-09-{16 + i % 8:02d}") for i in range(40)]
        start, end = date(2017, 9, 18), date(2017, 9, 20)
        g = slice_graph(records, start, end)
        ref = build_interaction_graph([r for r in records if start <= r.day <= end])
        assert (g.n, g.m) == (ref.n, ref.m)
        assert len(slice_records(records, start, end)) == 15


def test_no_warning_when_all_labeled():
    records = [rec(author="a", mentions=["fema"])]
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        daily_top50_table(records, [AccountLabel("fema", "agency")], 1)
