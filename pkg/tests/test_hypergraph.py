import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hotnav.hypergraph import HoT, Hyperedge, ParseError, UnknownNodeError, ValidationError

from oracles import floyd_warshall, pairwise_adjacency


def make_hot(edge_lists, extra_nodes=()):
    nodes = {n: f"text {n}" for edge in edge_lists for n in edge}
    nodes.update({n: f"text {n}" for n in extra_nodes})
    edges = {f"e{i}": Hyperedge(f"label {i}", members) for i, members in enumerate(edge_lists)}
    return HoT(nodes, edges)


@st.composite
def random_hots(draw, max_nodes=12, max_edges=8):
    n = draw(st.integers(min_value=1, max_value=max_nodes))
    node_ids = [f"n{i}" for i in range(n)]
    edge_count = draw(st.integers(min_value=0, max_value=max_edges))
    edges = []
    for _ in range(edge_count):
        size = draw(st.integers(min_value=1, max_value=min(5, n)))
        edges.append(draw(st.permutations(node_ids)).copy()[:size])
    return make_hot(edges, extra_nodes=node_ids)


class TestConstruction:
    def test_dangling_member_rejected(self):
        with pytest.raises(ValidationError, match="'z'"):
            HoT({"a": "", "b": ""}, {"e": Hyperedge("lbl", ["a", "z"])})

    def test_empty_member_set_rejected(self):
        with pytest.raises(ValidationError):
            HoT({"a": ""}, {"e": Hyperedge("lbl", [])})

    def test_duplicate_members_collapse(self):
        hot = make_hot([["a", "b", "a"]])
        assert hot.hyperedges["e0"].members == frozenset({"a", "b"})

    def test_empty_node_id_rejected(self):
        with pytest.raises(ValidationError):
            HoT({"": "x"}, {})


class TestInducedAdjacency:
    def test_single_edge_is_clique(self):
        hot = make_hot([["a", "b", "c"]])
        adj = hot.induced_adjacency()
        assert adj == {"a": {"b", "c"}, "b": {"a", "c"}, "c": {"a", "b"}}

    def test_chain(self):
        hot = make_hot([["a", "b"], ["b", "c"]])
        assert hot.induced_adjacency()["b"] == {"a", "c"}

    def test_no_self_adjacency(self):
        hot = make_hot([["a", "b", "c"]])
        for node, neighbours in hot.induced_adjacency().items():
            assert node not in neighbours

    def test_matches_membership_oracle_on_random_hot(self):
        rng = random.Random(20)
        nodes = [f"n{i}" for i in range(20)]
        edges = [rng.sample(nodes, rng.randint(2, 6)) for _ in range(8)]
        hot = make_hot(edges, extra_nodes=nodes)
        assert hot.induced_adjacency() == pairwise_adjacency(hot)


class TestShortestDistances:
    def test_chain_distance(self):
        hot = make_hot([["a", "b"], ["b", "c"], ["c", "d"]])
        dist = hot.shortest_distances(["a"])
        assert dist["a"]["d"] == 3

    def test_single_edge_all_distance_one(self):
        hot = make_hot([["a", "b", "c"]])
        dist = hot.shortest_distances(["a", "b", "c"])
        for u in "abc":
            assert dist[u][u] == 0
            for v in "abc":
                if u != v:
                    assert dist[u][v] == 1

    def test_disconnected_components_unreachable(self):
        hot = make_hot([["a", "b"], ["c", "d"]])
        dist = hot.shortest_distances(["a"])
        assert "c" not in dist["a"]
        assert "d" not in dist["a"]

    def test_unknown_source_names_id(self):
        hot = make_hot([["a", "b"]])
        with pytest.raises(UnknownNodeError, match="'ghost'"):
            hot.shortest_distances(["ghost"])

    def test_one_edge_traversal_is_one_hop(self):
        # node -> edge -> node counts as a single hop, not two
        hot = make_hot([["a", "b", "c", "d", "e"]])
        dist = hot.shortest_distances(["a"])
        assert all(dist["a"][v] == 1 for v in "bcde")

    @settings(max_examples=60, deadline=None)
    @given(random_hots())
    def test_matches_floyd_warshall_oracle(self, hot):
        expected = floyd_warshall(hot)
        got = hot.shortest_distances(list(hot.nodes))
        for u in hot.nodes:
            for v in hot.nodes:
                assert got[u].get(v) == expected[u][v]

    @settings(max_examples=40, deadline=None)
    @given(random_hots())
    def test_distance_one_iff_shared_edge(self, hot):
        adj = hot.induced_adjacency()
        dist = hot.shortest_distances(list(hot.nodes))
        for u in hot.nodes:
            for v in hot.nodes:
                if u == v:
                    continue
                assert (dist[u].get(v) == 1) == (v in adj[u])

    @settings(max_examples=40, deadline=None)
    @given(random_hots())
    def test_symmetry(self, hot):
        dist = hot.shortest_distances(list(hot.nodes))
        for u in hot.nodes:
            for v in hot.nodes:
                assert dist[u].get(v) == dist[v].get(u)


class TestSerialization:
    def test_empty_round_trip(self):
        hot = HoT({}, {})
        assert HoT.deserialize(hot.serialize()) == hot

    def test_round_trip_identity(self):
        hot = make_hot([["a", "b"], ["b", "c", "d"]])
        assert HoT.deserialize(hot.serialize()) == hot

    def test_deterministic_bytes(self):
        h1 = HoT(
            {"b": "B", "a": "A"},
            {"e2": Hyperedge("y", ["b", "a"]), "e1": Hyperedge("x", ["a"])},
        )
        h2 = HoT(
            {"a": "A", "b": "B"},
            {"e1": Hyperedge("x", ["a"]), "e2": Hyperedge("y", ["a", "b"])},
        )
        assert h1.serialize() == h2.serialize()
        assert h1.serialize() == h1.serialize()

    def test_dangling_member_in_file(self):
        payload = b'{"nodes": {"a": {"text": ""}}, "hyperedges": {"e": {"label": "l", "members": ["a", "z"]}}}'
        with pytest.raises(ValidationError, match="'z'"):
            HoT.deserialize(payload)

    def test_malformed_json_reports_location(self):
        with pytest.raises(ParseError, match=r"line 1"):
            HoT.deserialize(b'{"nodes": }')

    def test_missing_sections_rejected(self):
        with pytest.raises(ParseError, match="nodes"):
            HoT.deserialize(b'{"hyperedges": {}}')
        with pytest.raises(ParseError, match="hyperedges"):
            HoT.deserialize(b'{"nodes": {}}')

    def test_member_list_shape_checked(self):
        payload = b'{"nodes": {"a": {"text": ""}}, "hyperedges": {"e": {"label": "l", "members": "a"}}}'
        with pytest.raises(ParseError, match="members"):
            HoT.deserialize(payload)

    def test_unicode_survives(self):
        hot = HoT({"café": "crème brûlée ☕"}, {"e": Hyperedge("naïve", ["café"])})
        assert HoT.deserialize(hot.serialize()) == hot


class TestPruneBySize:
    def test_threshold(self):
        hot = make_hot([["a", "b"], ["c", "d"], ["a", "c", "d"]])
        pruned = hot.prune_by_size(3)
        assert pruned.edge_count == 1
        assert pruned.hyperedges["e2"].size == 3

    def test_min_size_one_is_identity(self):
        hot = make_hot([["a", "b"], ["c", "d", "e"]])
        assert hot.prune_by_size(1) == hot

    def test_nodes_unchanged(self):
        hot = make_hot([["a", "b"]], extra_nodes=["lonely"])
        pruned = hot.prune_by_size(3)
        assert pruned.nodes == hot.nodes
        assert pruned.edge_count == 0

    def test_invalid_min_size(self):
        with pytest.raises(ValueError):
            make_hot([["a", "b"]]).prune_by_size(0)

    @settings(max_examples=40, deadline=None)
    @given(random_hots(), st.integers(min_value=1, max_value=6))
    def test_never_increases_edges_and_keeps_covered_one_hops(self, hot, min_size):
        pruned = hot.prune_by_size(min_size)
        assert pruned.edge_count <= hot.edge_count
        dist_before = hot.shortest_distances(list(hot.nodes))
        dist_after = pruned.shortest_distances(list(hot.nodes))
        for edge in pruned.hyperedges.values():
            members = sorted(edge.members)
            for i, u in enumerate(members):
                for v in members[i + 1 :]:
                    assert dist_before[u][v] == 1
                    assert dist_after[u][v] == 1


class TestWithEdge:
    def test_adds_edge(self):
        hot = make_hot([["a", "b"]], extra_nodes=["c"])
        bigger = hot.with_edge("extra", "lbl", ["b", "c"])
        assert bigger.edge_count == 2
        assert hot.edge_count == 1  # original untouched

    def test_duplicate_id_rejected(self):
        hot = make_hot([["a", "b"]])
        with pytest.raises(ValidationError):
            hot.with_edge("e0", "lbl", ["a", "b"])
