import math

import networkx as nx
import pytest
from hypothesis import given, settings

from src.constructions import FamilySpec, build_bn, build_family
from src.errors import GraphError, NotBipartiteError, ScaleCapError
from src.graph_core import (
    Bipartition,
    Graph,
    bipartition,
    build,
    components,
    cut_edges,
    cut_vertices,
    degree_sequence,
    diameter,
    induced_subgraph,
    is_bipartite,
    is_connected,
    vertex_connectivity,
    vertex_connectivity_bruteforce,
)
from tests.strategies import graphs


class TestBuild:
    def test_star(self):
        g = build(4, [(0, 1), (0, 2), (0, 3)])
        assert g.degrees == (3, 1, 1, 1)
        assert g.m == 3

    def test_single_vertex(self):
        g = build(1, [])
        assert g.n == 1 and g.m == 0

    def test_k33_minus_edge(self):
        edges = [(x, y) for x in range(3) for y in range(3, 6) if (x, y) != (0, 3)]
        assert build(6, edges).m == 8

    def test_duplicates_collapse(self):
        g = build(3, [(0, 1), (1, 0), (0, 1)])
        assert g.m == 1
        assert g.adjacency == ((1,), (0,), ())

    @pytest.mark.parametrize("edges", [[(0, 4)], [(-1, 2)]])
    def test_out_of_range_endpoint(self, edges):
        with pytest.raises(GraphError, match="outside"):
            build(4, edges)

    def test_self_loop(self):
        with pytest.raises(GraphError, match=r"\(2, 2\)"):
            build(4, [(2, 2)])

    def test_empty_vertex_set(self):
        with pytest.raises(GraphError):
            build(0, [])

    @given(graphs())
    def test_handshake_and_symmetry(self, g):
        assert sum(g.degrees) == 2 * g.m
        for u in range(g.n):
            for v in g.adjacency[u]:
                assert u in g.adjacency[v]
                assert u != v

    def test_with_edges_and_relabel(self, p4):
        g = p4.with_edges(add=[(0, 3)], remove=[(1, 2)])
        assert sorted(g.edges()) == [(0, 1), (0, 3), (2, 3)]
        with pytest.raises(GraphError):
            p4.with_edges(remove=[(0, 2)])
        with pytest.raises(GraphError):
            p4.with_edges(add=[(0, 1)])
        relabeled = p4.relabel([3, 2, 1, 0])
        assert sorted(relabeled.edges()) == sorted(p4.edges())
        with pytest.raises(GraphError):
            p4.relabel([0, 0, 1, 2])

    def test_networkx_round_trip(self, petersen):
        assert Graph.from_networkx(petersen.to_networkx()) == petersen

    def test_induced_subgraph(self, k33):
        h = induced_subgraph(k33, [0, 3, 4])
        assert h.n == 3 and h.m == 2


class TestConnectivity:
    def test_path_connected(self, p4):
        assert is_connected(p4)

    def test_two_edges_disconnected(self, two_edges):
        assert not is_connected(two_edges)
        assert components(two_edges) == [[0, 1], [2, 3]]

    def test_k33_minus_edge(self, b6):
        assert is_connected(b6)

    @given(graphs())
    def test_matches_networkx(self, g):
        assert is_connected(g) == nx.is_connected(g.to_networkx())


class TestBipartition:
    def test_c6(self, c6):
        assert sorted(bipartition(c6).sizes) == [3, 3]

    def test_c5_witness(self):
        c5 = build_family(FamilySpec("cycle", (5,)))
        with pytest.raises(NotBipartiteError) as info:
            bipartition(c5)
        cycle = info.value.witness
        assert len(cycle) == 5
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            assert c5.has_edge(a, b)

    def test_b8_sides(self, b8):
        bip = bipartition(b8)
        assert bip.sizes == (4, 4)
        assert bip.consistent_with(b8)

    @settings(max_examples=200)
    @given(graphs(max_n=8))
    def test_matches_networkx(self, g):
        assert is_bipartite(g) == nx.is_bipartite(g.to_networkx())
        if is_bipartite(g):
            assert bipartition(g).consistent_with(g)


class TestVertexConnectivity:
    def test_petersen(self, petersen):
        assert vertex_connectivity(petersen) == 3
        assert vertex_connectivity_bruteforce(petersen) == 3

    def test_path(self, p4):
        assert vertex_connectivity(p4) == 1

    def test_complete(self):
        assert vertex_connectivity(build_family(FamilySpec("complete", (5,)))) == 4

    def test_disconnected(self, two_edges):
        assert vertex_connectivity(two_edges) == 0

    def test_too_small(self):
        with pytest.raises(GraphError):
            vertex_connectivity(build(1, []))

    def test_bruteforce_cap(self):
        with pytest.raises(ScaleCapError):
            vertex_connectivity_bruteforce(build_family(FamilySpec("cycle", (11,))))

    def test_bn_values(self, b6, b9):
        assert vertex_connectivity(b6) == 2
        assert vertex_connectivity(b9) == 1

    @settings(max_examples=150)
    @given(graphs(min_n=2, max_n=8))
    def test_matches_oracles(self, g):
        k = vertex_connectivity(g)
        assert k == vertex_connectivity_bruteforce(g)
        G = g.to_networkx()
        expected = nx.node_connectivity(G) if nx.is_connected(G) else 0
        assert k == expected
        if is_connected(g) and not g.is_complete:
            assert k <= g.min_degree


class TestDiameter:
    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_path(self, n):
        assert diameter(build_family(FamilySpec("path", (n,)))) == n - 1

    def test_k33(self, k33):
        assert diameter(k33) == 2

    def test_b8(self, b8):
        assert diameter(b8) == 3

    def test_disconnected(self, two_edges):
        assert diameter(two_edges) == math.inf


class TestCutEdges:
    def test_tree(self):
        tree = build(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
        assert cut_edges(tree) == sorted(tree.edges())

    def test_cycle(self, c6):
        assert cut_edges(c6) == []

    def test_b7_pendant(self):
        b7, _ = build_bn(7)
        assert cut_edges(b7) == [(2, 6)]

    @given(graphs(max_n=8))
    def test_bridge_removal(self, g):
        bridges = set(cut_edges(g))
        base = len(components(g))
        for e in g.edges():
            assert (len(components(g.with_edges(remove=[e]))) > base) == (e in bridges)

    @given(graphs(max_n=8))
    def test_articulation_points_match_networkx(self, g):
        assert cut_vertices(g) == sorted(nx.articulation_points(g.to_networkx()))


class TestDegreeSequence:
    def test_b8(self, b8):
        assert str(degree_sequence(b8, bipartition(b8))) == "(3,3,3,2 | 3,3,3,2)"

    def test_b9(self, b9):
        assert str(degree_sequence(b9, bipartition(b9))) == "(3,3,3,3 | 3,3,3,2,1)"

    def test_star(self, star3):
        assert str(degree_sequence(star3, bipartition(star3))) == "(3 | 1,1,1)"

    def test_general(self, p4):
        assert str(degree_sequence(p4)) == "(2,2,1,1)"

    def test_inconsistent_bipartition(self, p4):
        with pytest.raises(GraphError):
            degree_sequence(p4, Bipartition(side=(0, 0, 1, 1)))

    @given(graphs(max_n=8))
    def test_sides_balance(self, g):
        if is_bipartite(g):
            left, right = degree_sequence(g, bipartition(g)).parts
            assert sum(left) == sum(right) == g.m
        assert sum(degree_sequence(g).degrees) % 2 == 0

