import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.constructions import FamilySpec, build_bn, build_family
from src.enumeration import enumerate_subcubic_bipartite
from src.errors import GraphError, InvalidMoveError, NonConvergenceError
from src.graph_core import Bipartition, bipartition, build, degree_sequence, is_bipartite, is_connected
from src.rewiring import (
    SwapMove,
    apply_two_switch,
    eigenvector_order_check,
    find_bad_pairs,
    hill_climb,
    neighbor_shift,
)
from src.spectral import dense_eigensolve, path_lambda, spectral_radius
from tests.strategies import graphs


@pytest.fixture
def rival_b8():
    """(3,3,3,2 | 3,3,3,2) graph whose degree-2 vertices are not adjacent."""
    return build(8, [(0, 4), (0, 5), (0, 6), (1, 4), (1, 5), (1, 7),
                     (2, 5), (2, 6), (2, 7), (3, 4), (3, 6)])


class TestTwoSwitch:
    def test_cycle_stays_a_cycle(self, c6):
        move = SwapMove(u=0, u_prime=4, v=3, v_prime=1)
        g = apply_two_switch(c6, move)
        assert g.degrees == c6.degrees
        assert spectral_radius(g).lambda1 == pytest.approx(2.0)
        assert g.has_edge(0, 3) and g.has_edge(4, 1)
        assert not g.has_edge(0, 1) and not g.has_edge(3, 4)

    def test_move_edges(self):
        move = SwapMove(1, 2, 3, 4)
        assert move.removed == ((1, 4), (2, 3))
        assert move.added == ((1, 3), (2, 4))
        assert str(move) == "u=1 u'=2 v=3 v'=4"

    @pytest.mark.parametrize(
        "move,message",
        [
            (SwapMove(0, 0, 3, 1), "distinct"),
            (SwapMove(0, 4, 3, 2), "missing"),
            (SwapMove(0, 2, 1, 5), "already present"),
        ],
    )
    def test_invalid(self, c6, move, message):
        with pytest.raises(InvalidMoveError, match=message):
            apply_two_switch(c6, move)

    @settings(max_examples=200, deadline=None)
    @given(graphs(min_n=4, max_n=9, connected=True), st.data())
    def test_never_decreases_lambda1(self, g, data):
        x = spectral_radius(g).eigenvector
        moves = []
        for e1 in g.edges():
            for e2 in g.edges():
                if len({*e1, *e2}) < 4:
                    continue
                u, v_prime = e1
                u_prime, v = e2
                if g.has_edge(u, v) or g.has_edge(u_prime, v_prime):
                    continue
                if x[u] >= x[u_prime] and x[v] >= x[v_prime]:
                    moves.append(SwapMove(u, u_prime, v, v_prime))
        assume(moves)
        move = data.draw(st.sampled_from(moves))
        before = dense_eigensolve(g).lambda1
        after_graph = apply_two_switch(g, move)
        after = dense_eigensolve(after_graph).lambda1
        assert after >= before - 1e-10
        assert after_graph.degrees == g.degrees
        if x[move.u] - x[move.u_prime] > 1e-4 and x[move.v] - x[move.v_prime] > 1e-4:
            assert after > before


class TestBadPairs:
    @pytest.mark.parametrize("n", range(6, 21))
    def test_none_in_bn(self, n):
        assert find_bad_pairs(build_bn(n)[0]) == []

    def test_none_in_cycle(self, c6):
        assert find_bad_pairs(c6) == []

    def test_evidence_satisfies_conditions(self):
        catalog = enumerate_subcubic_bipartite(8).catalog
        found = [(e.graph, mv) for e in catalog for mv in find_bad_pairs(e.graph)]
        assert found
        for g, move in found:
            xu, xu2, xv, xv2 = move.evidence
            assert xu >= xu2 - 1e-10 and xv > xv2 + 1e-10
            after = apply_two_switch(g, move)
            assert is_connected(after) and is_bipartite(after)

    def test_exchange_listed_once(self):
        g = build_family(FamilySpec("path", (6,)))
        moves = find_bad_pairs(g, preserve_bipartite=False)
        exchanges = [frozenset(map(frozenset, mv.added)) for mv in moves]
        assert len(exchanges) == len(set(exchanges))

    def test_disconnected(self, two_edges):
        with pytest.raises(GraphError):
            find_bad_pairs(two_edges)


class TestNeighborShift:
    def test_path_to_star(self, p4):
        g = neighbor_shift(p4, u=2, v=1, S={3})
        assert sorted(g.edges()) == [(0, 1), (1, 2), (1, 3)]
        assert spectral_radius(g).lambda1 == pytest.approx(math.sqrt(3))
        assert spectral_radius(p4).lambda1 == pytest.approx(path_lambda(4))

    @pytest.mark.parametrize(
        "u,v,S",
        [(2, 1, set()), (1, 1, {0}), (2, 1, {1}), (2, 1, {0}), (1, 3, {2})],
    )
    def test_rejects(self, p4, u, v, S):
        with pytest.raises(InvalidMoveError):
            neighbor_shift(p4, u, v, S)

    @settings(max_examples=200, deadline=None)
    @given(graphs(min_n=3, max_n=9, connected=True), st.data())
    def test_increases_lambda1(self, g, data):
        x = spectral_radius(g).eigenvector
        pairs = [(u, v) for u in range(g.n) for v in range(g.n)
                 if u != v and x[v] >= x[u]
                 and any(w != v and not g.has_edge(w, v) for w in g.neighbors(u))]
        assume(pairs)
        u, v = data.draw(st.sampled_from(pairs))
        choices = sorted(w for w in g.neighbors(u) if w != v and not g.has_edge(w, v))
        S = data.draw(st.sets(st.sampled_from(choices), min_size=1))
        before = dense_eigensolve(g).lambda1
        after = dense_eigensolve(neighbor_shift(g, u, v, S)).lambda1
        assert after > before


class TestHillClimb:
    def test_bn_is_a_fixed_point(self, b8):
        trace = hill_climb(b8)
        assert len(trace) == 1
        assert trace[0].move is None
        assert trace[0].graph6 == trace[-1].graph6

    @pytest.mark.parametrize("policy", ["best", "first"])
    def test_trace_invariants(self, rival_b8, policy):
        trace = hill_climb(rival_b8, seed=7, policy=policy)
        for before, after in zip(trace, trace[1:]):
            assert after.lambda1 - before.lambda1 > 1e-10
            assert after.gain > 1e-10
            assert after.step == before.step + 1
        target = degree_sequence(rival_b8, None)
        for step in trace:
            assert degree_sequence(step.graph) == target
            assert is_connected(step.graph)
            assert is_bipartite(step.graph)
        assert find_bad_pairs(trace[-1].graph) == []

    def test_deterministic(self, rival_b8):
        first = [s.graph6 for s in hill_climb(rival_b8, seed=3, policy="first")]
        again = [s.graph6 for s in hill_climb(rival_b8, seed=3, policy="first")]
        assert first == again

    def test_best_terminal_is_b8(self, b8):
        target = degree_sequence(b8, build_bn(8)[1])
        starts = [e.graph for e in enumerate_subcubic_bipartite(8).catalog
                  if degree_sequence(e.graph, bipartition(e.graph)) == target]
        assert len(starts) > 1
        finals = [hill_climb(g)[-1].lambda1 for g in starts]
        assert max(finals) == pytest.approx(spectral_radius(b8).lambda1, abs=1e-9)

    def test_step_cap(self):
        catalog = enumerate_subcubic_bipartite(8).catalog
        g = next(e.graph for e in catalog if find_bad_pairs(e.graph))
        with pytest.raises(NonConvergenceError) as info:
            hill_climb(g, max_steps=0)
        assert len(info.value.best) == 1

    def test_rejects(self, two_edges, p4):
        with pytest.raises(GraphError):
            hill_climb(two_edges)
        with pytest.raises(GraphError, match="policy"):
            hill_climb(p4, policy="random")


class TestEigenvectorOrder:
    def test_b9(self, b9):
        assert eigenvector_order_check(b9) == []

    def test_k23(self):
        assert eigenvector_order_check(build_family(FamilySpec("complete_bipartite", (2, 3)))) == []

    def test_reports_violations(self):
        # K_{3,3} with a tail 0-6-7-8 ending in two leaves at 8
        k33 = [(x, y) for x in range(3) for y in range(3, 6)]
        g = build(11, k33 + [(0, 6), (6, 7), (7, 8), (8, 9), (8, 10)])
        violations = eigenvector_order_check(g)
        assert any(item.u == 8 and item.v == 6 for item in violations)
        for item in violations:
            assert g.degree(item.u) > g.degree(item.v)
            assert item.x_u <= item.x_v + 1e-10

    def test_inconsistent_bipartition(self, p4):
        with pytest.raises(GraphError):
            eigenvector_order_check(p4, Bipartition(side=(0, 0, 1, 1)))

    def test_delta_below_max_degree(self, b9):
        with pytest.raises(GraphError):
            eigenvector_order_check(b9, delta=2)
