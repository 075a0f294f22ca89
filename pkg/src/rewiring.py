"""Eigenvector-guided rewiring: two-switches, bad pairs, neighbour shifts and a hill climber."""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from src import graph6
from src.config import get_settings
from src.errors import GraphError, InvalidMoveError, NonConvergenceError
from src.graph_core import Bipartition, Graph, bipartition, is_bipartite, is_connected
from src.spectral import lambda1, spectral_radius

logger = logging.getLogger(__name__)

ENTRY_TOL = 1e-10
MIN_GAIN = 1e-10
POLICIES = ("best", "first")


@dataclass(frozen=True)
class SwapMove:
    """Replace edges u v' and u' v by u v and u' v'."""

    u: int
    u_prime: int
    v: int
    v_prime: int
    evidence: Optional[tuple[float, float, float, float]] = field(default=None, compare=False)

    @property
    def removed(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.u, self.v_prime), (self.u_prime, self.v)

    @property
    def added(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.u, self.v), (self.u_prime, self.v_prime)

    @property
    def vertices(self) -> tuple[int, int, int, int]:
        return self.u, self.u_prime, self.v, self.v_prime

    def __str__(self) -> str:
        return f"u={self.u} u'={self.u_prime} v={self.v} v'={self.v_prime}"


def _check_move(g: Graph, move: SwapMove):
    if len(set(move.vertices)) != 4:
        raise InvalidMoveError(f"two-switch needs four distinct vertices: {move}")
    for a, b in move.removed:
        if not g.has_edge(a, b):
            raise InvalidMoveError(f"edge ({a}, {b}) to remove is missing ({move})")
    for a, b in move.added:
        if g.has_edge(a, b):
            raise InvalidMoveError(f"edge ({a}, {b}) to add is already present ({move})")


def apply_two_switch(g: Graph, move: SwapMove) -> Graph:
    _check_move(g, move)
    return g.with_edges(add=move.added, remove=move.removed)


def _labelings(e1: tuple[int, int], e2: tuple[int, int]):
    """The eight (u, u', v, v') readings of {e1, e2} as {u v', u' v}."""
    for first, second in ((e1, e2), (e2, e1)):
        for u, v_prime in (first, first[::-1]):
            for u_prime, v in (second, second[::-1]):
                yield u, u_prime, v, v_prime


def find_bad_pairs(g: Graph, x=None, preserve_bipartite: Optional[bool] = None) -> list[SwapMove]:
    """All edge pairs {u v', u' v} whose switch is a bad pair.

    Conditions: x_u >= x_u' and x_v > x_v' (with ENTRY_TOL), u v and u' v' are
    non-edges, and the switched graph is connected. With preserve_bipartite
    (default: on for bipartite g) only switches keeping both sides are listed.
    Each edge exchange is reported once, under its first qualifying reading.
    """
    if not is_connected(g):
        raise GraphError("bad pairs are defined for connected graphs")
    x = spectral_radius(g).eigenvector if x is None else np.asarray(x, dtype=float)
    side = None
    if preserve_bipartite is None:
        preserve_bipartite = is_bipartite(g)
    if preserve_bipartite:
        side = bipartition(g).side

    found = []
    seen = set()
    for e1, e2 in combinations(g.edges(), 2):
        if len({*e1, *e2}) != 4:
            continue
        for u, u_prime, v, v_prime in _labelings(e1, e2):
            exchange = frozenset([frozenset((u, v)), frozenset((u_prime, v_prime))])
            if exchange in seen:
                continue
            if side is not None and side[u] == side[v]:
                continue
            if g.has_edge(u, v) or g.has_edge(u_prime, v_prime):
                continue
            if not (x[u] >= x[u_prime] - ENTRY_TOL and x[v] > x[v_prime] + ENTRY_TOL):
                continue
            move = SwapMove(u, u_prime, v, v_prime,
                            evidence=(float(x[u]), float(x[u_prime]), float(x[v]), float(x[v_prime])))
            if not is_connected(apply_two_switch(g, move)):
                continue
            seen.add(exchange)
            found.append(move)
    return found


def neighbor_shift(g: Graph, u: int, v: int, S) -> Graph:
    """Move the edges w u (w in S) to w v."""
    S = set(S)
    if u == v:
        raise InvalidMoveError("neighbour shift needs u != v")
    if not S:
        raise InvalidMoveError("neighbour shift needs a nonempty S")
    if v in S:
        raise InvalidMoveError(f"v={v} cannot be in S")
    bad = sorted(w for w in S if not g.has_edge(w, u) or g.has_edge(w, v))
    if bad:
        raise InvalidMoveError(f"vertices {bad} are not in N({u}) \\ N({v})")
    return g.with_edges(remove=[(w, u) for w in sorted(S)], add=[(w, v) for w in sorted(S)])


@dataclass
class TraceStep:
    step: int
    graph: Graph
    lambda1: float
    move: Optional[SwapMove] = None
    gain: float = 0.0

    @property
    def graph6(self) -> str:
        return graph6.encode(self.graph)


def _gain(g: Graph, move: SwapMove, base: float) -> float:
    return lambda1(apply_two_switch(g, move)) - base


def hill_climb(g0: Graph, seed: Optional[int] = None, policy: str = "best",
               max_steps: int = 10_000, preserve_bipartite: Optional[bool] = None) -> list[TraceStep]:
    """Apply bad-pair switches until none is left; returns the trace from g0.

    "best" takes the largest lambda1 gain (ties keep the lexicographically
    first move); "first" takes the first improving move in an order shuffled by
    the seed. Every accepted step gains more than MIN_GAIN.
    """
    if policy not in POLICIES:
        raise GraphError(f"unknown policy {policy!r}; choose from {', '.join(POLICIES)}")
    if not is_connected(g0):
        raise GraphError("hill climbing needs a connected start graph")
    if preserve_bipartite is None:
        preserve_bipartite = is_bipartite(g0)
    rng = np.random.default_rng(get_settings().seed if seed is None else seed)

    g = g0
    result = spectral_radius(g)
    trace = [TraceStep(step=0, graph=g, lambda1=result.lambda1)]
    while True:
        candidates = sorted(find_bad_pairs(g, result.eigenvector, preserve_bipartite),
                            key=lambda mv: mv.vertices)
        chosen, chosen_gain = None, MIN_GAIN
        if policy == "best":
            for move in candidates:
                gain = _gain(g, move, result.lambda1)
                if gain > chosen_gain:
                    chosen, chosen_gain = move, gain
        else:
            for i in rng.permutation(len(candidates)):
                gain = _gain(g, candidates[i], result.lambda1)
                if gain > MIN_GAIN:
                    chosen, chosen_gain = candidates[i], gain
                    break
        if chosen is None:
            if candidates:
                logger.warning("%d bad pairs left but none gains more than %.0e", len(candidates), MIN_GAIN)
            logger.info("Hill climb stopped after %d steps at lambda1=%.12f", len(trace) - 1, result.lambda1)
            return trace
        if len(trace) > max_steps:
            raise NonConvergenceError(f"hill climb did not settle within {max_steps} steps", best=trace)
        g = apply_two_switch(g, chosen)
        result = spectral_radius(g)
        trace.append(TraceStep(step=len(trace), graph=g, lambda1=result.lambda1, move=chosen, gain=chosen_gain))
        logger.debug("Step %d: %s gain %.3e", len(trace) - 1, chosen, chosen_gain)


@dataclass
class OrderViolation:
    u: int
    v: int
    x_u: float
    x_v: float


def eigenvector_order_check(g: Graph, bip: Optional[Bipartition] = None, delta: Optional[int] = None,
                            tol: float = ENTRY_TOL) -> list[OrderViolation]:
    """Same-side pairs with d(u) > d(v) but x_u <= x_v (within tol)."""
    if not is_connected(g):
        raise GraphError("eigenvector order check needs a connected graph")
    if bip is None:
        bip = bipartition(g)
    elif not bip.consistent_with(g):
        raise GraphError("bipartition is inconsistent with the graph")
    if delta is not None and delta < g.max_degree:
        raise GraphError(f"delta={delta} is below the maximum degree {g.max_degree}")
    x = spectral_radius(g).eigenvector
    violations = []
    for part in (bip.x, bip.y):
        for u in part:
            for v in part:
                if g.degree(u) > g.degree(v) and x[u] <= x[v] + tol:
                    violations.append(OrderViolation(u, v, float(x[u]), float(x[v])))
    return violations
