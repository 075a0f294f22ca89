"""Lower bounds on the spectral gap Delta - lambda1 and their verification harness.

Every bound takes scalar parameters so that it can be scanned over parameter
grids; `bound_report` is the thin adapter that extracts (n, m, Delta, k, D)
from a graph.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from src import graph6
from src.errors import BoundInapplicable, GraphError
from src.graph_core import Graph, diameter, is_connected, vertex_connectivity
from src.spectral import DENSE_MAX_ORDER, dense_eigensolve, lambda1, spectral_radius

logger = logging.getLogger(__name__)

STRICT_MARGIN = 1e-12
ESCALATION_MARGIN = 1e-9

STEVANOVIC = "stevanovic"
CIOABA = "cioaba"
CHEN_HOU = "chen_hou"
MAIN1 = "main1"
CHEN_HOU_SUBGRAPH = "chen_hou_subgraph"
MAIN2 = "main2"
IRREGULAR_BOUNDS = (STEVANOVIC, CIOABA, CHEN_HOU, MAIN1)


# --- Scalar bounds ---

def stevanovic_bound(n: int, delta: int) -> float:
    if n < 2 or delta < 1:
        raise BoundInapplicable(f"needs n >= 2 and delta >= 1, got n={n}, delta={delta}")
    return 1.0 / (2 * n * (n * delta - 1) * delta * delta)


def cioaba_bound(n: int, D) -> float:
    if n < 2:
        raise BoundInapplicable(f"needs n >= 2, got n={n}")
    if D == math.inf or D < 1:
        raise BoundInapplicable(f"needs a connected graph with finite diameter, got D={D}")
    return 1.0 / (n * D)


def _check_irregular(n: int, m: int, delta: int, k: int) -> int:
    slack = n * delta - 2 * m
    if slack < 1:
        raise BoundInapplicable(f"regular parameters (n*delta - 2m = {slack})")
    if not 1 <= k <= n - 2:
        raise BoundInapplicable(f"needs 1 <= k <= n - 2, got k={k}, n={n}")
    return slack


def chen_hou_connectivity_bound(n: int, m: int, delta: int, k: int) -> float:
    s = _check_irregular(n, m, delta, k)
    return s * k * k / (s * (n * n - 2 * n + 2 * k) + n * k * k)


def main1_bound(n: int, m: int, delta: int, k: int) -> float:
    s = _check_irregular(n, m, delta, k)
    return s * k * k / (s * ((n - 1) ** 2 - (n - k - 1) * (delta - k + 1)) + n * k * k)


def main1_bound_k1(n: int, m: int, delta: int) -> float:
    """main1_bound at k = 1, rewritten as 1/((n-1)^2 - (n-2)Delta + n/(n Delta - 2m))."""
    s = _check_irregular(n, m, delta, 1)
    return 1.0 / ((n - 1) ** 2 - (n - 2) * delta + n / s)


def chen_hou_subgraph_bound(n: int, delta: int, k: int) -> float:
    if k < 2:
        raise BoundInapplicable(f"needs k >= 2, got k={k}")
    if delta > n - 1:
        raise BoundInapplicable(f"delta={delta} exceeds n - 1")
    t = n - delta
    return (k - 1) ** 2 / (t * (t + 2 * k - 4) + n * (k - 1) ** 2)


def main2_subgraph_bound(n: int, delta: int, k: int) -> float:
    if k < 1:
        raise BoundInapplicable(f"needs k >= 1, got k={k}")
    if delta > n - 1 or delta < 1:
        raise BoundInapplicable(f"needs 1 <= delta <= n - 1, got delta={delta}, n={n}")
    return k * k / ((n - delta - 1) * (n - delta + 2 * k - 2) + n * k * k)


def shi_inequality_gap(a: float, b: float, p: float, q: float) -> float:
    """a(p-q)^2 + bq^2 - abp^2/(a+b), evaluated as (ap - (a+b)q)^2/(a+b)."""
    if a <= 0 or b <= 0:
        raise BoundInapplicable(f"needs a, b > 0, got a={a}, b={b}")
    return (a * p - (a + b) * q) ** 2 / (a + b)


def phi_difference(n: int, delta: int, k: int) -> tuple[float, float]:
    """Phi2 - Phi1 evaluated directly and through its expanded polynomial."""
    t = n - delta
    phi1 = (k - 1) ** 2 * (t - 1) * (t + 2 * k - 2)
    phi2 = k * k * t * (t + 2 * k - 4)
    expanded = (2 * k - 1) * t * t + (3 * k * k - 8 * k + 3) * t + 2 * (k - 1) ** 3
    return float(phi2 - phi1), float(expanded)


# --- Per-graph reports ---

@dataclass
class BoundEntry:
    name: str
    value: Optional[float] = None
    applicable: bool = False
    holds: Optional[bool] = None
    margin: Optional[float] = None
    error: Optional[str] = None


@dataclass
class BoundReport:
    graph6: str
    n: int
    m: int
    delta: int
    k: int
    D: float
    lambda1: float
    true_gap: float
    entries: list[BoundEntry] = field(default_factory=list)

    def entry(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    @property
    def violations(self) -> list[BoundEntry]:
        return [e for e in self.entries if e.applicable and not e.holds]


def _evaluate(name: str, func: Callable[..., float], *args) -> BoundEntry:
    """Evaluate one bound row; never raises."""
    try:
        return BoundEntry(name=name, value=func(*args), applicable=True)
    except BoundInapplicable as e:
        return BoundEntry(name=name, error=str(e))
    except Exception as e:
        error_type = type(e).__name__
        logger.error("Bound %s failed on %s: %s: %s", name, args, error_type, e)
        return BoundEntry(name=name, error=f"{error_type}: {e}")


def _judge(entries: list[BoundEntry], true_gap: float):
    for e in entries:
        if e.applicable:
            e.margin = true_gap - e.value
            e.holds = e.margin > -STRICT_MARGIN


def bound_report(g: Graph, all_k: bool = False) -> BoundReport:
    """True gap of a connected graph and every applicable irregular-graph bound.

    With all_k, the connectivity bounds are also evaluated at every k' < k
    (rows named like "main1@k=1").
    """
    if not is_connected(g):
        raise GraphError("bound reports need a connected graph")
    delta = g.max_degree
    k = vertex_connectivity(g) if g.n >= 2 else 0
    D = diameter(g)
    lam = lambda1(g)
    regular = g.is_regular

    entries = []
    irregular_rows = [
        (STEVANOVIC, stevanovic_bound, (g.n, delta)),
        (CIOABA, cioaba_bound, (g.n, D)),
        (CHEN_HOU, chen_hou_connectivity_bound, (g.n, g.m, delta, k)),
        (MAIN1, main1_bound, (g.n, g.m, delta, k)),
    ]
    if all_k:
        for j in range(1, k):
            irregular_rows.append((f"{CHEN_HOU}@k={j}", chen_hou_connectivity_bound, (g.n, g.m, delta, j)))
            irregular_rows.append((f"{MAIN1}@k={j}", main1_bound, (g.n, g.m, delta, j)))
    for name, func, args in irregular_rows:
        if regular:
            entries.append(BoundEntry(name=name, error="regular graph"))
        else:
            entries.append(_evaluate(name, func, *args))

    true_gap = delta - lam
    _judge(entries, true_gap)
    close = [e for e in entries if e.applicable and abs(e.margin) < ESCALATION_MARGIN]
    if close and g.n <= DENSE_MAX_ORDER:
        lam = dense_eigensolve(g).lambda1
        true_gap = delta - lam
        logger.warning("Margin below %.0e for %s on %s; re-evaluated with the dense oracle",
                       ESCALATION_MARGIN, ", ".join(e.name for e in close), graph6.encode(g))
        _judge(entries, true_gap)

    return BoundReport(graph6=graph6.encode(g), n=g.n, m=g.m, delta=delta, k=k, D=D,
                       lambda1=lam, true_gap=true_gap, entries=entries)


# --- Edge-deleted regular graphs ---

@dataclass
class SubgraphCheck:
    gap: float
    bound: float
    holds: bool
    margin: float
    k: int
    removed: Optional[tuple[int, int]] = None


def _check_regular_host(g: Graph):
    if not is_connected(g) or not g.is_regular:
        raise GraphError("the host graph must be connected and regular")


def subgraph_gap_check(g_regular: Graph, h: Graph, embedding: Optional[list[int]] = None,
                       k: Optional[int] = None) -> SubgraphCheck:
    """Delta - lambda1(h) against main2_subgraph_bound(n, Delta, kappa(G)).

    `embedding[v]` is the host vertex of h's vertex v (identity by default);
    the embedded edge set must be a proper subset of the host's.
    """
    _check_regular_host(g_regular)
    if embedding is None:
        if h.n > g_regular.n:
            raise GraphError("subgraph has more vertices than the host")
        embedding = list(range(h.n))
    if len(embedding) != h.n or len(set(embedding)) != h.n or \
            any(not 0 <= v < g_regular.n for v in embedding):
        raise GraphError("embedding must map the subgraph's vertices injectively into the host")
    for u, v in h.edges():
        if not g_regular.has_edge(embedding[u], embedding[v]):
            raise GraphError(f"edge ({u}, {v}) maps to a non-edge of the host")
    if h.m >= g_regular.m:
        raise GraphError("subgraph is not proper: no host edge is missing")

    delta = g_regular.max_degree
    k = vertex_connectivity(g_regular) if k is None else k
    bound = main2_subgraph_bound(g_regular.n, delta, k)
    gap = delta - lambda1(h)
    if abs(gap - bound) < ESCALATION_MARGIN and h.n <= DENSE_MAX_ORDER:
        gap = delta - dense_eigensolve(h).lambda1
    return SubgraphCheck(gap=gap, bound=bound, holds=gap > bound, margin=gap - bound, k=k)


def edge_deletion_sweep(g_regular: Graph) -> list[SubgraphCheck]:
    """subgraph_gap_check for G - e, for every edge e of a connected regular G."""
    _check_regular_host(g_regular)
    k = vertex_connectivity(g_regular)
    checks = []
    for e in g_regular.edges():
        check = subgraph_gap_check(g_regular, g_regular.with_edges(remove=[e]), k=k)
        check.removed = e
        checks.append(check)
    failed = sum(1 for c in checks if not c.holds)
    if failed:
        logger.warning("%d of %d edge deletions violate the subgraph bound", failed, len(checks))
    return checks


# --- Identities and gates ---

@dataclass
class GapDecomposition:
    gap: float
    degree_deficit: float
    edge_variation: float

    @property
    def residual(self) -> float:
        return abs(self.gap - self.degree_deficit - self.edge_variation)


def gap_decomposition(g: Graph) -> GapDecomposition:
    """Delta - lambda1 = sum_w (Delta - d(w)) x_w^2 + sum_{uv in E} (x_u - x_v)^2 on the Perron vector."""
    result = spectral_radius(g)
    x = result.eigenvector
    delta = g.max_degree
    deficit = float(sum((delta - g.degree(w)) * x[w] ** 2 for w in range(g.n)))
    variation = float(sum((x[u] - x[v]) ** 2 for u, v in g.edges()))
    return GapDecomposition(gap=delta - result.lambda1, degree_deficit=deficit, edge_variation=variation)


@dataclass
class GateCheck:
    vertex: int
    degree: int
    triggered: bool
    holds: bool


def max_entry_gate(g: Graph, tol: float = 1e-9) -> GateCheck:
    """If the largest Perron entry sits on a vertex of degree < Delta, lambda1 <= Delta - 1."""
    result = spectral_radius(g)
    w = int(np.argmax(result.eigenvector))
    triggered = g.degree(w) < g.max_degree
    holds = not triggered or result.lambda1 <= g.max_degree - 1 + tol
    return GateCheck(vertex=w, degree=g.degree(w), triggered=triggered, holds=holds)


# --- Comparisons ---

@dataclass
class BoundComparison:
    pair: tuple[str, str]
    region: str
    counts: dict = field(default_factory=dict)
    instances: list[dict] = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    def record(self, label: str, first: float, second: float, **extra):
        if abs(first - second) <= STRICT_MARGIN:
            winner = "tie"
        else:
            winner = self.pair[0] if first > second else self.pair[1]
        self.counts[winner] = self.counts.get(winner, 0) + 1
        self.instances.append({"instance": label, self.pair[0]: first, self.pair[1]: second,
                               "winner": winner, **extra})
        return winner


def remark_comparison_trees(n: int, trees: Optional[list[Graph]] = None) -> BoundComparison:
    """cioaba (true diameter) against main1 (k = 1) over every tree of order n.

    Also counts on how many trees main1 beats stevanovic.
    """
    if trees is None:
        from src.enumeration import enumerate_trees
        trees = [entry.graph for entry in enumerate_trees(n).catalog]
    comparison = BoundComparison(pair=(CIOABA, MAIN1), region=f"trees n={n}",
                                 counts={CIOABA: 0, MAIN1: 0, "tie": 0})
    over_stevanovic = 0
    for t in trees:
        if t.n < 3:
            continue
        D = diameter(t)
        first = cioaba_bound(t.n, D)
        second = main1_bound(t.n, t.m, t.max_degree, 1)
        comparison.record(graph6.encode(t), first, second, delta=t.max_degree, D=D)
        if second > stevanovic_bound(t.n, t.max_degree) + STRICT_MARGIN:
            over_stevanovic += 1
    comparison.checks = {"trees": len(comparison.instances), "main1_over_stevanovic": over_stevanovic}
    logger.info("Trees n=%d: %s wins %d, %s wins %d, ties %d", n, CIOABA, comparison.counts[CIOABA],
                MAIN1, comparison.counts[MAIN1], comparison.counts["tie"])
    return comparison


def dominance_grid_main1(n_max: int = 30) -> BoundComparison:
    """main1 against chen_hou over 3 <= n <= n_max, 1 <= k <= n-2, k+1 <= Delta <= n-1.

    The comparison does not depend on m beyond n*Delta - 2m >= 1, so m is taken
    as large as the parity allows.
    """
    comparison = BoundComparison(pair=(MAIN1, CHEN_HOU), region=f"n<={n_max}",
                                 counts={MAIN1: 0, CHEN_HOU: 0, "tie": 0})
    for n in range(3, n_max + 1):
        for k in range(1, n - 1):
            for delta in range(k + 1, n):
                m = (n * delta - 1) // 2
                comparison.record(f"n={n},delta={delta},k={k}", main1_bound(n, m, delta, k),
                                  chen_hou_connectivity_bound(n, m, delta, k))
    comparison.checks = {"grid_points": len(comparison.instances),
                         "equality_cases": comparison.counts["tie"]}
    if comparison.counts[CHEN_HOU] or comparison.counts["tie"]:
        logger.warning("main1 fails to dominate chen_hou on %d grid points (%d ties)",
                       comparison.counts[CHEN_HOU], comparison.counts["tie"])
    return comparison


def dominance_grid_main2(k_values=range(2, 11), t_values=range(1, 51)) -> BoundComparison:
    """main2 against chen_hou_subgraph over k and t = n - Delta, with the Phi identity.

    Delta is taken as max(k, 3); both the bound values and the sign of
    Phi2 - Phi1 (direct and expanded) are recorded.
    """
    comparison = BoundComparison(pair=(MAIN2, CHEN_HOU_SUBGRAPH), region="k x (n - delta)",
                                 counts={MAIN2: 0, CHEN_HOU_SUBGRAPH: 0, "tie": 0})
    identity_failures = 0
    nonpositive = 0
    for k in k_values:
        delta = max(k, 3)
        for t in t_values:
            n = delta + t
            direct, expanded = phi_difference(n, delta, k)
            if abs(direct - expanded) > 1e-9:
                identity_failures += 1
            if direct <= 0:
                nonpositive += 1
            comparison.record(f"k={k},t={t}", main2_subgraph_bound(n, delta, k),
                              chen_hou_subgraph_bound(n, delta, k), phi_direct=direct, phi_expanded=expanded)
    comparison.checks = {"grid_points": len(comparison.instances),
                         "identity_failures": identity_failures, "phi_nonpositive": nonpositive}
    return comparison
