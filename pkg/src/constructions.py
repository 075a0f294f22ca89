"""Builders for the named graph families, centrally the extremal family B_n."""

import logging
from dataclasses import dataclass, field

import networkx as nx

from src.errors import GraphError
from src.graph_core import Bipartition, Graph, build

logger = logging.getLogger(__name__)

SUBCUBIC = 3

# K_{3,3} on X = {0,1,2}, Y = {3,4,5} without the edge 2-5
_B6_EDGES = [(x, y) for x in range(3) for y in range(3, 6) if (x, y) != (2, 5)]


def build_bn(n: int) -> tuple[Graph, Bipartition]:
    """B_n with its bipartition.

    B_6 is K_{3,3} minus an edge. B_n for odd n adds a pendant vertex at the
    lowest-labeled unsaturated vertex of B_{n-1}; for even n the new vertex is
    joined to both unsaturated vertices. Vertex n-1 is the one added last.
    """
    if n < 6:
        raise GraphError(f"B_n is defined for n >= 6, got n={n}")
    edges = list(_B6_EDGES)
    side = [0, 0, 0, 1, 1, 1]
    degree = [3, 3, 2, 3, 3, 2]
    unsaturated = [2, 5]
    for new in range(6, n):
        attach = unsaturated[:1] if (new + 1) % 2 == 1 else list(unsaturated)
        if len({side[v] for v in attach}) != 1:
            raise GraphError(f"unsaturated vertices {attach} of B_{new} lie on both sides")
        side.append(1 - side[attach[0]])
        degree.append(len(attach))
        for v in attach:
            edges.append((v, new))
            degree[v] += 1
        unsaturated = sorted(v for v in unsaturated + [new] if degree[v] < SUBCUBIC)
    return build(n, edges), Bipartition(side=tuple(side))


def unsaturated_vertices(g: Graph, delta: int) -> list[int]:
    if delta < g.max_degree:
        raise GraphError(f"delta={delta} is below the maximum degree {g.max_degree}")
    return [v for v in range(g.n) if g.degree(v) < delta]


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...] = field(default_factory=tuple)

    def __str__(self) -> str:
        return f"{self.family}({','.join(map(str, self.params))})"


def _need(spec: FamilySpec, count: int, minimum: int):
    if len(spec.params) != count:
        raise GraphError(f"{spec.family} takes {count} parameter(s), got {len(spec.params)}")
    for p in spec.params:
        if p < minimum:
            raise GraphError(f"{spec.family} parameters must be >= {minimum}, got {spec.params}")


def _complete_minus_edge(n: int) -> nx.Graph:
    G = nx.complete_graph(n)
    G.remove_edge(0, 1)
    return G


# family -> (parameter count, minimum parameter value, networkx builder)
_FAMILIES = {
    "path": (1, 1, nx.path_graph),
    "complete": (1, 1, nx.complete_graph),
    "complete_minus_edge": (1, 3, _complete_minus_edge),
    "complete_bipartite": (2, 1, nx.complete_bipartite_graph),
    "star": (1, 1, nx.star_graph),
    "cycle": (1, 3, nx.cycle_graph),
    "hypercube": (1, 1, nx.hypercube_graph),
    "petersen": (0, 0, nx.petersen_graph),
}

FAMILY_NAMES = ("bn",) + tuple(_FAMILIES)


def build_family(spec: FamilySpec) -> Graph:
    """Deterministically labeled member of a named family.

    star(k) is K_{1,k} with centre 0; complete_bipartite(a, b) puts the a-side
    on 0..a-1; complete_minus_edge(n) is K_n without the edge 0-1.
    """
    if spec.family == "bn":
        _need(spec, 1, 6)
        return build_bn(spec.params[0])[0]
    if spec.family not in _FAMILIES:
        raise GraphError(f"unknown family {spec.family!r}; choose from {', '.join(FAMILY_NAMES)}")
    count, minimum, builder = _FAMILIES[spec.family]
    _need(spec, count, minimum)
    g = Graph.from_networkx(builder(*spec.params))
    logger.debug("Built %s: n=%d m=%d", spec, g.n, g.m)
    return g
