"""Graph value type and the structural predicates the rest of the toolkit consumes."""

import logging
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

import networkx as nx

from src.errors import GraphError, NotBipartiteError, ScaleCapError

logger = logging.getLogger(__name__)

INFINITE = math.inf
BRUTEFORCE_CONNECTIVITY_MAX_ORDER = 10


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Instances are immutable; every "mutation" returns a new graph.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    m: int

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in nbrs) for nbrs in self.adjacency)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(nbrs) for nbrs in self.adjacency)

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    @property
    def min_degree(self) -> int:
        return min(self.degrees)

    @property
    def is_regular(self) -> bool:
        return self.max_degree == self.min_degree

    @property
    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def with_edges(self, add: Iterable[tuple[int, int]] = (),
                   remove: Iterable[tuple[int, int]] = ()) -> "Graph":
        """Copy of the graph with edges removed, then added.

        Removing an absent edge or adding a present one is an error.
        """
        nbrs = [set(a) for a in self.adjacency]
        for u, v in remove:
            if v not in nbrs[u]:
                raise GraphError(f"edge ({u}, {v}) is not in the graph")
            nbrs[u].discard(v)
            nbrs[v].discard(u)
        for u, v in add:
            _check_pair(self.n, u, v)
            if v in nbrs[u]:
                raise GraphError(f"edge ({u}, {v}) is already in the graph")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return _from_neighbor_sets(self.n, nbrs)

    def relabel(self, perm: list[int] | tuple[int, ...]) -> "Graph":
        """Relabel vertices; `perm[old]` is the new label of `old`."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling is not a permutation of the vertices")
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges():
            nbrs[perm[u]].add(perm[v])
            nbrs[perm[v]].add(perm[u])
        return _from_neighbor_sets(self.n, nbrs)

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges())
        return G

    @classmethod
    def from_networkx(cls, G: nx.Graph) -> "Graph":
        """Convert with vertices labeled by the sorted order of G's nodes."""
        nodes = sorted(G.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        return build(len(nodes), [(index[a], index[b]) for a, b in G.edges()])


@dataclass(frozen=True)
class Bipartition:
    side: tuple[int, ...]  # 0 = X, 1 = Y

    @property
    def x(self) -> tuple[int, ...]:
        return tuple(v for v, s in enumerate(self.side) if s == 0)

    @property
    def y(self) -> tuple[int, ...]:
        return tuple(v for v, s in enumerate(self.side) if s == 1)

    @property
    def sizes(self) -> tuple[int, int]:
        return len(self.x), len(self.y)

    def consistent_with(self, g: Graph) -> bool:
        return len(self.side) == g.n and all(self.side[u] != self.side[v] for u, v in g.edges())


@dataclass(frozen=True)
class DegreeSequence:
    degrees: tuple[int, ...]
    parts: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None

    def __str__(self) -> str:
        if self.parts is None:
            return "(" + ",".join(map(str, self.degrees)) + ")"
        left, right = self.parts
        return "(" + ",".join(map(str, left)) + " | " + ",".join(map(str, right)) + ")"


def _check_pair(n: int, u: int, v: int):
    if not (0 <= u < n and 0 <= v < n):
        raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
    if u == v:
        raise GraphError(f"edge ({u}, {v}) is a self-loop")


def _from_neighbor_sets(n: int, nbrs: list[set[int]]) -> Graph:
    adjacency = tuple(tuple(sorted(s)) for s in nbrs)
    return Graph(n=n, adjacency=adjacency, m=sum(len(a) for a in adjacency) // 2)


def build(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on vertices 0..n-1; duplicate edges collapse."""
    if n < 1:
        raise GraphError(f"a graph needs at least one vertex, got n={n}")
    nbrs = [set() for _ in range(n)]
    for u, v in edges:
        _check_pair(n, u, v)
        nbrs[u].add(v)
        nbrs[v].add(u)
    return _from_neighbor_sets(n, nbrs)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Induced subgraph, relabeled so that the i-th listed vertex becomes i."""
    order = list(vertices)
    index = {v: i for i, v in enumerate(order)}
    edges = [(index[u], index[v]) for u, v in g.edges() if u in index and v in index]
    return build(len(order), edges)


def _reachable(g: Graph, start: int, banned: int = 0) -> int:
    """Bitmask of vertices reachable from start avoiding the banned mask."""
    seen = 1 << start
    frontier = seen
    masks = g.masks
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= masks[low.bit_length() - 1]
            frontier ^= low
        nxt &= ~seen & ~banned
        seen |= nxt
        frontier = nxt
    return seen


def is_connected(g: Graph) -> bool:
    return _reachable(g, 0) == (1 << g.n) - 1


def components(g: Graph) -> list[list[int]]:
    """Vertex sets of the connected components, ordered by smallest vertex."""
    remaining = (1 << g.n) - 1
    result = []
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = _reachable(g, start)
        result.append([v for v in range(g.n) if comp >> v & 1])
        remaining &= ~comp
    return result


def bipartition(g: Graph) -> Bipartition:
    """Two-colouring by BFS layering; each component starts on side X.

    Raises NotBipartiteError carrying an odd cycle when none exists.
    """
    side = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if side[w] == -1:
                    side[w] = 1 - side[u]
                    parent[w] = u
                    queue.append(w)
                elif side[w] == side[u]:
                    raise NotBipartiteError(_odd_cycle(parent, u, w))
    return Bipartition(side=tuple(side))


def _odd_cycle(parent: list[int], u: int, w: int) -> list[int]:
    """Close the BFS-tree paths of u and w through the edge uw."""
    path_u = [u]
    while parent[path_u[-1]] != -1:
        path_u.append(parent[path_u[-1]])
    path_w = [w]
    while parent[path_w[-1]] != -1:
        path_w.append(parent[path_w[-1]])
    on_u = set(path_u)
    while path_w[-1] in on_u and len(path_w) > 1 and path_w[-2] in on_u:
        path_w.pop()
    lca = path_w[-1]
    cycle = path_u[: path_u.index(lca) + 1]
    cycle.extend(reversed(path_w[:-1]))
    return cycle


def is_bipartite(g: Graph) -> bool:
    try:
        bipartition(g)
    except NotBipartiteError:
        return False
    return True


def _local_connectivity(g: Graph, s: int, t: int, cutoff: int) -> int:
    """Maximum number of internally vertex-disjoint s-t paths, capped at cutoff.

    Unit-capacity augmenting paths on the split-vertex digraph: vertex v
    becomes 2v (in) -> 2v+1 (out); an edge uv becomes out(u)->in(v) and
    out(v)->in(u).
    """
    residual = [dict() for _ in range(2 * g.n)]

    def arc(a, b):
        residual[a][b] = residual[a].get(b, 0) + 1
        residual[b].setdefault(a, 0)

    for v in range(g.n):
        arc(2 * v, 2 * v + 1)
    for u, v in g.edges():
        arc(2 * u + 1, 2 * v)
        arc(2 * v + 1, 2 * u)

    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < cutoff:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b, cap in residual[a].items():
                if cap > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while parent[b] is not None:
            a = parent[b]
            residual[a][b] -= 1
            residual[b][a] += 1
            b = a
        flow += 1
    return flow


def vertex_connectivity(g: Graph) -> int:
    """Size of a minimum vertex cut (n-1 for complete graphs, 0 if disconnected).

    Only pairs (v_i, w) with i <= current best and w > i are tried: some vertex
    among the first k+1 lies outside any minimum cut of size k.
    """
    if g.n < 2:
        raise GraphError("vertex connectivity is undefined for fewer than 2 vertices")
    if not is_connected(g):
        return 0
    if g.is_complete:
        return g.n - 1
    best = g.min_degree
    i = 0
    while i <= best and i < g.n:
        for j in range(i + 1, g.n):
            if not g.has_edge(i, j):
                best = min(best, _local_connectivity(g, i, j, best))
        i += 1
    return best


def vertex_connectivity_bruteforce(g: Graph) -> int:
    """Exhaustive cut-subset search; the oracle for vertex_connectivity."""
    if g.n < 2:
        raise GraphError("vertex connectivity is undefined for fewer than 2 vertices")
    if g.n > BRUTEFORCE_CONNECTIVITY_MAX_ORDER:
        raise ScaleCapError(f"brute-force connectivity supports n <= {BRUTEFORCE_CONNECTIVITY_MAX_ORDER}")
    everything = (1 << g.n) - 1
    for size in range(0, g.n - 1):
        for cut in combinations(range(g.n), size):
            banned = sum(1 << v for v in cut)
            start = next(v for v in range(g.n) if not banned >> v & 1)
            if _reachable(g, start, banned) != everything & ~banned:
                return size
    return g.n - 1


def _bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] == -1:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def diameter(g: Graph) -> int | float:
    """Largest BFS distance; INFINITE for disconnected graphs."""
    best = 0
    for v in range(g.n):
        dist = _bfs_distances(g, v)
        if -1 in dist:
            return INFINITE
        best = max(best, max(dist))
    return best


def _low_link(g: Graph) -> tuple[list[tuple[int, int]], list[int]]:
    """Bridges and articulation points by iterative DFS low-link."""
    disc = [-1] * g.n
    low = [0] * g.n
    bridges = []
    articulation = set()
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, iter(g.adjacency[root]))]
        while stack:
            v, parent, it = stack[-1]
            descended = False
            for w in it:
                if w == parent:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(g.adjacency[w])))
                    descended = True
                    break
                low[v] = min(low[v], disc[w])
            if descended:
                continue
            stack.pop()
            if not stack:
                continue
            p, grandparent, _ = stack[-1]
            low[p] = min(low[p], low[v])
            if low[v] > disc[p]:
                bridges.append((min(p, v), max(p, v)))
            if grandparent == -1:
                root_children += 1
            elif low[v] >= disc[p]:
                articulation.add(p)
        if root_children > 1:
            articulation.add(root)
    return sorted(bridges), sorted(articulation)


def cut_edges(g: Graph) -> list[tuple[int, int]]:
    return _low_link(g)[0]


def cut_vertices(g: Graph) -> list[int]:
    return _low_link(g)[1]


def degree_sequence(g: Graph, bip: Optional[Bipartition] = None) -> DegreeSequence:
    """Descending degree sequence; with a bipartition also the (a | b) pair.

    The part whose descending sequence is lexicographically larger is listed
    first, which makes the pair independent of which side is called X.
    """
    degrees = tuple(sorted(g.degrees, reverse=True))
    if bip is None:
        return DegreeSequence(degrees=degrees)
    if not bip.consistent_with(g):
        raise GraphError("bipartition is inconsistent with the graph")
    x = tuple(sorted((g.degree(v) for v in bip.x), reverse=True))
    y = tuple(sorted((g.degree(v) for v in bip.y), reverse=True))
    parts = (x, y) if x >= y else (y, x)
    return DegreeSequence(degrees=degrees, parts=parts)
