"""Canonical labeling by colour refinement and individualization.

The canonical form of a graph is the relabeling whose graph6 bit string is
smallest among the leaves of the refinement search tree. Automorphisms found
while searching (plus twin transpositions found up front) prune children that
lie in one orbit of the pointwise stabilizer of the individualized prefix.
"""

import logging
from dataclasses import dataclass

from src import graph6
from src.errors import ScaleCapError
from src.graph_core import Graph

logger = logging.getLogger(__name__)

CANONICAL_MAX_ORDER = 16


@dataclass(frozen=True)
class CanonicalForm:
    graph6: str
    labeling: tuple[int, ...]  # labeling[v] = canonical label of v
    automorphisms: int

    def __eq__(self, other) -> bool:
        return isinstance(other, CanonicalForm) and self.graph6 == other.graph6

    def __hash__(self) -> int:
        return hash(self.graph6)


def _refine(masks: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Every round splits each cell by the vector of neighbour counts into all
    current cells; the pieces keep the cell's position, ordered by vector.
    """
    while True:
        cell_masks = [sum(1 << v for v in cell) for cell in cells]
        refined = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            signature = {v: tuple((masks[v] & cm).bit_count() for cm in cell_masks) for v in cell}
            keys = sorted(set(signature.values()))
            if len(keys) == 1:
                refined.append(cell)
                continue
            changed = True
            for key in keys:
                refined.append([v for v in cell if signature[v] == key])
        cells = refined
        if not changed:
            return cells


class _Search:
    def __init__(self, g: Graph):
        self.n = g.n
        self.masks = g.masks
        self.edges = g.edges()
        self.width = g.n * (g.n - 1) // 2
        self.generators: list[tuple[int, ...]] = []
        self.first_code = self.best_code = None
        self.first_perm = self.best_perm = None
        self.orbit_sizes: list[int] = []
        self._orbit_cache: dict[tuple[int, ...], tuple[int, list[int]]] = {}
        self._add_twin_transpositions()

    def _add_twin_transpositions(self):
        masks = self.masks
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if masks[u] & ~(1 << v) == masks[v] & ~(1 << u):
                    perm = list(range(self.n))
                    perm[u], perm[v] = v, u
                    self.generators.append(tuple(perm))

    def _orbits(self, prefix: tuple[int, ...]) -> list[int]:
        """Orbit representative per vertex under generators fixing prefix."""
        cached = self._orbit_cache.get(prefix)
        if cached is not None and cached[0] == len(self.generators):
            return cached[1]
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for gamma in self.generators:
            if any(gamma[p] != p for p in prefix):
                continue
            for v in range(self.n):
                a, b = find(v), find(gamma[v])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        reps = [find(v) for v in range(self.n)]
        self._orbit_cache[prefix] = (len(self.generators), reps)
        return reps

    def _code(self, perm: list[int]) -> int:
        code = 0
        top = self.width - 1
        for u, v in self.edges:
            a, b = perm[u], perm[v]
            if a > b:
                a, b = b, a
            code |= 1 << (top - (b * (b - 1) // 2 + a))
        return code

    def _record_automorphism(self, perm_a: list[int], perm_b: list[int]):
        inverse_a = [0] * self.n
        for v, pos in enumerate(perm_a):
            inverse_a[pos] = v
        gamma = tuple(inverse_a[perm_b[v]] for v in range(self.n))
        if any(gamma[v] != v for v in range(self.n)):
            self.generators.append(gamma)

    def _leaf(self, cells: list[list[int]]):
        perm = [0] * self.n
        for pos, cell in enumerate(cells):
            perm[cell[0]] = pos
        code = self._code(perm)
        if self.first_code is None:
            self.first_code = self.best_code = code
            self.first_perm = self.best_perm = perm
        elif code == self.first_code:
            self._record_automorphism(self.first_perm, perm)
        elif code == self.best_code:
            self._record_automorphism(self.best_perm, perm)
        elif code < self.best_code:
            self.best_code, self.best_perm = code, perm

    def explore(self, cells: list[list[int]], prefix: tuple[int, ...], first_path: bool):
        target = None
        for index, cell in enumerate(cells):
            if len(cell) > 1 and (target is None or len(cell) < len(cells[target])):
                target = index
        if target is None:
            self._leaf(cells)
            return
        cell = cells[target]
        explored: list[int] = []
        for v in cell:
            if explored:
                reps = self._orbits(prefix)
                if reps[v] in {reps[w] for w in explored}:
                    continue
            child = cells[:target] + [[v], [w for w in cell if w != v]] + cells[target + 1:]
            self.explore(_refine(self.masks, child), prefix + (v,), first_path and not explored)
            explored.append(v)
        if first_path:
            reps = self._orbits(prefix)
            self.orbit_sizes.append(sum(1 for w in cell if reps[w] == reps[cell[0]]))


def canonical_form(g: Graph) -> CanonicalForm:
    """Canonical graph6 string, the labeling that produces it and |Aut(g)|."""
    if g.n > CANONICAL_MAX_ORDER:
        raise ScaleCapError(f"canonical forms support n <= {CANONICAL_MAX_ORDER}, got n={g.n}")
    search = _Search(g)
    search.explore(_refine(g.masks, [list(range(g.n))]), (), True)
    automorphisms = 1
    for size in search.orbit_sizes:
        automorphisms *= size
    labeling = tuple(search.best_perm)
    return CanonicalForm(
        graph6=graph6.encode(g.relabel(labeling)),
        labeling=labeling,
        automorphisms=automorphisms,
    )


def canonical_key(g: Graph) -> str:
    return canonical_form(g).graph6


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees) != sorted(h.degrees):
        return False
    return canonical_key(g) == canonical_key(h)
