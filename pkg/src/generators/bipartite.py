import logging
from itertools import combinations
from typing import Iterable

from src.graph_core import Graph, bipartition

from .base_generator import BaseGenerator

logger = logging.getLogger(__name__)


class BipartiteGenerator(BaseGenerator):
    """Connected bipartite graphs with maximum degree at most delta_max.

    The new vertex joins vertices of one side only, so bipartiteness and the
    degree cap hold for every child without a post-hoc filter.
    """

    name = "bipartite"

    def neighbor_sets(self, parent: Graph) -> Iterable[tuple[int, ...]]:
        bip = bipartition(parent)
        for side in (bip.x, bip.y):
            open_vertices = [v for v in side if parent.degree(v) < self.delta_max]
            for size in range(1, min(self.delta_max, len(open_vertices)) + 1):
                yield from combinations(open_vertices, size)
