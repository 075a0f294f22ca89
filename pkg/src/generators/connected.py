import logging
from itertools import combinations
from typing import Iterable

from src.graph_core import Graph

from .base_generator import BaseGenerator

logger = logging.getLogger(__name__)


class ConnectedGenerator(BaseGenerator):
    """All connected graphs with maximum degree at most delta_max."""

    name = "connected"

    def neighbor_sets(self, parent: Graph) -> Iterable[tuple[int, ...]]:
        open_vertices = [v for v in range(parent.n) if parent.degree(v) < self.delta_max]
        for size in range(1, min(self.delta_max, len(open_vertices)) + 1):
            yield from combinations(open_vertices, size)
