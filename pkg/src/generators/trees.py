from typing import Iterable

from src.graph_core import Graph

from .base_generator import BaseGenerator


class TreeGenerator(BaseGenerator):
    """Trees, grown one leaf at a time."""

    name = "tree"

    def neighbor_sets(self, parent: Graph) -> Iterable[tuple[int, ...]]:
        for v in range(parent.n):
            if parent.degree(v) < self.delta_max:
                yield (v,)
