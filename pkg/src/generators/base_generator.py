import logging
from abc import ABC, abstractmethod
from typing import Iterable

from src.canonical import canonical_key
from src.graph_core import Graph, build, cut_vertices

logger = logging.getLogger(__name__)


def _removal_key(g: Graph, v: int) -> tuple:
    return (g.degree(v), tuple(sorted(g.degree(w) for w in g.adjacency[v])))


class BaseGenerator(ABC):
    """One-vertex extension step of an isomorph-free catalog of connected graphs.

    A child is kept only when its newest vertex is a removable vertex of least
    removal key (degree, then sorted neighbour degrees) among all non-cut
    vertices. Every connected graph has such a vertex, and deleting it yields a
    connected parent of the same class, so every isomorphism class is reached.
    The few classes reached more than once are merged by canonical form.
    """

    name = "connected"

    def __init__(self, delta_max: int):
        if delta_max < 1:
            raise ValueError(f"delta_max must be >= 1, got {delta_max}")
        self.delta_max = delta_max

    def seeds(self) -> list[Graph]:
        return [build(1, [])]

    @abstractmethod
    def neighbor_sets(self, parent: Graph) -> Iterable[tuple[int, ...]]:
        """Neighbour sets for the new vertex that keep the child in the class."""
        ...

    def _child(self, parent: Graph, nbrs: tuple[int, ...]) -> Graph:
        new = parent.n
        return build(new + 1, parent.edges() + [(v, new) for v in nbrs])

    @staticmethod
    def is_canonical_extension(child: Graph) -> bool:
        new = child.n - 1
        key = _removal_key(child, new)
        smaller = [v for v in range(new) if _removal_key(child, v) < key]
        if not smaller:
            return True
        cuts = set(cut_vertices(child))
        return all(v in cuts for v in smaller)

    def extend(self, parent: Graph) -> dict[str, Graph]:
        """Canonical children of one parent, keyed by canonical graph6."""
        children = {}
        for nbrs in self.neighbor_sets(parent):
            child = self._child(parent, nbrs)
            if self.is_canonical_extension(child):
                children.setdefault(canonical_key(child), child)
        return children

    def extend_safe(self, parents: list[Graph]) -> tuple[dict[str, Graph], dict | None]:
        """Extend a batch of parents; never raises.

        Returns (children, failure_info) where failure_info is None on success
        or a dict with failure_type and error_message.
        """
        children = {}
        try:
            for parent in parents:
                for key, child in self.extend(parent).items():
                    children.setdefault(key, child)
            return children, None
        except Exception as e:
            error_type = type(e).__name__
            logger.error("Generator %s failed on a batch of %d parents: %s: %s",
                         self.__class__.__name__, len(parents), error_type, e)
            return children, {"failure_type": error_type, "error_message": f"{error_type}: {e}"}
