from .bipartite import BipartiteGenerator
from .connected import ConnectedGenerator
from .trees import TreeGenerator

__all__ = ["BipartiteGenerator", "ConnectedGenerator", "TreeGenerator"]
