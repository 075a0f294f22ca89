"""Exception types shared by the toolkit. Each carries the CLI exit code."""


class ToolkitError(Exception):
    exit_code = 1


class GraphError(ToolkitError, ValueError):
    """Invalid graph, parameter or graph relation."""


class NotBipartiteError(GraphError):
    def __init__(self, witness: list[int]):
        self.witness = witness
        super().__init__(f"graph is not bipartite; odd cycle of length {len(witness)}: {witness}")


class InvalidMoveError(GraphError):
    """A two-switch or neighbor shift whose preconditions fail in the graph."""


class BoundInapplicable(ToolkitError, ValueError):
    """The hypotheses of a bound do not hold for the given parameters."""


class ScaleCapError(ToolkitError):
    exit_code = 3


class NonConvergenceError(ToolkitError, ArithmeticError):
    exit_code = 4

    def __init__(self, message: str, best=None):
        self.best = best
        super().__init__(message)
