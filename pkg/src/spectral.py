"""Spectral radius and principal eigenvector of adjacency matrices."""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from src.config import get_settings
from src.errors import GraphError, NonConvergenceError, ScaleCapError
from src.graph_core import Graph, components, induced_subgraph, is_connected

logger = logging.getLogger(__name__)

POWER_SHIFTED = "power_shifted"
DENSE_ORACLE = "dense_oracle"

DENSE_MAX_ORDER = 64
EQUALITY_MARGIN = 1e-9
# matrices up to this order are stored dense for the power iteration
_DENSE_OPERATOR_ORDER = 64
_RESIDUAL_CHECK_EVERY = 8


@dataclass
class SpectralResult:
    lambda1: float
    eigenvector: np.ndarray
    iterations: int
    residual: float
    method: str


def adjacency_matrix(g: Graph) -> np.ndarray:
    A = np.zeros((g.n, g.n))
    for u, v in g.edges():
        A[u, v] = A[v, u] = 1.0
    return A


def _adjacency_operator(g: Graph):
    if g.n <= _DENSE_OPERATOR_ORDER:
        return adjacency_matrix(g)
    edges = g.edges()
    rows = [u for u, v in edges] + [v for u, v in edges]
    cols = [v for u, v in edges] + [u for u, v in edges]
    return sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))


def _power_iterate(g: Graph, tol: float, max_iter: int) -> SpectralResult:
    """Power iteration on A + I from the all-ones vector (g connected)."""
    A = _adjacency_operator(g)
    x = np.full(g.n, 1.0 / math.sqrt(g.n))
    lam, residual = 0.0, math.inf
    for it in range(1, max_iter + 1):
        y = A @ x
        if it % _RESIDUAL_CHECK_EVERY == 0 or it == 1:
            lam = float(x @ y)
            residual = float(np.max(np.abs(y - lam * x)))
            if residual <= tol:
                return SpectralResult(lam, x, it, residual, POWER_SHIFTED)
        z = y + x
        x = z / np.linalg.norm(z)
    y = A @ x
    lam = float(x @ y)
    residual = float(np.max(np.abs(y - lam * x)))
    best = SpectralResult(lam, x, max_iter, residual, POWER_SHIFTED)
    if residual <= tol:
        return best
    raise NonConvergenceError(
        f"power iteration stopped after {max_iter} iterations with residual {residual:.3e} > {tol:.1e}",
        best=best,
    )


def _per_component(g: Graph, solver) -> SpectralResult:
    """Perron data of the component with the largest lambda1, zero elsewhere."""
    if is_connected(g):
        return solver(g)
    best, best_comp = None, None
    for comp in components(g):
        result = solver(induced_subgraph(g, comp))
        if best is None or result.lambda1 > best.lambda1:
            best, best_comp = result, comp
    x = np.zeros(g.n)
    x[best_comp] = best.eigenvector
    return SpectralResult(best.lambda1, x, best.iterations, best.residual, best.method)


def spectral_radius(g: Graph, tol: float | None = None, max_iter: int | None = None) -> SpectralResult:
    """lambda1 and the unit Perron vector via shifted power iteration.

    Raises NonConvergenceError (carrying the best estimate) if the residual
    ||Ax - lambda x||_inf does not reach tol within max_iter iterations.
    """
    settings = get_settings()
    tol = settings.tol if tol is None else tol
    max_iter = settings.max_iter if max_iter is None else max_iter
    if tol <= 0:
        raise GraphError(f"tolerance must be positive, got {tol}")
    return _per_component(g, lambda h: _power_iterate(h, tol, max_iter))


def _dense_connected(g: Graph) -> SpectralResult:
    A = adjacency_matrix(g)
    w, V = np.linalg.eigh(A)
    lam = float(w[-1])
    x = np.abs(V[:, -1])
    x /= np.linalg.norm(x)
    residual = float(np.max(np.abs(A @ x - lam * x)))
    return SpectralResult(lam, x, 0, residual, DENSE_ORACLE)


def dense_eigensolve(g: Graph) -> SpectralResult:
    """Oracle: symmetric dense eigensolver on the explicit adjacency matrix."""
    if g.n > DENSE_MAX_ORDER:
        raise ScaleCapError(f"dense eigensolver supports n <= {DENSE_MAX_ORDER}, got {g.n}")
    return _per_component(g, _dense_connected)


def path_lambda(n: int) -> float:
    if n < 1:
        raise GraphError("path needs at least one vertex")
    return 2.0 * math.cos(math.pi / (n + 1))


def kn_minus_edge_lambda(n: int) -> float:
    if n < 3:
        raise GraphError("K_n minus an edge needs n >= 3")
    return (n - 3 + math.sqrt(n * n + 2 * n - 7)) / 2.0


def rayleigh(g: Graph, y) -> float:
    y = np.asarray(y, dtype=float)
    norm2 = float(y @ y)
    if norm2 <= 0:
        raise GraphError("Rayleigh quotient of the zero vector")
    numerator = 2.0 * sum(y[u] * y[v] for u, v in g.edges())
    return numerator / norm2


def lambda1(g: Graph, tol: float | None = None) -> float:
    """lambda1 by power iteration, falling back to the dense oracle on
    non-convergence for small graphs."""
    try:
        return spectral_radius(g, tol=tol).lambda1
    except NonConvergenceError as e:
        if g.n > DENSE_MAX_ORDER:
            raise
        logger.warning("Power iteration did not converge on n=%d (%s); using dense oracle", g.n, e)
        return dense_eigensolve(g).lambda1


def principal_eigenpair_cmp(g: Graph, h: Graph, lam_g: float | None = None,
                            lam_h: float | None = None) -> int:
    """Compare lambda1(g) with lambda1(h): -1, 0 or 1.

    Differences below EQUALITY_MARGIN are re-evaluated with the dense oracle;
    if still below the margin the two are reported equal.
    """
    a = lambda1(g) if lam_g is None else lam_g
    b = lambda1(h) if lam_h is None else lam_h
    if abs(a - b) < EQUALITY_MARGIN:
        if g.n > DENSE_MAX_ORDER or h.n > DENSE_MAX_ORDER:
            return 0
        a, b = dense_eigensolve(g).lambda1, dense_eigensolve(h).lambda1
        logger.debug("Escalated lambda1 comparison to dense oracle: %.15g vs %.15g", a, b)
        if abs(a - b) < EQUALITY_MARGIN:
            return 0
    return 1 if a > b else -1
