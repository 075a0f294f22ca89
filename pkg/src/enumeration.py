"""Isomorph-free catalogs of small graph classes and the experiments run on them."""

import logging
import math
import time
from dataclasses import dataclass, field
from functools import partial
from typing import Optional

from src import database, graph6
from src.bounds import IRREGULAR_BOUNDS, BoundReport, bound_report
from src.canonical import are_isomorphic
from src.config import get_settings
from src.constructions import SUBCUBIC, build_bn, unsaturated_vertices
from src.errors import GraphError, NonConvergenceError, ScaleCapError, ToolkitError
from src.generators import BipartiteGenerator, ConnectedGenerator, TreeGenerator
from src.graph_core import Graph, bipartition, components, cut_edges, degree_sequence
from src.parallel import parallel_map
from src.rewiring import find_bad_pairs
from src.spectral import EQUALITY_MARGIN, dense_eigensolve, path_lambda, principal_eigenpair_cmp, spectral_radius

logger = logging.getLogger(__name__)

TREE_MAX_ORDER = 12
SUBCUBIC_MAX_ORDER = 12
CONNECTED_MAX_ORDER = 9
EXPLORATION_MAX_ORDER = 10


@dataclass(frozen=True)
class ClassDescriptor:
    n: int
    delta_max: int
    connected: bool = True
    bipartite: bool = False
    tree: bool = False

    @property
    def key(self) -> str:
        flags = [name for name in ("connected", "bipartite", "tree") if getattr(self, name)]
        return f"n={self.n},delta<={self.delta_max}," + ",".join(flags)

    @property
    def max_order(self) -> int:
        if self.tree:
            return TREE_MAX_ORDER
        if self.delta_max <= SUBCUBIC:
            return SUBCUBIC_MAX_ORDER
        if self.bipartite:
            return EXPLORATION_MAX_ORDER
        return CONNECTED_MAX_ORDER

    def generator(self):
        if self.tree:
            return TreeGenerator(self.delta_max)
        if self.bipartite:
            return BipartiteGenerator(self.delta_max)
        return ConnectedGenerator(self.delta_max)


@dataclass
class CatalogEntry:
    graph6: str
    graph: Graph
    lambda1: float


@dataclass
class EnumerationRun:
    descriptor: ClassDescriptor
    catalog: list[CatalogEntry]
    argmax: Optional[CatalogEntry] = None
    runner_up: Optional[CatalogEntry] = None
    runner_up_margin: float = math.inf
    unique: bool = True
    stats: dict = field(default_factory=dict)

    def extremal_members(self) -> list[CatalogEntry]:
        """Irregular members whose maximum degree is exactly delta_max."""
        return [e for e in self.catalog
                if not e.graph.is_regular and e.graph.max_degree == self.descriptor.delta_max]


def _extend_chunk(generator, parent_keys: list[str]) -> tuple[list[str], Optional[dict]]:
    children, failure = generator.extend_safe([graph6.decode(key) for key in parent_keys])
    return sorted(children), failure


def _lambda_chunk(keys: list[str]) -> list[float]:
    return [dense_eigensolve(graph6.decode(key)).lambda1 for key in keys]


def _generate(descriptor: ClassDescriptor, threads: int) -> tuple[list[str], list[int]]:
    generator = descriptor.generator()
    level = sorted(graph6.encode(g) for g in generator.seeds())
    sizes = [len(level)]
    for order in range(2, descriptor.n + 1):
        results = parallel_map(partial(_extend_chunk, generator), level, threads=threads)
        failures = [failure for _, failure in results if failure]
        if failures:
            raise ToolkitError(f"extension to order {order} failed in {len(failures)} batches: "
                               f"{failures[0]['error_message']}")
        level = sorted({key for keys, _ in results for key in keys})
        sizes.append(len(level))
        logger.info("%s: %d graphs on %d vertices", generator.__class__.__name__, len(level), order)
    return level, sizes


def _rank(run: EnumerationRun):
    """Argmax of lambda1 over the extremal members, with the runner-up margin."""
    pool = sorted(run.extremal_members(), key=lambda e: (-e.lambda1, e.graph6))
    if not pool:
        return
    run.argmax = pool[0]
    if len(pool) == 1:
        return
    run.runner_up = pool[1]
    margin = pool[0].lambda1 - pool[1].lambda1
    if margin < EQUALITY_MARGIN:
        tied = principal_eigenpair_cmp(pool[0].graph, pool[1].graph, pool[0].lambda1, pool[1].lambda1) == 0
        if tied and not are_isomorphic(pool[0].graph, pool[1].graph):
            logger.warning("%s: lambda1 tie between %s and %s", run.descriptor.key,
                           pool[0].graph6, pool[1].graph6)
            run.unique = False
    run.runner_up_margin = margin


def enumerate_class(n: int, delta_max: int, bipartite: bool = False, tree: bool = False,
                    connected: bool = True, threads: Optional[int] = None,
                    use_cache: Optional[bool] = None) -> EnumerationRun:
    """Complete duplicate-free catalog of a connected class, with lambda1 and its argmax.

    Catalog graphs are canonically labeled and sorted by graph6.
    """
    if not connected:
        raise GraphError("only connected classes are generated")
    if n < 1:
        raise GraphError(f"a class needs n >= 1, got n={n}")
    descriptor = ClassDescriptor(n=n, delta_max=max(delta_max, 1), bipartite=bipartite, tree=tree)
    if n > descriptor.max_order:
        raise ScaleCapError(f"{descriptor.key} exceeds the enumeration cap n <= {descriptor.max_order}")
    settings = get_settings()
    threads = settings.threads if threads is None else threads
    use_cache = settings.use_cache if use_cache is None else use_cache

    start = time.time()
    cached = None
    if use_cache:
        database.init_db()
        cached = database.get_catalog(descriptor.key)
    if cached is not None:
        logger.info("Loaded %d graphs for %s from the catalog cache", len(cached), descriptor.key)
        catalog = [CatalogEntry(key, graph6.decode(key), lam) for key, lam in cached]
        stats = {"source": "cache"}
    else:
        keys, sizes = _generate(descriptor, threads)
        lambdas = [lam for chunk in parallel_map(_lambda_chunk, keys, threads=threads) for lam in chunk]
        catalog = [CatalogEntry(key, graph6.decode(key), lam) for key, lam in zip(keys, lambdas)]
        stats = {"source": "generated", "level_sizes": sizes}
        if use_cache:
            database.save_run(descriptor.key, n, descriptor.delta_max, bipartite, tree,
                              [(e.graph6, e.lambda1) for e in catalog], time.time() - start)

    run = EnumerationRun(descriptor=descriptor, catalog=catalog, stats=stats)
    _rank(run)
    run.stats["size"] = len(catalog)
    run.stats["runtime_seconds"] = round(time.time() - start, 3)
    logger.info("%s: %d graphs, argmax %s (margin %.3g)", descriptor.key, len(catalog),
                run.argmax.graph6 if run.argmax else "-", run.runner_up_margin)
    return run


def enumerate_trees(n: int, **kwargs) -> EnumerationRun:
    return enumerate_class(n, max(n - 1, 1), tree=True, **kwargs)


def enumerate_connected(n: int, delta_max: Optional[int] = None, **kwargs) -> EnumerationRun:
    return enumerate_class(n, delta_max if delta_max is not None else max(n - 1, 1), **kwargs)


def enumerate_subcubic_bipartite(n: int, **kwargs) -> EnumerationRun:
    return enumerate_class(n, SUBCUBIC, bipartite=True, **kwargs)


# --- Structural audit of the subcubic maximal graph ---

@dataclass
class MaximalAudit:
    n: int
    graph6: str = ""
    degree_sequence: str = ""
    lambda1: float = math.nan
    runner_up_margin: float = math.nan
    unique: bool = False
    degree_pattern_ok: bool = False
    two_unsaturated: bool = False
    no_degree2_bridge: bool = False
    bridges_separate_unsaturated: bool = False
    isomorphic_to_bn: bool = False
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def expected_degree_parts(n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Degree pattern of the maximal subcubic bipartite graph by parity of n."""
    if n % 2 == 0:
        half = (3,) * (n // 2 - 1) + (2,)
        return half, half
    return (3,) * ((n - 1) // 2), (3,) * ((n - 1) // 2 - 1) + (2, 1)


def verify_maximal_structure(run: EnumerationRun, delta: int = SUBCUBIC) -> MaximalAudit:
    n = run.descriptor.n
    audit = MaximalAudit(n=n)
    if not run.descriptor.bipartite or run.descriptor.delta_max != delta or n < 6:
        raise GraphError("the maximal-structure audit needs a subcubic bipartite run with n >= 6")
    if run.argmax is None:
        audit.violations.append("no irregular member with maximum degree 3")
        return audit
    g = run.argmax.graph
    audit.graph6 = run.argmax.graph6
    audit.lambda1 = run.argmax.lambda1
    audit.runner_up_margin = run.runner_up_margin
    audit.unique = run.unique and run.runner_up_margin > EQUALITY_MARGIN

    seq = degree_sequence(g, bipartition(g))
    audit.degree_sequence = str(seq)
    audit.degree_pattern_ok = seq.parts == expected_degree_parts(n)

    unsat = unsaturated_vertices(g, delta)
    audit.two_unsaturated = len(unsat) == 2

    bridges = cut_edges(g)
    audit.no_degree2_bridge = not any(g.degree(a) == 2 or g.degree(b) == 2 for a, b in bridges)
    audit.bridges_separate_unsaturated = audit.two_unsaturated and all(
        not _joined(g.with_edges(remove=[e]), unsat[0], unsat[1]) for e in bridges
    )

    bn, _ = build_bn(n)
    audit.isomorphic_to_bn = are_isomorphic(g, bn)

    checks = {
        "unique argmax": audit.unique,
        "degree sequence pattern": audit.degree_pattern_ok,
        "exactly two unsaturated vertices": audit.two_unsaturated,
        "no degree-2 vertex on a cut edge": audit.no_degree2_bridge,
        "cut edges separate the unsaturated vertices": audit.bridges_separate_unsaturated,
        "argmax isomorphic to B_n": audit.isomorphic_to_bn,
    }
    audit.violations = [name for name, ok in checks.items() if not ok]
    if audit.violations:
        logger.warning("Maximal graph audit n=%d FAILED: %s", n, "; ".join(audit.violations))
    return audit


def _joined(g: Graph, a: int, b: int) -> bool:
    return any(a in comp and b in comp for comp in components(g))


# --- Conjecture scan ---

@dataclass
class ConjectureRow:
    n: int
    delta: int
    lambda1: float = math.nan
    conjecture_ratio: float = math.nan
    bn_ratio: float = math.nan
    iterations: int = 0
    residual: float = math.nan
    error: Optional[str] = None
    exit_code: int = 0


def _conjecture_row(n: int, delta: int, tol: float) -> ConjectureRow:
    """One scan row; errors are recorded in the row, never raised."""
    row = ConjectureRow(n=n, delta=delta)
    try:
        if delta == 2:
            lam = path_lambda(n)
        elif delta == SUBCUBIC:
            g, _ = build_bn(n)
            max_iter = max(get_settings().max_iter, 10 * n * n)
            try:
                result = spectral_radius(g, tol=tol, max_iter=max_iter)
            except NonConvergenceError as e:
                row.error = str(e)
                row.exit_code = e.exit_code
                result = e.best
            lam, row.iterations, row.residual = result.lambda1, result.iterations, result.residual
        else:
            raise GraphError(f"no extremal construction is known for delta={delta}")
        row.lambda1 = lam
        row.bn_ratio = n * n * (delta - lam)
        row.conjecture_ratio = row.bn_ratio / (delta - 1)
    except Exception as e:
        row.error = f"{type(e).__name__}: {e}"
        row.exit_code = getattr(e, "exit_code", 1)
        logger.error("Conjecture row n=%d failed: %s", n, row.error)
    return row


def conjecture_scan(n_values: list[int], delta: int = SUBCUBIC, tol: Optional[float] = None) -> list[ConjectureRow]:
    """n^2 (Delta - lambda1)/(Delta - 1) and n^2 (Delta - lambda1) along the extremal family.

    delta=3 uses B_n (n >= 6), delta=2 the path P_n.
    """
    tol = get_settings().conjecture_tol if tol is None else tol
    rows = []
    for n in n_values:
        row = _conjecture_row(n, delta, tol)
        logger.info("n=%d lambda1=%.12f ratio=%.6f bn_ratio=%.6f", n, row.lambda1,
                    row.conjecture_ratio, row.bn_ratio)
        rows.append(row)
    return rows


# --- Experiments over catalogs ---

@dataclass
class SweepResult:
    graphs_checked: int = 0
    violations: list[tuple[str, str, float]] = field(default_factory=list)
    holds: dict = field(default_factory=dict)
    min_margin: dict = field(default_factory=dict)


def _report_chunk(keys: list[str]) -> list[BoundReport]:
    return [bound_report(graph6.decode(key)) for key in keys]


def validity_sweep(n_values, threads: Optional[int] = None) -> SweepResult:
    """Check the four irregular-graph bounds on every connected irregular graph of the given orders."""
    result = SweepResult(holds={name: 0 for name in IRREGULAR_BOUNDS},
                         min_margin={name: math.inf for name in IRREGULAR_BOUNDS})
    for n in n_values:
        run = enumerate_connected(n, threads=threads)
        keys = [e.graph6 for e in run.catalog if not e.graph.is_regular]
        for chunk in parallel_map(_report_chunk, keys, threads=threads):
            for report in chunk:
                result.graphs_checked += 1
                for name in IRREGULAR_BOUNDS:
                    entry = report.entry(name)
                    if not entry.applicable:
                        result.violations.append((report.graph6, name, math.nan))
                    elif entry.margin > 0:
                        result.holds[name] += 1
                        result.min_margin[name] = min(result.min_margin[name], entry.margin)
                    else:
                        result.violations.append((report.graph6, name, entry.margin))
        logger.info("Validity sweep n=%d: %d irregular graphs checked", n, len(keys))
    if result.violations:
        logger.warning("Validity sweep found %d violations", len(result.violations))
    return result


@dataclass
class CensusRow:
    degree_sequence: str
    members: int
    bad_pair_free: int
    free_not_maximal: int
    maximum_is_free: bool
    max_lambda1: float


def bad_pair_census(run: EnumerationRun) -> list[CensusRow]:
    """Per bipartite degree sequence: how many members have no bad pair, and how many of
    those are not the group maximum (local optima of the two-switch climb)."""
    groups: dict[str, list[CatalogEntry]] = {}
    for entry in run.extremal_members():
        groups.setdefault(str(degree_sequence(entry.graph, bipartition(entry.graph))), []).append(entry)
    rows = []
    for seq in sorted(groups):
        members = groups[seq]
        top = max(e.lambda1 for e in members)
        free = [e for e in members
                if not find_bad_pairs(e.graph, dense_eigensolve(e.graph).eigenvector, preserve_bipartite=True)]
        local = [e for e in free if e.lambda1 < top - EQUALITY_MARGIN]
        rows.append(CensusRow(
            degree_sequence=seq,
            members=len(members),
            bad_pair_free=len(free),
            free_not_maximal=len(local),
            maximum_is_free=any(e.lambda1 >= top - EQUALITY_MARGIN for e in free),
            max_lambda1=top,
        ))
    return rows


def explore_delta(n: int, delta: int, **kwargs) -> EnumerationRun:
    """Argmax candidates for bipartite classes with delta >= 4 at small n.

    No theorem covers these classes; the run is labelled conjectural.
    """
    if delta < 4:
        raise GraphError("exploration is for delta >= 4; use enumerate_subcubic_bipartite for delta <= 3")
    run = enumerate_class(n, delta, bipartite=True, **kwargs)
    run.stats["status"] = "conjectural"
    if run.argmax is not None:
        g = run.argmax.graph
        run.stats["argmax_degree_sequence"] = str(degree_sequence(g, bipartition(g)))
        logger.info("Conjectural maximal candidate for n=%d, delta=%d: %s %s", n, delta,
                    run.argmax.graph6, run.stats["argmax_degree_sequence"])
    return run
