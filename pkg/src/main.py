"""Command-line entry point: experiments over constructions, spectra, bounds and catalogs."""

import argparse
import csv
import logging
import math
import os
import sys

from dotenv import load_dotenv

load_dotenv(os.path.join(os.path.dirname(__file__), "..", ".env"))

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from src import graph6
from src.bounds import (
    IRREGULAR_BOUNDS,
    bound_report,
    dominance_grid_main1,
    dominance_grid_main2,
    edge_deletion_sweep,
    remark_comparison_trees,
)
from src.config import get_settings, override_settings
from src.constructions import FAMILY_NAMES, FamilySpec, build_family
from src.enumeration import (
    bad_pair_census,
    conjecture_scan,
    enumerate_class,
    enumerate_subcubic_bipartite,
    enumerate_trees,
    verify_maximal_structure,
)
from src.errors import GraphError, ToolkitError
from src.graph_core import diameter
from src.rewiring import POLICIES, hill_climb
from src.spectral import dense_eigensolve, spectral_radius

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"

logger = logging.getLogger(__name__)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.15g}"
    return str(value)


def write_csv(path: str, header: list[str], rows: list[list]):
    """CSV with a header row and 15 significant digits; '-' writes to stdout."""
    if path == "-":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([_fmt(v) for v in row] for row in rows)
        sys.stdout.flush()
        return
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([_fmt(v) for v in row] for row in rows)
    logger.info("Wrote %d rows to %s", len(rows), path)


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


# --- Subcommands ---

def cmd_construct(args) -> int:
    if args.family == "petersen":
        params = ()
    elif args.family == "complete_bipartite":
        if args.n is None:
            raise GraphError("complete_bipartite needs --n for the first side")
        if args.b is None:
            raise GraphError("complete_bipartite needs --b for the second side")
        params = (args.n, args.b)
    else:
        if args.n is None:
            raise GraphError(f"{args.family} needs --n")
        params = (args.n,)
    g = build_family(FamilySpec(args.family, params))
    if args.format == "graph6":
        graph6.write_graph6([g], args.out)
    else:
        write_csv(args.out, ["u", "v"], [list(e) for e in g.edges()])
    return 0


def cmd_spectrum(args) -> int:
    rows = []
    for g in graph6.read_graph6(args.input):
        result = dense_eigensolve(g) if args.method == "dense" else spectral_radius(g, tol=args.tol)
        rows.append([graph6.encode(g), g.n, g.m, result.lambda1, result.iterations,
                     result.residual, result.method])
    write_csv(args.out, ["graph6", "n", "m", "lambda1", "iterations", "residual", "method"], rows)
    return 0


def cmd_bounds(args) -> int:
    reports = [bound_report(g, all_k=args.all_k) for g in graph6.read_graph6(args.input)]
    names = list(IRREGULAR_BOUNDS)
    for report in reports:
        for entry in report.entries:
            if entry.name not in names:
                names.append(entry.name)
    header = ["graph6", "n", "m", "delta", "k", "D", "lambda1", "true_gap"]
    for name in names:
        header += [f"{name}_value", f"{name}_holds"]
    rows = []
    for report in reports:
        row = [report.graph6, report.n, report.m, report.delta, report.k, report.D,
               report.lambda1, report.true_gap]
        by_name = {e.name: e for e in report.entries}
        for name in names:
            entry = by_name.get(name)
            if entry is None or not entry.applicable:
                row += ["", "n/a"]
            else:
                row += [entry.value, entry.holds]
        rows.append(row)
    write_csv(args.out, header, rows)
    violations = sum(len(r.violations) for r in reports)
    if violations:
        logger.warning("%d bound rows do not hold", violations)
    return 0


def cmd_verify_maximal(args) -> int:
    rows = []
    failed = 0
    for n in range(args.n_min, args.n_max + 1):
        audit = verify_maximal_structure(enumerate_subcubic_bipartite(n))
        failed += not audit.passed
        rows.append([n, audit.graph6, audit.degree_sequence, audit.lambda1, audit.runner_up_margin,
                     audit.unique, audit.degree_pattern_ok, audit.two_unsaturated, audit.no_degree2_bridge,
                     audit.bridges_separate_unsaturated, audit.isomorphic_to_bn, "; ".join(audit.violations)])
    write_csv(args.out, ["n", "graph6", "degree_sequence", "lambda1", "runner_up_margin", "unique",
                         "degree_pattern", "two_unsaturated", "no_degree2_bridge",
                         "bridges_separate_unsaturated", "isomorphic_to_bn", "violations"], rows)
    if failed:
        logger.warning("%d audits reported violations", failed)
        return 1
    return 0


def cmd_trees(args) -> int:
    run = enumerate_trees(args.n)
    logger.info("%d non-isomorphic trees on %d vertices", len(run.catalog), args.n)
    if not args.compare_bounds:
        write_csv(args.out, ["graph6", "n", "delta", "D", "lambda1"],
                  [[e.graph6, e.graph.n, e.graph.max_degree, diameter(e.graph), e.lambda1] for e in run.catalog])
        return 0
    comparison = remark_comparison_trees(args.n, [e.graph for e in run.catalog])
    first, second = comparison.pair
    write_csv(args.out, ["graph6", "delta", "D", first, second, "winner"],
              [[i["instance"], i["delta"], i["D"], i[first], i[second], i["winner"]]
               for i in comparison.instances])
    logger.info("Counts %s; checks %s", comparison.counts, comparison.checks)
    return 0


def cmd_conjecture(args) -> int:
    rows = conjecture_scan(args.n_list, delta=args.delta, tol=args.tol)
    write_csv(args.out, ["n", "delta", "lambda1", "conjecture_ratio", "bn_ratio", "iterations", "residual", "error"],
              [[r.n, r.delta, r.lambda1, r.conjecture_ratio, r.bn_ratio, r.iterations, r.residual, r.error]
               for r in rows])
    return max((r.exit_code for r in rows), default=0)


def cmd_hillclimb(args) -> int:
    seed = get_settings().seed if args.seed is None else args.seed
    rows = []
    for index, g in enumerate(graph6.read_graph6(args.input)):
        for step in hill_climb(g, seed=seed, policy=args.policy):
            move = step.move
            rows.append([index, step.step, step.graph6, step.lambda1,
                         "" if move is None else str(move), step.gain])
    write_csv(args.trace, ["start", "step", "graph6", "lambda1", "move", "gain"], rows)
    return 0


def cmd_catalog(args) -> int:
    delta = args.delta if args.delta is not None else max(args.n - 1, 1)
    run = enumerate_class(args.n, delta, bipartite=args.bipartite, tree=args.tree)
    graph6.write_graph6([e.graph for e in run.catalog], args.out)
    return 0


def cmd_census(args) -> int:
    rows = bad_pair_census(enumerate_subcubic_bipartite(args.n))
    write_csv(args.out, ["degree_sequence", "members", "bad_pair_free", "free_not_maximal",
                         "maximum_is_free", "max_lambda1"],
              [[r.degree_sequence, r.members, r.bad_pair_free, r.free_not_maximal, r.maximum_is_free,
                r.max_lambda1] for r in rows])
    return 0


def cmd_dominance(args) -> int:
    rows = []
    for comparison in (dominance_grid_main1(args.n_max), dominance_grid_main2()):
        first, second = comparison.pair
        for instance in comparison.instances:
            rows.append([f"{first}>{second}", instance["instance"], instance[first], instance[second],
                         instance["winner"]])
        logger.info("%s vs %s: %s %s", first, second, comparison.counts, comparison.checks)
    write_csv(args.out, ["comparison", "instance", "first", "second", "winner"], rows)
    return 0


def cmd_deletion(args) -> int:
    rows = []
    for g in graph6.read_graph6(args.input):
        for check in edge_deletion_sweep(g):
            rows.append([graph6.encode(g), f"{check.removed[0]}-{check.removed[1]}", check.k,
                         check.gap, check.bound, check.holds])
    write_csv(args.out, ["graph6", "removed", "k", "gap", "bound", "holds"], rows)
    return 0 if all(r[-1] for r in rows) else 1


# --- Parser ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subcubic-spectral",
                                     description="Spectral extremal graph experiments.")
    parser.add_argument("--threads", type=int, default=None, help="worker processes for parallel sections")
    parser.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--cache", action="store_true", help="reuse catalogs from the sqlite cache")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a named graph")
    p.add_argument("--family", required=True, choices=FAMILY_NAMES)
    p.add_argument("--n", type=int, help="order (dimension for hypercube, leaves for star)")
    p.add_argument("--b", type=int, help="second side of complete_bipartite")
    p.add_argument("--format", default="graph6", choices=["graph6", "edgelist"])
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("spectrum", help="lambda1 of every graph in a graph6 file")
    p.add_argument("--input", required=True)
    p.add_argument("--tol", type=_positive_float, default=None)
    p.add_argument("--method", default="power", choices=["power", "dense"])
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("bounds", help="bound report for every graph in a graph6 file")
    p.add_argument("--input", required=True)
    p.add_argument("--all-k", action="store_true", help="also evaluate the connectivity bounds at every k' < k")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify-maximal", help="audit the subcubic bipartite argmax for a range of n")
    p.add_argument("--n-min", type=int, default=6)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_verify_maximal)

    p = sub.add_parser("trees", help="enumerate trees, optionally comparing bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--compare-bounds", action="store_true")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("conjecture", help="ratio scan along the extremal family")
    p.add_argument("--n-list", type=_int_list, default=[6, 10, 20, 50, 100, 200, 500, 1000])
    p.add_argument("--delta", type=int, default=3, choices=[2, 3])
    p.add_argument("--tol", type=_positive_float, default=None)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("hillclimb", help="two-switch hill climb from every graph in a graph6 file")
    p.add_argument("--input", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--policy", default="best", choices=POLICIES)
    p.add_argument("--trace", default="-")
    p.set_defaults(func=cmd_hillclimb)

    p = sub.add_parser("catalog", help="dump a class catalog as graph6 lines")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("--bipartite", action="store_true")
    p.add_argument("--tree", action="store_true")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("census", help="bad-pair-free members per bipartite degree sequence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("dominance", help="dominance grids between bound pairs")
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_dominance)

    p = sub.add_parser("deletion", help="single-edge deletion sweep of regular graphs")
    p.add_argument("--input", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_deletion)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(level=args.log_level, format=LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S", stream=sys.stderr)
    logging.getLogger().setLevel(args.log_level)
    changes = {}
    if args.threads is not None:
        changes["threads"] = max(1, args.threads)
    if args.cache:
        changes["use_cache"] = True
    if changes:
        override_settings(**changes)

    try:
        return args.func(args)
    except ToolkitError as e:
        sys.stderr.write(f"error kind={type(e).__name__} exit={e.exit_code} message={e}\n")
        return e.exit_code
    except (OSError, ValueError) as e:
        sys.stderr.write(f"error kind={type(e).__name__} exit=1 message={e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(run())
