"""Command line interface: ``vebo {generate,reorder,partition,stats,run}``."""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import engine, io
from .generate import ZipfParams, generate_zipf_graph
from .graph import apply_permutation
from .metrics import compare_orderings, report
from .order import MODES, vebo_reorder
from .partition import partition_by_destination


def _add_input(p):
    p.add_argument("--in", dest="input", required=True, help="adjacency file or edge list")
    p.add_argument("--undirected", action="store_true", help="mirror every arc on input")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vebo", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a Zipf in-degree graph")
    p.add_argument("--n", type=int, required=True, help="vertex count")
    p.add_argument("--N", type=int, required=True, help="rank count (max in-degree + 1)")
    p.add_argument("--s", type=float, required=True, help="skew exponent")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("adj", "edges"), default="adj")

    p = sub.add_parser("reorder", help="VEBO-reorder a graph")
    _add_input(p)
    p.add_argument("--parts", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="block")
    p.add_argument("--out", required=True, help="reordered adjacency file")
    p.add_argument("--emit-permutation", metavar="PATH")
    p.add_argument("--report", metavar="PATH")
    p.add_argument("--s-hint", type=float, help="skew used to evaluate theorem preconditions")

    p = sub.add_parser("partition", help="report edge-balanced chunking of the input order")
    _add_input(p)
    p.add_argument("--parts", type=int, required=True)
    p.add_argument("--report", metavar="PATH", default="-")
    p.add_argument("--s-hint", type=float)

    p = sub.add_parser("stats", help="compare original, random and VEBO orderings")
    _add_input(p)
    p.add_argument("--parts", type=int, required=True)
    p.add_argument("--seed", type=int, default=0, help="seed of the random relabeling")
    p.add_argument("--mode", choices=MODES, default="block")
    p.add_argument("--report", metavar="PATH", default="-")
    p.add_argument("--s-hint", type=float)

    p = sub.add_parser("run", help="run an analytics kernel and record per-partition work")
    _add_input(p)
    p.add_argument("--algo", choices=("pr", "bfs", "cc", "spmv"), required=True)
    p.add_argument("--parts", type=int, required=True)
    p.add_argument("--partitioner", choices=("chunk", "vebo"), default="chunk",
                   help="chunk the input order, or use VEBO partitions of the input")
    p.add_argument("--iters", type=int, default=10, help="PageRank iterations")
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--source", type=int, default=0, help="BFS start vertex")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--work-stats", metavar="PATH", default="-")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds per partition")
    p.add_argument("--output", metavar="PATH", help="write the result vector, one value per line")
    return parser


def _generate(args):
    g = generate_zipf_graph(ZipfParams(args.n, args.N, args.s, args.seed))
    if args.format == "adj":
        io.write_adjacency(g, args.out)
    else:
        io.write_edge_list(g, args.out)
    print(f"vertices={g.num_vertices} edges={g.num_edges}")


def _reorder(args):
    g = io.read_graph(args.input, args.undirected)
    perm, a = vebo_reorder(g, args.parts, args.mode)
    h = apply_permutation(g, perm)
    io.write_adjacency(h, args.out)
    if args.emit_permutation:
        io.write_permutation(perm, args.emit_permutation)
    r = report(h, a, args.s_hint)
    if args.report:
        io.write_text(args.report, io.format_records(io.report_records(r)))
    print(f"parts={r.P} edge_imbalance={r.edge_imbalance} vertex_imbalance={r.vertex_imbalance}")


def _partition(args):
    g = io.read_graph(args.input, args.undirected)
    r = report(g, partition_by_destination(g, args.parts), args.s_hint)
    io.write_text(args.report, io.format_records(io.report_records(r)))


def _stats(args):
    g = io.read_graph(args.input, args.undirected)
    rows = compare_orderings(g, args.parts, args.seed, args.s_hint, args.mode)
    io.write_text(args.report, io.format_records(io.comparison_records(rows)))


def _run(args):
    g = io.read_graph(args.input, args.undirected)
    if args.partitioner == "chunk":
        a = partition_by_destination(g, args.parts)
    else:
        perm, a = vebo_reorder(g, args.parts)
        a = a.relabeled(perm.inverse())
    if args.algo == "pr":
        result, stats = engine.pagerank(g, a, args.iters, args.damping, args.workers, args.timing)
    elif args.algo == "bfs":
        result, _, stats = engine.bfs(g, a, args.source, args.workers, args.timing)
    elif args.algo == "cc":
        result, stats = engine.connected_components(g, a, args.workers, args.timing)
    else:
        result, st = engine.spmv(g, a, np.ones(g.num_vertices), args.workers, args.timing)
        stats = [st]
    records = [("algo", args.algo), ("parts", args.parts), ("iterations", len(stats))]
    for i, st in enumerate(stats):
        records += io.work_records(st, f"iter.{i}.", args.timing)
    io.write_text(args.work_stats, io.format_records(records))
    if args.output:
        values = result.tolist()
        io.write_text(args.output, "".join(f"{v!r}\n" for v in values))


COMMANDS = {
    "generate": _generate,
    "reorder": _reorder,
    "partition": _partition,
    "stats": _stats,
    "run": _run,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
