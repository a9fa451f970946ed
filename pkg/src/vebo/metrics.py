"""Balance reports for partition assignments and ordering comparisons."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .engine import WorkStats, dense_work_stats
from .generate import PreconditionReport, check_theorem_preconditions
from .graph import Graph, Permutation
from .order import vebo_reorder_degrees
from .partition import PartitionAssignment, _check_parts, chunk_boundaries


def _spread_ratio(values: np.ndarray) -> float:
    lo, hi = int(values.min()), int(values.max())
    if lo == 0:
        return 1.0 if hi == 0 else math.inf
    return hi / lo


@dataclass(frozen=True)
class CountStats:
    min: int
    max: int
    median: float
    stddev: float
    ratio: float  # max / min; inf when some partition is empty

    @classmethod
    def of(cls, values: np.ndarray) -> "CountStats":
        return cls(
            min=int(values.min()),
            max=int(values.max()),
            median=float(np.median(values)),
            stddev=float(values.std()),
            ratio=_spread_ratio(values),
        )


@dataclass(frozen=True, eq=False)
class ImbalanceReport:
    P: int
    num_vertices: int
    num_edges: int
    edge_counts: np.ndarray
    vertex_counts: np.ndarray
    edges: CountStats
    vertices: CountStats
    preconditions: Optional[PreconditionReport] = None

    @property
    def edge_imbalance(self) -> int:
        return self.edges.max - self.edges.min

    @property
    def vertex_imbalance(self) -> int:
        return self.vertices.max - self.vertices.min


def report(g: Graph, a: PartitionAssignment, s_hint: Optional[float] = None) -> ImbalanceReport:
    """Edge and vertex balance of ``a`` on ``g``.

    With ``s_hint`` the theorem preconditions for that skew are evaluated too.
    """
    w, u = a.edge_counts, a.vertex_counts
    if int(w.sum()) != g.num_edges or int(u.sum()) != g.num_vertices:
        raise ValueError("assignment does not cover the graph")
    return ImbalanceReport(
        P=a.P,
        num_vertices=g.num_vertices,
        num_edges=g.num_edges,
        edge_counts=w,
        vertex_counts=u,
        edges=CountStats.of(w),
        vertices=CountStats.of(u),
        preconditions=None if s_hint is None else check_theorem_preconditions(g, a.P, s_hint),
    )


@dataclass(frozen=True, eq=False)
class OrderingRow:
    name: str
    report: ImbalanceReport
    work: WorkStats


def compare_orderings(
    g: Graph, P: int, seed: int = 0, s_hint: Optional[float] = None, mode: str = "block"
) -> list[OrderingRow]:
    """Balance of four orderings of ``g`` for ``P`` partitions.

    Rows: ``original`` (edge-balanced chunking of the input IDs), ``random``
    (the same chunking after a seeded random relabeling), ``vebo`` (VEBO
    partitions of the input) and ``random+vebo`` (VEBO applied to the
    randomly relabeled graph). Dense-frontier work is measured on ``g``
    itself with each assignment mapped back to the input IDs, which leaves
    every count unchanged.
    """
    _check_parts(g, P)
    deg = g.in_degrees
    n = g.num_vertices
    shuffle = Permutation(np.random.default_rng(seed).permutation(n))
    # shuffled[new] = degree of the vertex relabeled as new
    shuffled = np.empty_like(deg)
    shuffled[shuffle.seq] = deg

    rows = []

    def add(name, a):
        rows.append(OrderingRow(name, report(g, a, s_hint), dense_work_stats(g, a)))

    add("original", PartitionAssignment.from_boundaries(g, chunk_boundaries(deg, P)))

    chunks = chunk_boundaries(shuffled, P)
    labels_new = np.repeat(np.arange(P, dtype=np.int64), np.diff(chunks))
    add("random", PartitionAssignment.from_labels(g, labels_new[shuffle.seq], P))

    perm, a = vebo_reorder_degrees(deg, P, mode)
    add("vebo", a.relabeled(perm.inverse()))

    perm, a = vebo_reorder_degrees(shuffled, P, mode)
    add("random+vebo", a.relabeled(shuffle.compose(perm).inverse()))
    return rows
