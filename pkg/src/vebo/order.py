"""Vertex- and edge-balanced reordering.

Vertices are placed in order of decreasing in-degree, each on the partition
with the fewest in-edges so far; zero-degree vertices then go to the
partition with the fewest vertices. Partitions finally receive consecutive
ranges of new vertex IDs, so that chunking the reordered graph by those
ranges yields partitions balanced in both edges and destination vertices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from .graph import Graph, Permutation, _frozen
from .partition import PartitionAssignment, _check_parts

Mode = Literal["strict", "block"]
MODES = ("strict", "block")


@dataclass(frozen=True)
class DegreeSortedOrder:
    """Vertices by nonincreasing in-degree, ascending ID among equal degrees."""

    order: np.ndarray = field(repr=False)
    degrees: np.ndarray = field(repr=False)

    @property
    def nonzero_count(self) -> int:
        # degrees are nonincreasing
        return int(np.count_nonzero(self.degrees))


def sort_by_degree_desc(g: Graph) -> DegreeSortedOrder:
    """Counting sort over degree buckets, highest bucket first; O(n + max degree)."""
    return sort_degrees_desc(g.in_degrees)


def sort_degrees_desc(deg) -> DegreeSortedOrder:
    deg = np.asarray(deg, dtype=np.int64)
    n = deg.shape[0]
    if n == 0:
        return DegreeSortedOrder(_frozen(np.zeros(0, np.int64)), _frozen(np.zeros(0, np.int64)))
    counts = np.bincount(deg)
    # first slot of each bucket when buckets are laid out from high degree to low
    start = (n - np.cumsum(counts)).tolist()
    order = [0] * n
    for v, d in enumerate(deg.tolist()):
        order[start[d]] = v
        start[d] += 1
    order = np.asarray(order, dtype=np.int64)
    return DegreeSortedOrder(_frozen(order), _frozen(deg[order].astype(np.int64)))


class _CountingMinHeap:
    """Binary min-heap of ``load * P + partition`` keys that counts key comparisons.

    Packing the partition index into the low digits makes ties on load
    resolve to the lowest partition index.
    """

    def __init__(self, keys: list[int]):
        self.heap = list(keys)
        self.comparisons = 0
        for pos in reversed(range(len(self.heap) // 2)):
            self._sift_down(pos)

    def top(self) -> int:
        return self.heap[0]

    def replace_top(self, key: int) -> None:
        self.heap[0] = key
        self._sift_down(0)

    def _sift_down(self, pos: int) -> None:
        heap = self.heap
        size = len(heap)
        item = heap[pos]
        cmp = 0
        while True:
            child = 2 * pos + 1
            if child >= size:
                break
            right = child + 1
            if right < size:
                cmp += 1
                if heap[right] < heap[child]:
                    child = right
            cmp += 1
            if heap[child] < item:
                heap[pos] = heap[child]
                pos = child
            else:
                break
        heap[pos] = item
        self.comparisons += cmp


@dataclass(frozen=True)
class GreedyPlacementTrace:
    """Per-step edge loads while placing the nonzero-degree vertices.

    ``max_load[t]`` and ``min_load[t]`` are the largest and smallest partition
    edge counts before step ``t``; index ``m`` holds the state after the last
    nonzero-degree vertex.
    """

    degrees: np.ndarray = field(repr=False)
    partitions: np.ndarray = field(repr=False)
    max_load: np.ndarray = field(repr=False)
    min_load: np.ndarray = field(repr=False)
    vertex_counts_after_nonzero: np.ndarray = field(repr=False)

    @property
    def imbalance(self) -> np.ndarray:
        return self.max_load - self.min_load

    @property
    def vertex_imbalance_after_nonzero(self) -> int:
        u = self.vertex_counts_after_nonzero
        return int(u.max() - u.min()) if u.size else 0


@dataclass(frozen=True)
class Placement:
    """Greedy placement of a degree-sorted vertex sequence onto ``P`` partitions."""

    P: int
    labels: np.ndarray = field(repr=False)  # partition of the t-th vertex in sorted order
    vertex_counts: np.ndarray
    edge_counts: np.ndarray
    heap_comparisons: int
    trace: Optional[GreedyPlacementTrace] = None


def greedy_placement(degrees, P: int, record_trace: bool = False) -> Placement:
    """Place vertices with nonincreasing ``degrees`` one at a time.

    Nonzero degrees go to the partition with the fewest edges, zero degrees
    to the partition with the fewest vertices; ties go to the lowest index.
    """
    if P < 1:
        raise ValueError(f"partition count must be at least 1, got {P}")
    degs = np.asarray(degrees, dtype=np.int64)
    if degs.size > 1 and (np.diff(degs) > 0).any():
        raise ValueError("degrees must be nonincreasing")
    deg_list = degs.tolist()
    n = len(deg_list)
    m = int(np.count_nonzero(degs))
    labels = [0] * n
    w = [0] * P
    u = [0] * P

    heap = _CountingMinHeap(list(range(P)))
    if record_trace:
        max_load = [0] * (m + 1)
        min_load = [0] * (m + 1)
    omega = 0
    for t in range(m):
        d = deg_list[t]
        key = heap.top()
        p = key % P
        if record_trace:
            max_load[t] = omega
            min_load[t] = key // P
        labels[t] = p
        w[p] += d
        u[p] += 1
        if w[p] > omega:
            omega = w[p]
        heap.replace_top(key + d * P)
    comparisons = heap.comparisons

    trace = None
    if record_trace:
        max_load[m] = omega
        min_load[m] = min(w)
        trace = GreedyPlacementTrace(
            degrees=_frozen(degs[:m].copy()),
            partitions=_frozen(np.asarray(labels[:m], dtype=np.int64)),
            max_load=_frozen(np.asarray(max_load, dtype=np.int64)),
            min_load=_frozen(np.asarray(min_load, dtype=np.int64)),
            vertex_counts_after_nonzero=_frozen(np.asarray(u, dtype=np.int64)),
        )

    if m < n:
        heap = _CountingMinHeap([u[p] * P + p for p in range(P)])
        for t in range(m, n):
            key = heap.top()
            p = key % P
            labels[t] = p
            u[p] += 1
            heap.replace_top(key + P)
        comparisons += heap.comparisons

    return Placement(
        P=P,
        labels=_frozen(np.asarray(labels, dtype=np.int64)),
        vertex_counts=_frozen(np.asarray(u, dtype=np.int64)),
        edge_counts=_frozen(np.asarray(w, dtype=np.int64)),
        heap_comparisons=comparisons,
        trace=trace,
    )


def _block_labels(sorted_degrees: np.ndarray, labels: np.ndarray, P: int) -> np.ndarray:
    """Keep each partition's count per degree but hand out same-degree vertices in ID blocks.

    Within one degree bucket the sorted order is ascending ID, so sorting the
    labels inside the bucket gives partition 0 the lowest IDs, then 1, etc.
    """
    if labels.size == 0:
        return labels
    bucket = np.concatenate([[0], np.cumsum(sorted_degrees[1:] != sorted_degrees[:-1])])
    key = bucket * P + labels
    key.sort()
    return key % P


def vebo_reorder(
    g: Graph, P: int, mode: Mode = "block"
) -> tuple[Permutation, PartitionAssignment]:
    """Reorder ``g`` so that ``P`` consecutive ID ranges balance edges and vertices.

    Returns the old-to-new permutation and the partition assignment over the
    new IDs. ``mode="strict"`` numbers vertices in placement order within
    each partition. ``mode="block"`` gives each partition the same number of
    vertices of each degree as strict mode, but takes them as runs of
    consecutive original IDs and keeps original ID order inside a partition.
    """
    _check_parts(g, P)
    return vebo_reorder_degrees(g.in_degrees, P, mode)


def vebo_reorder_degrees(
    degrees, P: int, mode: Mode = "block"
) -> tuple[Permutation, PartitionAssignment]:
    """:func:`vebo_reorder` for a graph given only by its in-degree sequence."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    sorted_order = sort_degrees_desc(degrees)
    n = sorted_order.order.shape[0]
    if not 1 <= P <= max(n, 1):
        raise ValueError(f"cannot split {n} vertices into {P} partitions")
    placement = greedy_placement(sorted_order.degrees, P)
    return _number(n, sorted_order, placement, mode)


def _number(n, sorted_order, placement, mode):
    P = placement.P
    order = sorted_order.order
    if mode == "strict":
        # stable grouping by partition keeps placement order inside a partition
        grouped = np.argsort(placement.labels, kind="stable")
        seq = np.empty(n, dtype=np.int64)
        seq[order[grouped]] = np.arange(n, dtype=np.int64)
    else:
        by_vertex = np.empty(n, dtype=np.int64)
        by_vertex[order] = _block_labels(sorted_order.degrees, placement.labels, P)
        grouped = np.argsort(by_vertex, kind="stable")
        seq = np.empty(n, dtype=np.int64)
        seq[grouped] = np.arange(n, dtype=np.int64)

    u = placement.vertex_counts
    boundaries = np.zeros(P + 1, dtype=np.int64)
    np.cumsum(u, out=boundaries[1:])
    assignment = PartitionAssignment(
        P,
        _frozen(np.repeat(np.arange(P, dtype=np.int64), u)),
        placement.vertex_counts,
        placement.edge_counts,
        _frozen(boundaries),
    )
    return Permutation(seq), assignment


def imbalance_after_placement(assignment: PartitionAssignment) -> tuple[int, int]:
    """Edge imbalance (max - min edges) and vertex imbalance (max - min vertices)."""
    w, u = assignment.edge_counts, assignment.vertex_counts
    if w.size == 0:
        return 0, 0
    return int(w.max() - w.min()), int(u.max() - u.min())
