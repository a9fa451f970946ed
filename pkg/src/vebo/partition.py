"""Destination-side vertex partitions and the edge-balanced chunking baseline."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graph import Graph, Permutation, _frozen


@dataclass(frozen=True, eq=False)
class PartitionAssignment:
    """Home partition of every vertex, with per-partition vertex and edge counts.

    ``edge_counts[p]`` counts in-edges whose destination lives in ``p``.
    ``boundaries`` is set when every partition is a contiguous ID range.
    """

    P: int
    labels: np.ndarray = field(repr=False)
    vertex_counts: np.ndarray
    edge_counts: np.ndarray
    boundaries: Optional[np.ndarray] = None

    @classmethod
    def from_labels(cls, g: Graph, labels, P: int, boundaries=None) -> "PartitionAssignment":
        labels = np.asarray(labels, dtype=np.int64)
        if labels.shape != (g.num_vertices,):
            raise ValueError(f"expected {g.num_vertices} labels, got {labels.shape[0]}")
        if labels.size and (labels.min() < 0 or labels.max() >= P):
            raise ValueError(f"labels must lie in [0, {P})")
        u = np.bincount(labels, minlength=P).astype(np.int64)
        w = np.bincount(labels, weights=g.in_degrees, minlength=P).astype(np.int64)
        if boundaries is not None:
            boundaries = _frozen(np.asarray(boundaries, dtype=np.int64))
            if not np.array_equal(np.diff(boundaries), u):
                raise ValueError("boundaries disagree with labels")
        return cls(P, _frozen(labels), _frozen(u), _frozen(w), boundaries)

    @classmethod
    def from_boundaries(cls, g: Graph, boundaries) -> "PartitionAssignment":
        boundaries = np.asarray(boundaries, dtype=np.int64)
        P = boundaries.shape[0] - 1
        labels = np.repeat(np.arange(P, dtype=np.int64), np.diff(boundaries))
        return cls.from_labels(g, labels, P, boundaries)

    @property
    def contiguous(self) -> bool:
        return self.boundaries is not None

    def vertices(self, p: int) -> np.ndarray:
        if self.boundaries is not None:
            return np.arange(self.boundaries[p], self.boundaries[p + 1], dtype=np.int64)
        return np.flatnonzero(self.labels == p)

    def relabeled(self, perm: Permutation) -> "PartitionAssignment":
        """Same partitions, expressed for a graph whose IDs were mapped by ``perm``.

        Given an assignment over new IDs, ``relabeled(perm.inverse())`` gives
        the assignment over the original IDs.
        """
        labels = np.empty_like(self.labels)
        labels[perm.seq] = self.labels
        return PartitionAssignment(self.P, _frozen(labels), self.vertex_counts, self.edge_counts)

    def __eq__(self, other):
        if not isinstance(other, PartitionAssignment):
            return NotImplemented
        return (
            self.P == other.P
            and np.array_equal(self.labels, other.labels)
            and np.array_equal(self.vertex_counts, other.vertex_counts)
            and np.array_equal(self.edge_counts, other.edge_counts)
        )

    __hash__ = None


def _check_parts(g: Graph, P: int) -> None:
    if P < 1:
        raise ValueError(f"partition count must be at least 1, got {P}")
    if P > g.num_vertices:
        raise ValueError(f"cannot split {g.num_vertices} vertices into {P} partitions")


def partition_by_destination(g: Graph, P: int) -> PartitionAssignment:
    """Chunk vertices in ID order into ``P`` ranges of roughly ``|E| // P`` in-edges.

    The current partition is closed before a vertex is added once it holds at
    least the target, so a high-degree vertex at a boundary overloads the
    partition it lands in. The last partition takes whatever remains.
    """
    _check_parts(g, P)
    return PartitionAssignment.from_boundaries(g, chunk_boundaries(g.in_degrees, P))


def chunk_boundaries(degrees, P: int) -> np.ndarray:
    """Partition boundaries that :func:`partition_by_destination` picks for ``degrees``."""
    degrees = np.asarray(degrees, dtype=np.int64)
    avg = int(degrees.sum()) // P
    boundaries = [0]
    i = 0
    load = 0
    for t, d in enumerate(degrees.tolist()):
        if load >= avg and i < P - 1:
            i += 1
            boundaries.append(t)
            load = 0
        load += d
    boundaries.extend([degrees.shape[0]] * (P + 1 - len(boundaries)))
    return np.asarray(boundaries, dtype=np.int64)


def _ranges(starts: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    """Concatenation of ``arange(s, s + l)`` for each start/length pair."""
    lengths = np.asarray(lengths, dtype=np.int64)
    total = int(lengths.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    shift = np.asarray(starts, dtype=np.int64) - (np.cumsum(lengths) - lengths)
    return np.repeat(shift, lengths) + np.arange(total, dtype=np.int64)


@dataclass(frozen=True)
class EdgeView:
    """In-edges of one partition: ``sources[i] -> destinations[i]``."""

    partition: int
    sources: np.ndarray = field(repr=False)
    destinations: np.ndarray = field(repr=False)

    def __len__(self):
        return int(self.sources.shape[0])


def edge_view(g: Graph, a: PartitionAssignment, p: int) -> EdgeView:
    if a.boundaries is not None:
        lo, hi = g.in_offsets[a.boundaries[p]], g.in_offsets[a.boundaries[p + 1]]
        return EdgeView(p, g.in_sources[lo:hi], g.in_destinations[lo:hi])
    verts = a.vertices(p)
    idx = _ranges(g.in_offsets[verts], g.in_degrees[verts])
    return EdgeView(p, g.in_sources[idx], g.in_destinations[idx])


def induce_edge_partitions(g: Graph, a: PartitionAssignment) -> list[EdgeView]:
    if a.labels.shape[0] != g.num_vertices:
        raise ValueError("assignment does not cover the graph")
    return [edge_view(g, a, p) for p in range(a.P)]
