"""Immutable directed graphs in compressed sparse form.

A :class:`Graph` stores the in-edge view (CSC: offsets by destination, source
IDs per in-edge) eagerly and derives the out-edge view (CSR) on first use.
Both views are canonical: neighbours within a vertex group are sorted by ID,
so two graphs with the same edge multiset compare equal and serialize to the
same bytes. Parallel edges and self-loops are kept.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class VertexRangeError(ValueError):
    """An edge endpoint or vertex ID lies outside ``[0, n)``."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


def _id_dtype(n: int):
    return np.int32 if n < 2**31 - 1 else np.int64


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _group(keys_major: np.ndarray, keys_minor: np.ndarray, n: int):
    """Sort (major, minor) pairs and return (offsets, minor values) grouped by major."""
    key = keys_major.astype(np.int64) * n
    key += keys_minor
    return _group_key(key, n)


def _group_key(key: np.ndarray, n: int):
    # key = major * n + minor, int64; consumed in place.
    key.sort()
    offsets = np.searchsorted(key, np.arange(n + 1, dtype=np.int64) * n).astype(np.int64)
    if n:
        np.remainder(key, n, out=key)
    return offsets, key.astype(_id_dtype(n))


@dataclass(frozen=True, eq=False)
class Graph:
    """Directed multigraph with ``num_vertices`` dense 0-based vertex IDs.

    Build instances through :func:`from_edge_list` or :meth:`from_arrays`;
    the constructor trusts its inputs to already be canonical.
    """

    num_vertices: int
    in_offsets: np.ndarray = field(repr=False)
    in_sources: np.ndarray = field(repr=False)

    @property
    def num_edges(self) -> int:
        return int(self.in_sources.shape[0])

    @classmethod
    def from_arrays(cls, n: int, src, dst) -> "Graph":
        src = np.asarray(src, dtype=np.int64).ravel()
        dst = np.asarray(dst, dtype=np.int64).ravel()
        if src.shape != dst.shape:
            raise ValueError("source and destination arrays differ in length")
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        for arr in (src, dst):
            bad = np.flatnonzero((arr < 0) | (arr >= n))
            if bad.size:
                i = int(bad[0])
                raise VertexRangeError(
                    f"edge {i} endpoint {int(arr[i])} out of range for {n} vertices", i
                )
        offsets, sources = _group(dst, src, n)
        return cls(n, _frozen(offsets), _frozen(sources))

    @cached_property
    def in_degrees(self) -> np.ndarray:
        return _frozen(np.diff(self.in_offsets))

    @cached_property
    def in_destinations(self) -> np.ndarray:
        """Destination of every in-edge, parallel to ``in_sources``."""
        dst = np.repeat(np.arange(self.num_vertices, dtype=_id_dtype(self.num_vertices)),
                        self.in_degrees)
        return _frozen(dst)

    @cached_property
    def out_degrees(self) -> np.ndarray:
        return _frozen(np.bincount(self.in_sources, minlength=self.num_vertices).astype(np.int64))

    @cached_property
    def _out_view(self):
        offsets, targets = _group(self.in_sources, self.in_destinations, self.num_vertices)
        return _frozen(offsets), _frozen(targets)

    @property
    def out_offsets(self) -> np.ndarray:
        return self._out_view[0]

    @property
    def out_targets(self) -> np.ndarray:
        return self._out_view[1]

    def in_neighbors(self, v: int) -> np.ndarray:
        _check_vertex(self, v)
        return self.in_sources[self.in_offsets[v]:self.in_offsets[v + 1]]

    def out_neighbors(self, v: int) -> np.ndarray:
        _check_vertex(self, v)
        return self.out_targets[self.out_offsets[v]:self.out_offsets[v + 1]]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.num_vertices == other.num_vertices
            and np.array_equal(self.in_offsets, other.in_offsets)
            and np.array_equal(self.in_sources, other.in_sources)
        )

    __hash__ = None


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.num_vertices:
        raise VertexRangeError(f"vertex {v} out of range for {g.num_vertices} vertices", v)


def from_edge_list(edges: Iterable[Sequence[int]] | np.ndarray, n: int) -> Graph:
    """Build a canonical graph from ``(src, dst)`` pairs over ``n`` vertices."""
    arr = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("edges must be a sequence of (src, dst) pairs")
    return Graph.from_arrays(n, arr[:, 0], arr[:, 1])


def to_edge_list(g: Graph) -> np.ndarray:
    """Edges as an ``(E, 2)`` array of ``(src, dst)`` in canonical in-edge order."""
    return np.stack([g.in_sources.astype(np.int64), g.in_destinations.astype(np.int64)], axis=1)


def in_degree(g: Graph, v: int) -> int:
    _check_vertex(g, v)
    return int(g.in_offsets[v + 1] - g.in_offsets[v])


def symmetrize(g: Graph) -> Graph:
    """Graph holding every arc of ``g`` in both directions."""
    src, dst = g.in_sources, g.in_destinations
    return Graph.from_arrays(g.num_vertices, np.concatenate([src, dst]), np.concatenate([dst, src]))


@dataclass(frozen=True, eq=False)
class Permutation:
    """Bijective relabeling: ``seq[v]`` is the new ID of old vertex ``v``."""

    seq: np.ndarray

    def __post_init__(self):
        seq = np.asarray(self.seq, dtype=np.int64)
        n = seq.shape[0]
        if seq.ndim != 1 or (n and (seq.min() < 0 or seq.max() >= n)) or (
            np.bincount(seq, minlength=n) != 1
        ).any():
            raise ValueError("sequence numbers do not form a bijection on 0..n-1")
        object.__setattr__(self, "seq", _frozen(seq))

    def __len__(self):
        return int(self.seq.shape[0])

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return np.array_equal(self.seq, other.seq)

    __hash__ = None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n, dtype=np.int64))

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.seq)
        inv[self.seq] = np.arange(len(self), dtype=np.int64)
        return Permutation(inv)

    def compose(self, after: "Permutation") -> "Permutation":
        """Apply ``self`` then ``after``."""
        return Permutation(after.seq[self.seq])


def apply_permutation(g: Graph, p: Permutation) -> Graph:
    """Relabel every vertex ``v`` of ``g`` as ``p.seq[v]``."""
    if len(p) != g.num_vertices:
        raise ValueError(
            f"permutation covers {len(p)} vertices but graph has {g.num_vertices}"
        )
    seq = p.seq
    return Graph.from_arrays(g.num_vertices, seq[g.in_sources], seq[g.in_destinations])


@dataclass(frozen=True)
class DegreeHistogram:
    counts: dict[int, int]
    max_degree: int
    nonzero_vertex_count: int

    @property
    def num_vertices(self) -> int:
        return sum(self.counts.values())

    @property
    def num_edges(self) -> int:
        return sum(d * c for d, c in self.counts.items())

    @property
    def rank_count(self) -> int:
        """One more than the highest in-degree."""
        return self.max_degree + 1


def degree_histogram(g: Graph) -> DegreeHistogram:
    deg = g.in_degrees
    if deg.size == 0:
        return DegreeHistogram({}, 0, 0)
    values, counts = np.unique(deg, return_counts=True)
    return DegreeHistogram(
        {int(d): int(c) for d, c in zip(values, counts)},
        int(values[-1]),
        int(np.count_nonzero(deg)),
    )
