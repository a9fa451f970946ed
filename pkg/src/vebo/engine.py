"""Frontier-based graph analytics over destination partitions.

``edgemap`` pulls along in-edges: each partition walks the in-edges of the
vertices it owns whose source is active, and may only write to slots of its
own vertices. That ownership rule makes per-partition execution race-free, so
running partitions on a thread pool gives the same bits as running them one
after another.

Every edgemap returns a :class:`WorkStats` record of what each partition
actually touched. These counts are the machine-independent stand-in for
per-partition processing time.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from .graph import Graph, _check_vertex, _frozen, symmetrize
from .partition import PartitionAssignment, edge_view

# update(partition, sources, destinations) -> vertex IDs to activate, or None
EdgeUpdate = Callable[[int, np.ndarray, np.ndarray], Optional[np.ndarray]]


@dataclass(frozen=True, eq=False)
class Frontier:
    num_vertices: int
    vertices: np.ndarray = field(repr=False)  # sorted, unique

    @classmethod
    def from_vertices(cls, n: int, ids) -> "Frontier":
        ids = np.unique(np.asarray(ids, dtype=np.int64))
        if ids.size and (ids[0] < 0 or ids[-1] >= n):
            raise ValueError(f"frontier vertex out of range for {n} vertices")
        return cls(n, _frozen(ids))

    @classmethod
    def from_mask(cls, mask) -> "Frontier":
        mask = np.asarray(mask, dtype=bool)
        return cls(mask.shape[0], _frozen(np.flatnonzero(mask)))

    @classmethod
    def full(cls, n: int) -> "Frontier":
        return cls(n, _frozen(np.arange(n, dtype=np.int64)))

    @classmethod
    def empty(cls, n: int) -> "Frontier":
        return cls(n, _frozen(np.zeros(0, dtype=np.int64)))

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.num_vertices, dtype=bool)
        m[self.vertices] = True
        return _frozen(m)

    def __len__(self):
        return int(self.vertices.shape[0])

    def __contains__(self, v):
        return 0 <= v < self.num_vertices and bool(self.mask[v])

    def __eq__(self, other):
        if not isinstance(other, Frontier):
            return NotImplemented
        return self.num_vertices == other.num_vertices and np.array_equal(
            self.vertices, other.vertices
        )

    __hash__ = None

    def density(self, g: Graph) -> float:
        """(active vertices + their out-edges) / |E|; 0 for an edgeless graph."""
        if g.num_edges == 0:
            return 0.0
        active_out = int(g.out_degrees[self.vertices].sum())
        return (len(self) + active_out) / g.num_edges


def _summary(values: np.ndarray) -> dict:
    if values.size == 0:
        return dict(min=0, median=0.0, stddev=0.0, max=0, spread=0)
    return dict(
        min=int(values.min()),
        median=float(np.median(values)),
        stddev=float(values.std()),
        max=int(values.max()),
        spread=int(values.max() - values.min()),
    )


@dataclass(frozen=True, eq=False)
class WorkStats:
    """Per-partition work done by one edgemap.

    ``active_edges[p]``: in-edges of partition ``p`` with an active source.
    ``unique_destinations[p]``: distinct vertices of ``p`` reached by those edges.
    ``unique_sources[p]``: distinct active sources read by ``p``.
    ``seconds`` is wall-clock telemetry and ignored by ``==``.
    """

    active_edges: np.ndarray
    unique_destinations: np.ndarray
    unique_sources: np.ndarray
    density: float = 0.0
    seconds: Optional[np.ndarray] = None

    @property
    def P(self) -> int:
        return int(self.active_edges.shape[0])

    @property
    def total_active_edges(self) -> int:
        return int(self.active_edges.sum())

    def summary(self) -> dict:
        return {
            "active_edges": _summary(self.active_edges),
            "unique_destinations": _summary(self.unique_destinations),
            "unique_sources": _summary(self.unique_sources),
        }

    def __eq__(self, other):
        if not isinstance(other, WorkStats):
            return NotImplemented
        return (
            np.array_equal(self.active_edges, other.active_edges)
            and np.array_equal(self.unique_destinations, other.unique_destinations)
            and np.array_equal(self.unique_sources, other.unique_sources)
            and self.density == other.density
        )

    __hash__ = None


def _count_distinct_sorted(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return 1 + int(np.count_nonzero(a[1:] != a[:-1]))


def _count_distinct(a: np.ndarray, n: int) -> int:
    if a.size == 0:
        return 0
    if a.size * 8 < n:
        return int(np.unique(a).size)
    seen = np.zeros(n, dtype=bool)
    seen[a] = True
    return int(np.count_nonzero(seen))


def segments(dst: np.ndarray):
    """Split a nondecreasing destination array into runs.

    Returns ``(vertices, run_index)``: the distinct destinations and, for each
    element, which run it belongs to.
    """
    if dst.size == 0:
        return dst.astype(np.int64), np.zeros(0, dtype=np.int64)
    change = np.empty(dst.size, dtype=bool)
    change[0] = True
    np.not_equal(dst[1:], dst[:-1], out=change[1:])
    run = np.cumsum(change) - 1
    return dst[change].astype(np.int64), run


def segment_sum(dst: np.ndarray, values: np.ndarray):
    """Sum ``values`` per destination run, adding left to right."""
    verts, run = segments(dst)
    return verts, np.bincount(run, weights=values, minlength=verts.size)


def edgemap(
    g: Graph,
    a: PartitionAssignment,
    frontier: Frontier,
    update: Optional[EdgeUpdate] = None,
    workers: int = 1,
    timed: bool = False,
) -> tuple[Frontier, WorkStats]:
    """Apply ``update`` to every in-edge whose source is in ``frontier``.

    ``update`` is called once per partition with that partition's active
    edges, destinations nondecreasing, and returns the vertices it activates.
    """
    if frontier.num_vertices != g.num_vertices:
        raise ValueError("frontier and graph disagree on the vertex count")
    n = g.num_vertices
    active = frontier.mask
    P = a.P

    def run(p):
        start = time.perf_counter()
        view = edge_view(g, a, p)
        keep = active[view.sources]
        src = view.sources[keep]
        dst = view.destinations[keep]
        out = update(p, src, dst) if update is not None and src.size else None
        return (
            src.size,
            _count_distinct_sorted(dst),
            _count_distinct(src, n),
            out,
            time.perf_counter() - start,
        )

    if workers > 1 and P > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(P)))
    else:
        results = [run(p) for p in range(P)]

    activated = [np.asarray(r[3], dtype=np.int64) for r in results if r[3] is not None]
    next_frontier = (
        Frontier.from_vertices(n, np.concatenate(activated)) if activated else Frontier.empty(n)
    )
    stats = WorkStats(
        active_edges=_frozen(np.array([r[0] for r in results], dtype=np.int64)),
        unique_destinations=_frozen(np.array([r[1] for r in results], dtype=np.int64)),
        unique_sources=_frozen(np.array([r[2] for r in results], dtype=np.int64)),
        density=frontier.density(g),
        seconds=_frozen(np.array([r[4] for r in results])) if timed else None,
    )
    return next_frontier, stats


def vertexmap(frontier: Frontier, fn: Callable[[np.ndarray], np.ndarray]) -> Frontier:
    """Evaluate ``fn`` on the active vertex IDs; keep those where it is true."""
    ids = frontier.vertices
    if ids.size == 0:
        return frontier
    keep = np.broadcast_to(np.asarray(fn(ids), dtype=bool), ids.shape)
    return Frontier(frontier.num_vertices, _frozen(ids[keep]))


def dense_work_stats(g: Graph, a: PartitionAssignment, workers: int = 1) -> WorkStats:
    """Work of one edgemap with every vertex active."""
    return edgemap(g, a, Frontier.full(g.num_vertices), workers=workers)[1]


def pagerank(
    g: Graph,
    a: PartitionAssignment,
    iterations: int = 10,
    damping: float = 0.85,
    workers: int = 1,
    timed: bool = False,
) -> tuple[np.ndarray, list[WorkStats]]:
    """Power-method PageRank pulled along in-edges, starting from uniform scores.

    Rank held by vertices without out-edges is spread uniformly over all
    vertices, so scores keep summing to 1.
    """
    if iterations < 1:
        raise ValueError(f"iterations must be at least 1, got {iterations}")
    if not 0 < damping < 1:
        raise ValueError(f"damping must lie in (0, 1), got {damping}")
    n = g.num_vertices
    if n == 0:
        return np.zeros(0), []
    outdeg = g.out_degrees
    dangling = outdeg == 0
    safe_outdeg = np.where(dangling, 1, outdeg)
    scores = np.full(n, 1.0 / n)
    full = Frontier.full(n)
    stats = []
    for _ in range(iterations):
        contrib = np.where(dangling, 0.0, scores / safe_outdeg)
        base = (1.0 - damping) / n + damping * scores[dangling].sum() / n
        nxt = np.full(n, base)

        def pull(p, src, dst):
            verts, sums = segment_sum(dst, contrib[src])
            nxt[verts] += damping * sums

        _, st = edgemap(g, a, full, pull, workers, timed)
        stats.append(st)
        scores = nxt
    return scores, stats


UNREACHED = -1


def bfs(
    g: Graph, a: PartitionAssignment, source: int, workers: int = 1, timed: bool = False
) -> tuple[np.ndarray, np.ndarray, list[WorkStats]]:
    """Hop distance along out-edges from ``source``.

    Returns ``(levels, parents, stats)``; unreachable vertices have level and
    parent ``UNREACHED``. The parent is the smallest-ID vertex of the
    previous level with an edge to the vertex.
    """
    _check_vertex(g, source)
    n = g.num_vertices
    levels = np.full(n, UNREACHED, dtype=np.int64)
    parents = np.full(n, UNREACHED, dtype=np.int64)
    levels[source] = 0
    parents[source] = source
    frontier = Frontier.from_vertices(n, [source])
    stats = []
    depth = 0
    while len(frontier):
        depth += 1

        def visit(p, src, dst, depth=depth):
            fresh = levels[dst] == UNREACHED
            src, dst = src[fresh], dst[fresh]
            if dst.size == 0:
                return None
            verts, run = segments(dst)
            first = np.flatnonzero(np.diff(run, prepend=-1))
            levels[verts] = depth
            # sources ascend within a destination, so the first one is the smallest
            parents[verts] = src[first]
            return verts

        frontier, st = edgemap(g, a, frontier, visit, workers, timed)
        stats.append(st)
    return levels, parents, stats


def connected_components(
    g: Graph, a: PartitionAssignment, workers: int = 1, timed: bool = False
) -> tuple[np.ndarray, list[WorkStats]]:
    """Weakly connected components by synchronous min-label propagation.

    Edges are followed in both directions; every vertex ends up labeled with
    the smallest vertex ID of its component.
    """
    n = g.num_vertices
    sym = symmetrize(g)
    labels = np.arange(n, dtype=np.int64)
    frontier = Frontier.full(n)
    stats = []
    while len(frontier):
        prev = labels.copy()

        def relax(p, src, dst):
            verts, run = segments(dst)
            starts = np.flatnonzero(np.diff(run, prepend=-1))
            best = np.minimum.reduceat(prev[src], starts)
            better = best < labels[verts]
            labels[verts[better]] = best[better]
            return verts[better]

        frontier, st = edgemap(sym, a, frontier, relax, workers, timed)
        stats.append(st)
    return labels, stats


def spmv(
    g: Graph, a: PartitionAssignment, x, workers: int = 1, timed: bool = False
) -> tuple[np.ndarray, WorkStats]:
    """``y[v] = sum of x[u] over in-edges (u, v)``; parallel edges count each time."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.num_vertices,):
        raise ValueError(f"vector has length {x.shape[0]}, graph has {g.num_vertices} vertices")
    y = np.zeros(g.num_vertices)

    def accumulate(p, src, dst):
        verts, sums = segment_sum(dst, x[src])
        y[verts] += sums

    _, st = edgemap(g, a, Frontier.full(g.num_vertices), accumulate, workers, timed)
    return y, st
