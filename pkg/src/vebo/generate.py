"""Synthetic graphs with a Zipf-distributed in-degree sequence.

Rank ``k`` (1-based) stands for in-degree ``k - 1`` and occurs with
probability ``k**-s / H(N, s)``. Vertex counts per rank are obtained by
largest-remainder apportionment of ``n * p_k``; each in-edge then draws its
source uniformly from all ``n`` vertices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, _frozen, _group_key, degree_histogram


@dataclass(frozen=True)
class ZipfParams:
    n: int
    N: int
    s: float
    seed: int = 0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"rank count N must be at least 1, got {self.N}")
        if self.n < self.N:
            raise ValueError(f"need n >= N, got n={self.n}, N={self.N}")
        if not self.s >= 0:
            raise ValueError(f"skew s must be nonnegative, got {self.s}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


def harmonic_number(N: int, s: float) -> float:
    """Generalized harmonic number ``sum(i**-s for i in 1..N)``."""
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    return math.fsum(i ** -s for i in range(1, N + 1))


def zipf_pmf(k: int, params: ZipfParams) -> float:
    if not 1 <= k <= params.N:
        raise ValueError(f"rank {k} outside 1..{params.N}")
    return k ** -params.s / harmonic_number(params.N, params.s)


def rank_counts(params: ZipfParams) -> np.ndarray:
    """Number of vertices per rank (index ``k - 1``), summing exactly to ``n``.

    Hamilton apportionment: floor every target, then hand the leftover
    vertices to the largest fractional parts, smaller degree first on ties.
    """
    H = harmonic_number(params.N, params.s)
    targets = [params.n * k ** -params.s / H for k in range(1, params.N + 1)]
    counts = [math.floor(t) for t in targets]
    leftover = params.n - sum(counts)
    by_remainder = sorted(range(params.N), key=lambda i: (-(targets[i] - counts[i]), i))
    for i in by_remainder[:leftover]:
        counts[i] += 1
    return np.asarray(counts, dtype=np.int64)


def generate_zipf_graph(params: ZipfParams) -> Graph:
    """Deterministic configuration-model graph; same params give the same graph.

    In-degrees are shuffled over vertex IDs so the original ordering carries
    no degree structure.
    """
    counts = rank_counts(params)
    n = params.n
    degrees = np.repeat(np.arange(params.N, dtype=np.int64), counts)
    shuffle_seq, source_seq = np.random.SeedSequence(params.seed).spawn(2)
    np.random.default_rng(shuffle_seq).shuffle(degrees)

    key = np.repeat(np.arange(n, dtype=np.int64) * n, degrees)
    key += np.random.default_rng(source_seq).integers(0, n, size=key.shape[0], dtype=np.int64)
    offsets, sources = _group_key(key, n)
    return Graph(n, _frozen(offsets), _frozen(sources))


@dataclass(frozen=True)
class PreconditionReport:
    """Which theorem preconditions a graph meets for ``P`` partitions and skew ``s``."""

    num_edges: int
    num_vertices: int
    rank_count: int
    parts: int
    s: float
    edge_bound: int
    vertex_bound: float

    @property
    def edge_condition(self) -> bool:
        return self.num_edges >= self.edge_bound

    @property
    def parts_condition(self) -> bool:
        return self.parts < self.rank_count

    @property
    def vertex_condition(self) -> bool:
        return self.num_vertices >= self.vertex_bound

    @property
    def edge_balance_guaranteed(self) -> bool:
        return self.s > 0 and self.edge_condition and self.parts_condition

    @property
    def vertex_balance_guaranteed(self) -> bool:
        return self.edge_balance_guaranteed and self.vertex_condition


def check_theorem_preconditions(g: Graph, P: int, s: float) -> PreconditionReport:
    if P < 1:
        raise ValueError(f"partition count must be at least 1, got {P}")
    N = degree_histogram(g).rank_count
    return PreconditionReport(
        num_edges=g.num_edges,
        num_vertices=g.num_vertices,
        rank_count=N,
        parts=P,
        s=s,
        edge_bound=N * (P - 1),
        vertex_bound=N * harmonic_number(N, s),
    )
