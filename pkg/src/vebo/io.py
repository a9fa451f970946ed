"""Text formats: adjacency graphs, edge lists, permutations and reports.

Adjacency files follow the Ligra layout::

    AdjacencyGraph
    <n>
    <m>
    <n out-edge offsets, one per line>
    <m targets, one per line>

All writers emit ``\\n`` line endings and no trailing whitespace, so equal
inputs produce byte-identical files.
"""
from __future__ import annotations

import math
import os
from typing import Iterable, Optional

import numpy as np

from .engine import WorkStats
from .graph import Graph, Permutation, symmetrize
from .metrics import ImbalanceReport, OrderingRow

HEADER = "AdjacencyGraph"
_CHUNK = 1 << 20


class GraphFormatError(ValueError):
    """Malformed input file; ``line`` is 1-based."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class HeaderError(GraphFormatError):
    pass


class CountMismatchError(GraphFormatError):
    pass


class OffsetOrderError(GraphFormatError):
    pass


class TargetRangeError(GraphFormatError):
    pass


class TokenError(GraphFormatError):
    pass


def _lines(path) -> list[str]:
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    return lines


def _ints(lines: list[str], first_line: int) -> np.ndarray:
    """Parse one decimal integer per line; ``first_line`` numbers ``lines[0]``."""
    try:
        return np.array([int(s) for s in lines], dtype=np.int64)
    except ValueError:
        for i, s in enumerate(lines):
            try:
                int(s)
            except ValueError:
                raise TokenError(f"expected an integer, got {s.strip()!r}", first_line + i) from None
        raise


def _int_line(lines: list[str], idx: int, what: str) -> int:
    if idx >= len(lines):
        raise CountMismatchError(f"missing {what}", idx + 1)
    value = _ints([lines[idx]], idx + 1)[0]
    if value < 0:
        raise TokenError(f"{what} must be nonnegative", idx + 1)
    return int(value)


def read_adjacency(path, undirected: bool = False) -> Graph:
    """Load an adjacency file; ``undirected`` adds the reverse of every arc."""
    lines = _lines(path)
    header = lines[0].strip() if lines else ""
    if header != HEADER:
        if header.startswith("Weighted"):
            raise HeaderError("weighted graphs are not supported", 1)
        raise HeaderError(f"expected {HEADER!r}, got {header!r}", 1)
    n = _int_line(lines, 1, "vertex count")
    m = _int_line(lines, 2, "edge count")
    expected = 3 + n + m
    if len(lines) != expected:
        raise CountMismatchError(
            f"expected {expected} lines for {n} vertices and {m} edges, found {len(lines)}",
            min(len(lines), expected) + 1,
        )
    offsets = _ints(lines[3:3 + n], 4)
    targets = _ints(lines[3 + n:], 4 + n)
    if n and offsets[0] != 0:
        raise OffsetOrderError("first offset must be 0", 4)
    drops = np.flatnonzero(np.diff(offsets) < 0)
    if drops.size:
        raise OffsetOrderError("offsets decrease", 4 + int(drops[0]) + 1)
    if n and offsets[-1] > m:
        raise OffsetOrderError(f"offset {int(offsets[-1])} exceeds edge count {m}", 3 + n)
    bad = np.flatnonzero((targets < 0) | (targets >= n))
    if bad.size:
        i = int(bad[0])
        raise TargetRangeError(f"target {int(targets[i])} out of range for {n} vertices", 4 + n + i)
    degrees = np.diff(np.append(offsets, m))
    src = np.repeat(np.arange(n, dtype=np.int64), degrees)
    g = Graph.from_arrays(n, src, targets)
    return symmetrize(g) if undirected else g


def _write_ints(fh, values: np.ndarray) -> None:
    for lo in range(0, values.shape[0], _CHUNK):
        chunk = values[lo:lo + _CHUNK].tolist()
        fh.write("\n".join(map(str, chunk)))
        fh.write("\n")


def write_adjacency(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"{HEADER}\n{g.num_vertices}\n{g.num_edges}\n")
        _write_ints(fh, g.out_offsets[:-1])
        _write_ints(fh, g.out_targets)


def read_edge_list(path, n: Optional[int] = None, undirected: bool = False) -> Graph:
    """Load ``src dst`` lines; ``#`` starts a comment. ``n`` defaults to 1 + max ID."""
    src, dst, where = [], [], []
    for lineno, raw in enumerate(_lines(path), start=1):
        body = raw.split("#", 1)[0].split()
        if not body:
            continue
        if len(body) != 2:
            raise TokenError(f"expected 2 tokens, got {len(body)}", lineno)
        try:
            a, b = int(body[0]), int(body[1])
        except ValueError:
            raise TokenError(f"non-numeric vertex ID in {raw.strip()!r}", lineno) from None
        if a < 0 or b < 0:
            raise TargetRangeError("vertex IDs must be nonnegative", lineno)
        src.append(a)
        dst.append(b)
        where.append(lineno)
    if n is None:
        n = 1 + max(max(src, default=-1), max(dst, default=-1))
    for i, (a, b) in enumerate(zip(src, dst)):
        if a >= n or b >= n:
            raise TargetRangeError(f"vertex ID {max(a, b)} out of range for {n} vertices", where[i])
    g = Graph.from_arrays(n, src, dst)
    return symmetrize(g) if undirected else g


def write_edge_list(g: Graph, path) -> None:
    src = g.in_sources.astype(np.int64)
    dst = g.in_destinations.astype(np.int64)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for lo in range(0, src.shape[0], _CHUNK):
            pairs = zip(src[lo:lo + _CHUNK].tolist(), dst[lo:lo + _CHUNK].tolist())
            fh.write("".join(f"{a} {b}\n" for a, b in pairs))


def read_graph(path, undirected: bool = False) -> Graph:
    """Adjacency file if the first line says so, edge list otherwise."""
    with open(path, "r", encoding="ascii") as fh:
        first = fh.readline().strip()
    if first.endswith(HEADER):
        return read_adjacency(path, undirected)
    return read_edge_list(path, undirected=undirected)


def write_permutation(p: Permutation, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        _write_ints(fh, p.seq)


def read_permutation(path) -> Permutation:
    lines = _lines(path)
    return Permutation(_ints(lines, 1))


# ---------------------------------------------------------------- reports


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return repr(value)
    if isinstance(value, np.ndarray):
        return ",".join(str(int(x)) for x in value)
    return str(value)


def format_records(records: Iterable[tuple[str, object]]) -> str:
    return "".join(f"{key}={_fmt(value)}\n" for key, value in records)


def report_records(r: ImbalanceReport, prefix: str = "") -> list[tuple[str, object]]:
    rec = [
        ("parts", r.P),
        ("num_vertices", r.num_vertices),
        ("num_edges", r.num_edges),
        ("edge_imbalance", r.edge_imbalance),
        ("vertex_imbalance", r.vertex_imbalance),
    ]
    for name, stats in (("edges", r.edges), ("vertices", r.vertices)):
        rec += [
            (f"{name}.min", stats.min),
            (f"{name}.max", stats.max),
            (f"{name}.median", stats.median),
            (f"{name}.stddev", stats.stddev),
            (f"{name}.ratio", stats.ratio),
        ]
    rec += [("edge_counts", r.edge_counts), ("vertex_counts", r.vertex_counts)]
    pre = r.preconditions
    if pre is not None:
        rec += [
            ("pre.s", float(pre.s)),
            ("pre.rank_count", pre.rank_count),
            ("pre.edge_bound", pre.edge_bound),
            ("pre.vertex_bound", pre.vertex_bound),
            ("pre.edge_condition", pre.edge_condition),
            ("pre.parts_condition", pre.parts_condition),
            ("pre.vertex_condition", pre.vertex_condition),
        ]
    return [(prefix + k, v) for k, v in rec]


def work_records(st: WorkStats, prefix: str = "", timing: bool = False) -> list[tuple[str, object]]:
    rec: list[tuple[str, object]] = [("density", float(st.density))]
    for name, stats in st.summary().items():
        rec += [(f"{name}.{k}", v) for k, v in stats.items()]
    rec += [
        ("active_edges", st.active_edges),
        ("unique_destinations", st.unique_destinations),
        ("unique_sources", st.unique_sources),
    ]
    if timing and st.seconds is not None:
        rec.append(("seconds", ",".join(repr(float(s)) for s in st.seconds)))
    return [(prefix + k, v) for k, v in rec]


def comparison_records(rows: list[OrderingRow]) -> list[tuple[str, object]]:
    rec = []
    for row in rows:
        rec += report_records(row.report, f"{row.name}.")
        rec += work_records(row.work, f"{row.name}.work.")
    return rec


def write_text(path, text: str) -> None:
    if path in (None, "-"):
        print(text, end="")
        return
    directory = os.path.dirname(os.fspath(path))
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
