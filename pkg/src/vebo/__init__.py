"""Vertex- and edge-balanced graph reordering and partitioning."""
from .engine import (
    Frontier,
    WorkStats,
    bfs,
    connected_components,
    dense_work_stats,
    edgemap,
    pagerank,
    spmv,
    vertexmap,
)
from .generate import (
    PreconditionReport,
    ZipfParams,
    check_theorem_preconditions,
    generate_zipf_graph,
    harmonic_number,
    zipf_pmf,
)
from .graph import (
    DegreeHistogram,
    Graph,
    Permutation,
    VertexRangeError,
    apply_permutation,
    degree_histogram,
    from_edge_list,
    in_degree,
    to_edge_list,
)
from .metrics import ImbalanceReport, compare_orderings, report
from .order import (
    DegreeSortedOrder,
    greedy_placement,
    imbalance_after_placement,
    sort_by_degree_desc,
    vebo_reorder,
)
from .partition import PartitionAssignment, induce_edge_partitions, partition_by_destination

__version__ = "0.1.0"
