"""Exact 4-cycle counting, localization, and listing for sparse graphs.

Runs in O(m * avg_degeneracy) time with one length-n scratch array; see
the README for the algorithm family and the array-vs-map benchmark.
"""

from .backend import available_backends, default_backend
from .bench import BenchMismatchError, BenchRecord, run_benchmarks
from .count import (
    C4Counts,
    CycleTuple,
    Scratch,
    collect_cycles,
    count_all,
    count_global,
    count_global_sorted,
    count_per_edge,
    count_per_vertex,
    edge_endpoints,
    edge_index_of,
    enumerate_cycles,
    validate_cycle_tuples,
)
from .errors import (
    CacheFormatError,
    CounterOverflowError,
    DuplicateEdgeError,
    EdgeListError,
    OracleCapError,
    ParseError,
    SelfLoopError,
    VertexIdOverflowError,
)
from .graph import (
    DegreeOrder,
    GraphCSR,
    LoadReport,
    SortedGraphCSR,
    avg_degeneracy,
    dump_edge_list,
    gen_grid,
    load_edge_list,
    load_path,
    preprocess_sort,
    read_csr_cache,
    write_csr_cache,
)
from .hashcount import count_global_hash, count_per_edge_hash, count_per_vertex_hash
from .oracle import (
    DenseAdjacency,
    OracleCounts,
    oracle_global_codegree,
    oracle_local_quadruples,
)

__version__ = "0.1.0"

__all__ = [
    "BenchMismatchError",
    "BenchRecord",
    "C4Counts",
    "CacheFormatError",
    "CounterOverflowError",
    "CycleTuple",
    "DegreeOrder",
    "DenseAdjacency",
    "DuplicateEdgeError",
    "EdgeListError",
    "GraphCSR",
    "LoadReport",
    "OracleCapError",
    "OracleCounts",
    "ParseError",
    "Scratch",
    "SelfLoopError",
    "SortedGraphCSR",
    "VertexIdOverflowError",
    "available_backends",
    "avg_degeneracy",
    "collect_cycles",
    "count_all",
    "count_global",
    "count_global_hash",
    "count_global_sorted",
    "count_per_edge",
    "count_per_edge_hash",
    "count_per_vertex",
    "count_per_vertex_hash",
    "default_backend",
    "dump_edge_list",
    "edge_endpoints",
    "edge_index_of",
    "enumerate_cycles",
    "gen_grid",
    "load_edge_list",
    "load_path",
    "oracle_global_codegree",
    "oracle_local_quadruples",
    "preprocess_sort",
    "read_csr_cache",
    "run_benchmarks",
    "validate_cycle_tuples",
    "write_csr_cache",
    "__version__",
]
