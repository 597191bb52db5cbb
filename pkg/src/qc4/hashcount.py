"""Map-based counting variants.

Same wedge scans as the array kernels, but the per-vertex counters live in
a general-purpose associative map with default hashing: std::unordered_map
in the compiled backend, dict in the pure-Python one.  These exist as the
baseline the flat-array variants are benchmarked against; results are
identical.
"""

import numpy as np

from . import backend as _backend
from .count import edge_endpoints
from .graph import GraphCSR


def count_global_hash(g: GraphCSR, *, backend: str | None = None) -> int:
    """Number of 4-cycles, wedge counters in a map."""
    bk = _backend.resolve(backend)
    kern = _backend.kernels(bk)
    if bk == _backend.COMPILED:
        return int(kern.global_count_hash(g.offsets, g.adjacency, g.order.rank))
    off, adj = g._list_views
    return kern.global_count_hash(off, adj, g._rank_list)


def count_per_vertex_hash(g: GraphCSR, *, backend: str | None = None) -> np.ndarray:
    """Per-vertex 4-cycle counts, wedge counters in a map."""
    bk = _backend.resolve(backend)
    kern = _backend.kernels(bk)
    if bk == _backend.COMPILED:
        out = np.zeros(g.n, dtype=np.uint64)
        kern.vertex_count_hash(g.offsets, g.adjacency, g.order.rank, out)
        return out
    off, adj = g._list_views
    out = [0] * g.n
    kern.vertex_count_hash(off, adj, g._rank_list, out)
    return np.asarray(out, dtype=np.uint64)


def _packed_edge_counts(g: GraphCSR, backend: str | None):
    bk = _backend.resolve(backend)
    kern = _backend.kernels(bk)
    if bk == _backend.COMPILED:
        packed, _total = kern.edge_count_hash(g.offsets, g.adjacency, g.order.rank, True)
        return packed
    off, adj = g._list_views
    return kern.edge_count_hash(off, adj, g._rank_list)


def count_per_edge_hash(g: GraphCSR, *, backend: str | None = None) -> dict:
    """Per-edge 4-cycle counts as {(lower, higher): count} over all edges.

    The kernel's map only materializes edges that closed at least one
    wedge pair; this densifies it so every edge of the graph is a key.
    """
    packed = _packed_edge_counts(g, backend)
    lo, hi = edge_endpoints(g)
    out = {}
    for a, b in zip(lo.tolist(), hi.tolist()):
        out[(a, b)] = packed.get((a << 32) | b, 0)
    return out
