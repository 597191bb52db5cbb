"""Public 4-cycle counting, localization, and enumeration API.

All counting variants share the same skeleton: for each vertex v, scan the
wedges (v, u, y) with u and y strictly below v in the degree order, then
undo the scratch writes so the workspace is all-zero again.  Total work is
O(m * avg_degeneracy); auxiliary space is one length-n buffer (plus one
cell per half-edge for the per-edge variant).

Results are exact 64-bit counts.  The ``backend`` argument selects the
compiled or pure-Python kernels explicitly; None picks the best available.
"""

import weakref
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import backend as _backend
from .graph import GraphCSR, SortedGraphCSR

_U64 = np.uint64


class Scratch:
    """Reusable counting workspace bound to a vertex count.

    Buffers are allocated lazily, once each, and recorded in
    ``allocations`` as (name, length-in-entries) pairs so tests can audit
    the footprint.  The kernels' reset discipline keeps ``counts`` and the
    live slots of ``pairs`` all-zero between calls; ``is_clean`` verifies
    that.  The per-half-edge accumulator is the one buffer that is
    re-zeroed on acquisition instead, since it carries results out of the
    final pass.
    """

    def __init__(self, n: int, kind: str = "numpy"):
        if kind not in ("numpy", "list"):
            raise ValueError(f"unknown scratch kind {kind!r}")
        self.n = n
        self.kind = kind
        self.allocations: list[tuple[str, int]] = []
        self._counts = None
        self._pairs = None
        self._edge_slots = None

    def counts(self):
        """Length-n counter array (the per-vertex wedge totals)."""
        if self._counts is None:
            self._counts = (
                np.zeros(self.n, dtype=_U64) if self.kind == "numpy" else [0] * self.n
            )
            self.allocations.append(("counts", self.n))
        return self._counts

    def pairs(self):
        """Length-n array of (live, copy) counter pairs, interleaved."""
        if self._pairs is None:
            self._pairs = (
                np.zeros(2 * self.n, dtype=_U64) if self.kind == "numpy" else [0] * (2 * self.n)
            )
            self.allocations.append(("pairs", self.n))
        return self._pairs

    def edge_slots(self, half_edges: int):
        """Per-half-edge accumulator, re-zeroed on every acquisition."""
        if self._edge_slots is None:
            self._edge_slots = (
                np.zeros(half_edges, dtype=_U64) if self.kind == "numpy" else [0] * half_edges
            )
            self.allocations.append(("edge_slots", half_edges))
        elif len(self._edge_slots) != half_edges:
            raise ValueError("scratch was allocated for a different graph")
        elif self.kind == "numpy":
            self._edge_slots[:] = 0
        else:
            self._edge_slots[:] = [0] * half_edges
        return self._edge_slots

    def is_clean(self) -> bool:
        """True when every kernel-managed buffer is back to all-zero."""
        if self._counts is not None:
            dirty = self._counts.any() if self.kind == "numpy" else any(self._counts)
            if dirty:
                return False
        if self._pairs is not None:
            live = self._pairs[0::2]
            dirty = live.any() if self.kind == "numpy" else any(live)
            if dirty:
                return False
        return True


_scratch_cache: "weakref.WeakKeyDictionary[GraphCSR, dict]" = weakref.WeakKeyDictionary()


def _scratch_for(g: GraphCSR, kind: str, scratch: Scratch | None) -> Scratch:
    if scratch is not None:
        if scratch.n != g.n:
            raise ValueError("scratch was allocated for a different vertex count")
        if scratch.kind != kind:
            raise ValueError(
                f"scratch kind {scratch.kind!r} does not match the {kind!r} backend"
            )
        return scratch
    per_graph = _scratch_cache.setdefault(g, {})
    if kind not in per_graph:
        per_graph[kind] = Scratch(g.n, kind)
    return per_graph[kind]


def _kind(backend_name: str) -> str:
    return "numpy" if backend_name == _backend.COMPILED else "list"


class CycleTuple(NamedTuple):
    """One 4-cycle as emitted: v-u-y-x-v, with v the rank-maximum corner
    and y opposite it."""

    v: int
    u: int
    y: int
    x: int


@dataclass
class C4Counts:
    """Bundle of all three quantities for one graph."""

    total: int
    per_vertex: np.ndarray   # uint64, length n
    per_edge: np.ndarray     # uint64, length m, canonical scan order

    def vertex_sum_matches(self) -> bool:
        """Each cycle is seen from its four corners."""
        return int(self.per_vertex.sum(dtype=_U64)) == 4 * self.total

    def edge_sum_matches(self) -> bool:
        """Each cycle is seen from its four sides."""
        return int(self.per_edge.sum(dtype=_U64)) == 4 * self.total

    def halving_matches(self, g: GraphCSR) -> bool:
        """Edge counts around a vertex double-count its cycles."""
        src, dst = edge_endpoints(g)
        around = np.zeros(g.n, dtype=_U64)
        np.add.at(around, src, self.per_edge)
        np.add.at(around, dst, self.per_edge)
        return bool(np.array_equal(around, 2 * self.per_vertex))


def count_global(g: GraphCSR, *, scratch: Scratch | None = None,
                 backend: str | None = None) -> int:
    """Number of 4-cycles in the graph."""
    bk = _backend.resolve(backend)
    kern = _backend.kernels(bk)
    sc = _scratch_for(g, _kind(bk), scratch)
    if bk == _backend.COMPILED:
        return int(kern.global_count(g.offsets, g.adjacency, g.order.rank, sc.counts()))
    off, adj = g._list_views
    return kern.global_count(off, adj, g._rank_list, sc.counts())


def count_global_sorted(g: SortedGraphCSR, *, scratch: Scratch | None = None,
                        backend: str | None = None) -> int:
    """Number of 4-cycles, using sentinel walks over pre-sorted lists."""
    if not isinstance(g, SortedGraphCSR):
        raise TypeError("count_global_sorted requires a SortedGraphCSR; "
                        "run preprocess_sort first")
    bk = _backend.resolve(backend)
    kern = _backend.kernels(bk)
    sc = _scratch_for(g, _kind(bk), scratch)
    if bk == _backend.COMPILED:
        return int(kern.global_count_sorted(g.offsets, g.adjacency, g.split, sc.counts()))
    off, adj = g._list_views
    return kern.global_count_sorted(off, adj, g._split_list, sc.counts())


def count_per_vertex(g: GraphCSR, *, scratch: Scratch | None = None,
                     backend: str | None = None) -> np.ndarray:
    """Array of per-vertex 4-cycle counts (cycles through each vertex)."""
    bk = _backend.resolve(backend)
    kern = _backend.kernels(bk)
    sc = _scratch_for(g, _kind(bk), scratch)
    if bk == _backend.COMPILED:
        out = np.zeros(g.n, dtype=_U64)
        kern.vertex_count(g.offsets, g.adjacency, g.order.rank, sc.pairs(), out)
        return out
    off, adj = g._list_views
    out = [0] * g.n
    kern.vertex_count(off, adj, g._rank_list, sc.pairs(), out)
    return np.asarray(out, dtype=_U64)


def count_per_edge(g: GraphCSR, *, scratch: Scratch | None = None,
                   backend: str | None = None) -> np.ndarray:
    """Array of per-edge 4-cycle counts in canonical scan order.

    Entry i belongs to the i-th edge when half-edges are scanned in CSR
    order keeping only those with the lower endpoint first; pair the
    values with endpoints via ``edge_endpoints``.
    """
    bk = _backend.resolve(backend)
    kern = _backend.kernels(bk)
    sc = _scratch_for(g, _kind(bk), scratch)
    if bk == _backend.COMPILED:
        out = np.zeros(g.edge_count, dtype=_U64)
        kern.edge_count(g.offsets, g.adjacency, g.order.rank, sc.pairs(),
                        sc.edge_slots(g.half_edges), out)
        return out
    off, adj = g._list_views
    out = [0] * g.edge_count
    kern.edge_count(off, adj, g._rank_list, sc.pairs(),
                    sc.edge_slots(g.half_edges), out)
    return np.asarray(out, dtype=_U64)


def count_all(g: GraphCSR, *, scratch: Scratch | None = None,
              backend: str | None = None) -> C4Counts:
    """All three quantities with one shared scratch."""
    return C4Counts(
        total=count_global(g, scratch=scratch, backend=backend),
        per_vertex=count_per_vertex(g, scratch=scratch, backend=backend),
        per_edge=count_per_edge(g, scratch=scratch, backend=backend),
    )


def enumerate_cycles(g: GraphCSR, sink: Callable[[CycleTuple], None]) -> int:
    """Stream every 4-cycle to ``sink`` exactly once; returns the count.

    Tuples follow the ``CycleTuple`` convention.  Enumeration always runs
    the pure-Python kernel: its cost is dominated by emitting the output,
    which can be Theta(n^2) cycles even on sparse graphs.
    """
    off, adj = g._list_views

    def emit(v, u, y, x):
        sink(CycleTuple(v, u, y, x))

    return _backend.kernels(_backend.PYTHON).enumerate_cycles(off, adj, g._rank_list, emit)


def collect_cycles(g: GraphCSR) -> list[CycleTuple]:
    """Materialize the enumeration; convenient for tests and small graphs."""
    out: list[CycleTuple] = []
    enumerate_cycles(g, out.append)
    return out


_endpoint_cache: "weakref.WeakKeyDictionary[GraphCSR, tuple]" = weakref.WeakKeyDictionary()


def edge_endpoints(g: GraphCSR) -> tuple[np.ndarray, np.ndarray]:
    """(lower, higher) endpoint arrays aligned with per-edge count output.

    Edge i is the i-th half-edge with src < dst when scanning the CSR in
    slot order; this numbering is a bijection onto 0..m-1.
    """
    cached = _endpoint_cache.get(g)
    if cached is None:
        src = np.repeat(np.arange(g.n, dtype=np.uint32), g.degrees)
        fwd = src < g.adjacency
        lo, hi = src[fwd], g.adjacency[fwd]
        lo.setflags(write=False)
        hi.setflags(write=False)
        cached = (lo, hi)
        _endpoint_cache[g] = cached
    return cached


def edge_index_of(g: GraphCSR, u: int, v: int) -> int:
    """Position of edge {u, v} in the canonical edge numbering."""
    lo, hi = edge_endpoints(g)
    a, b = (u, v) if u < v else (v, u)
    start, stop = np.searchsorted(lo, [a, a + 1])
    hits = np.flatnonzero(hi[start:stop] == b)
    if hits.shape[0] != 1:
        raise KeyError(f"no edge {{{u}, {v}}} in the graph")
    return int(start + hits[0])


def validate_cycle_tuples(g: GraphCSR, cycles: list[CycleTuple]) -> None:
    """Check the enumeration contract; raises ValueError on violation.

    Every tuple must be four distinct vertices forming a closed walk
    v-u-y-x-v over existing edges with v the rank-maximum corner, and no
    cycle may appear twice (tuples are canonicalized by their two
    diagonal pairs before comparison).
    """
    present = set()
    lo, hi = edge_endpoints(g)
    for a, b in zip(lo.tolist(), hi.tolist()):
        present.add((a, b))

    def has_edge(a, b):
        return ((a, b) if a < b else (b, a)) in present

    order = g.order
    seen = set()
    for t in cycles:
        if len({t.v, t.u, t.y, t.x}) != 4:
            raise ValueError(f"degenerate tuple {t}")
        for a, b in ((t.v, t.u), (t.u, t.y), (t.y, t.x), (t.x, t.v)):
            if not has_edge(a, b):
                raise ValueError(f"tuple {t} uses missing edge {{{a}, {b}}}")
        for w in (t.u, t.y, t.x):
            if not order.precedes(w, t.v):
                raise ValueError(f"tuple {t} is not anchored at its rank-maximum")
        key = (min(t.v, t.y), max(t.v, t.y), min(t.u, t.x), max(t.u, t.x))
        if key in seen:
            raise ValueError(f"cycle {key} emitted twice")
        seen.add(key)
