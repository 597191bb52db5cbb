# cython: language_level=3, boundscheck=False, wraparound=False
# cython: initializedcheck=False, cdivision=True
# distutils: language = c++
"""Compiled counting kernels.

Same algorithms and scratch contracts as the pure-Python module; see its
docstring.  CSR arrays arrive as typed memoryviews (int64 offsets, uint32
adjacency and rank, uint64 scratch/output), the hash variants use
std::unordered_map with default hashing, and additions onto 64-bit
counters are wrap-checked so overflow raises instead of corrupting.
"""

from cython.operator cimport dereference as deref, preincrement as inc
from libc.stdint cimport int64_t, uint32_t, uint64_t
from libcpp.algorithm cimport sort
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

from .errors import CounterOverflowError


def global_count(const int64_t[::1] off, const uint32_t[::1] adj,
                 const uint32_t[::1] rank, uint64_t[::1] counts):
    """Total 4-cycle count via wedges into a flat counter array."""
    cdef Py_ssize_t n = off.shape[0] - 1
    cdef Py_ssize_t v, i, j
    cdef uint32_t u, y, rv
    cdef uint64_t total = 0, prev
    for v in range(n):
        rv = rank[v]
        for i in range(off[v], off[v + 1]):
            u = adj[i]
            if rank[u] < rv:
                for j in range(off[u], off[u + 1]):
                    y = adj[j]
                    if rank[y] < rv:
                        prev = total
                        total += counts[y]
                        if total < prev:
                            raise CounterOverflowError("4-cycle count exceeds 64 bits")
                        counts[y] += 1
        # Reset pass deliberately skips the rank filter on y.
        for i in range(off[v], off[v + 1]):
            u = adj[i]
            if rank[u] < rv:
                for j in range(off[u], off[u + 1]):
                    counts[adj[j]] = 0
    return total


def global_count_sorted(const int64_t[::1] off, const uint32_t[::1] adj,
                        const int64_t[::1] split, uint64_t[::1] counts):
    """Total count on a direction-sorted CSR: sentinel walk, no rank tests."""
    cdef Py_ssize_t n = off.shape[0] - 1
    cdef Py_ssize_t v, i, j
    cdef uint32_t u, y
    cdef uint64_t total = 0, prev
    for v in range(n):
        for i in range(off[v], off[v] + split[v]):
            u = adj[i]
            j = off[u]
            while True:
                y = adj[j]
                if y == <uint32_t> v:
                    break
                prev = total
                total += counts[y]
                if total < prev:
                    raise CounterOverflowError("4-cycle count exceeds 64 bits")
                counts[y] += 1
                j += 1
        for i in range(off[v], off[v] + split[v]):
            u = adj[i]
            j = off[u]
            while True:
                y = adj[j]
                if y == <uint32_t> v:
                    break
                counts[y] = 0
                j += 1
    return total


cdef inline uint64_t _add_checked(uint64_t acc, uint64_t inc_by) except? 0:
    cdef uint64_t s = acc + inc_by
    if s < acc:
        raise CounterOverflowError("4-cycle count exceeds 64 bits")
    return s


def vertex_count(const int64_t[::1] off, const uint32_t[::1] adj,
                 const uint32_t[::1] rank, uint64_t[::1] pairs,
                 uint64_t[::1] out):
    """Per-vertex counts; ``out`` is a zeroed array of length n."""
    cdef Py_ssize_t n = off.shape[0] - 1
    cdef Py_ssize_t v, i, j, t
    cdef uint32_t u, y, rv
    cdef uint64_t o
    for v in range(n):
        rv = rank[v]
        for i in range(off[v], off[v + 1]):
            u = adj[i]
            if rank[u] < rv:
                for j in range(off[u], off[u + 1]):
                    y = adj[j]
                    if rank[y] < rv:
                        t = 2 * <Py_ssize_t> y
                        o = pairs[t]
                        out[v] = _add_checked(out[v], o)
                        out[y] = _add_checked(out[y], o)
                        pairs[t + 1] = o
                        pairs[t] = o + 1
        # Second pass credits the wedge midpoints.  The rank filter on y is
        # required here: the copy slot is stale for any y not touched above.
        for i in range(off[v], off[v + 1]):
            u = adj[i]
            if rank[u] < rv:
                for j in range(off[u], off[u + 1]):
                    y = adj[j]
                    if rank[y] < rv:
                        t = 2 * <Py_ssize_t> y
                        out[u] = _add_checked(out[u], pairs[t + 1])
                        pairs[t] = 0
    return None


def edge_count(const int64_t[::1] off, const uint32_t[::1] adj,
               const uint32_t[::1] rank, uint64_t[::1] pairs,
               uint64_t[::1] slots, uint64_t[::1] out):
    """Per-edge counts; ``slots`` has one zeroed cell per half-edge and
    ``out`` one per undirected edge, filled in canonical scan order."""
    cdef Py_ssize_t n = off.shape[0] - 1
    cdef Py_ssize_t v, i, j, t, k
    cdef uint32_t u, y, rv
    cdef uint64_t c, s
    for v in range(n):
        rv = rank[v]
        for i in range(off[v], off[v + 1]):
            u = adj[i]
            if rank[u] < rv:
                for j in range(off[u], off[u + 1]):
                    y = adj[j]
                    if rank[y] < rv:
                        t = 2 * <Py_ssize_t> y
                        pairs[t + 1] = pairs[t]
                        pairs[t] += 1
        for i in range(off[v], off[v + 1]):
            u = adj[i]
            if rank[u] < rv:
                for j in range(off[u], off[u + 1]):
                    y = adj[j]
                    if rank[y] < rv:
                        t = 2 * <Py_ssize_t> y
                        c = pairs[t + 1]
                        slots[i] = _add_checked(slots[i], c)
                        slots[j] = _add_checked(slots[j], c)
                        pairs[t] = 0
    # Fold the two directed shares of each edge into its canonical slot.
    # Safe in place: an edge's two slots are never read again after its own
    # visit, and each edge is visited once (from its higher-ranked end).
    for v in range(n):
        rv = rank[v]
        for i in range(off[v], off[v + 1]):
            u = adj[i]
            if rank[u] < rv:
                j = off[u]
                while adj[j] != <uint32_t> v:
                    j += 1
                s = _add_checked(slots[i], slots[j])
                if (<uint32_t> v) < u:
                    slots[i] = s
                else:
                    slots[j] = s
    k = 0
    for v in range(n):
        for i in range(off[v], off[v + 1]):
            if adj[i] > <uint32_t> v:
                out[k] = slots[i]
                k += 1
    return None


def global_count_hash(const int64_t[::1] off, const uint32_t[::1] adj,
                      const uint32_t[::1] rank):
    """Total count with a per-vertex unordered_map instead of the array."""
    cdef Py_ssize_t n = off.shape[0] - 1
    cdef Py_ssize_t v, i, j
    cdef uint32_t u, y, rv
    cdef uint64_t total = 0, prev, c
    cdef unordered_map[uint32_t, uint64_t] counts
    for v in range(n):
        rv = rank[v]
        counts.clear()
        for i in range(off[v], off[v + 1]):
            u = adj[i]
            if rank[u] < rv:
                for j in range(off[u], off[u + 1]):
                    y = adj[j]
                    if rank[y] < rv:
                        c = counts[y]
                        prev = total
                        total += c
                        if total < prev:
                            raise CounterOverflowError("4-cycle count exceeds 64 bits")
                        counts[y] = c + 1
    return total


def vertex_count_hash(const int64_t[::1] off, const uint32_t[::1] adj,
                      const uint32_t[::1] rank, uint64_t[::1] out):
    """Per-vertex counts with a per-vertex unordered_map."""
    cdef Py_ssize_t n = off.shape[0] - 1
    cdef Py_ssize_t v, i, j
    cdef uint32_t u, y, rv
    cdef uint64_t c
    cdef unordered_map[uint32_t, uint64_t] counts
    for v in range(n):
        rv = rank[v]
        counts.clear()
        for i in range(off[v], off[v + 1]):
            u = adj[i]
            if rank[u] < rv:
                for j in range(off[u], off[u + 1]):
                    y = adj[j]
                    if rank[y] < rv:
                        c = counts[y]
                        out[v] = _add_checked(out[v], c)
                        out[y] = _add_checked(out[y], c)
                        counts[y] = c + 1
        for i in range(off[v], off[v + 1]):
            u = adj[i]
            if rank[u] < rv:
                for j in range(off[u], off[u + 1]):
                    y = adj[j]
                    if rank[y] < rv:
                        out[u] = _add_checked(out[u], counts[y] - 1)
    return None


cdef inline uint64_t _edge_key(uint32_t a, uint32_t b):
    # Lower ID in the high 32 bits.
    if a < b:
        return (<uint64_t> a << 32) | b
    return (<uint64_t> b << 32) | a


def edge_count_hash(const int64_t[::1] off, const uint32_t[::1] adj,
                    const uint32_t[::1] rank, bint materialize):
    """Per-edge counts into an unordered_map keyed by packed endpoint pairs.

    Returns (dict_or_None, sum_of_values).  The wedge map is cleared after
    each outer vertex, not inside pass 2, because a midpoint can recur
    under different u within the same vertex.
    """
    cdef Py_ssize_t n = off.shape[0] - 1
    cdef Py_ssize_t v, i, j
    cdef uint32_t u, y, rv
    cdef uint64_t c, kvu, kuy, total = 0, prev
    cdef unordered_map[uint32_t, uint64_t] wedges
    cdef unordered_map[uint64_t, uint64_t] edge_counts
    cdef unordered_map[uint64_t, uint64_t].iterator it
    for v in range(n):
        rv = rank[v]
        for i in range(off[v], off[v + 1]):
            u = adj[i]
            if rank[u] < rv:
                for j in range(off[u], off[u + 1]):
                    y = adj[j]
                    if rank[y] < rv:
                        wedges[y] = wedges[y] + 1
        for i in range(off[v], off[v + 1]):
            u = adj[i]
            if rank[u] < rv:
                kvu = _edge_key(<uint32_t> v, u)
                for j in range(off[u], off[u + 1]):
                    y = adj[j]
                    if rank[y] < rv:
                        c = wedges[y] - 1
                        kuy = _edge_key(u, y)
                        edge_counts[kvu] = _add_checked(edge_counts[kvu], c)
                        edge_counts[kuy] = _add_checked(edge_counts[kuy], c)
        wedges.clear()
    result = None
    if materialize:
        result = {}
    it = edge_counts.begin()
    while it != edge_counts.end():
        prev = total
        total += deref(it).second
        if total < prev:
            raise CounterOverflowError("4-cycle count exceeds 64 bits")
        if materialize:
            result[deref(it).first] = deref(it).second
        inc(it)
    return result, total


def sort_neighborhoods(const int64_t[::1] off, uint32_t[::1] adj,
                       const uint32_t[::1] rank, int64_t[::1] split):
    """Reorder each list in place: lower-ranked neighbors first (original
    relative order kept), the rest ascending by rank.  Fills ``split``."""
    cdef Py_ssize_t n = off.shape[0] - 1
    cdef Py_ssize_t v, i, k
    cdef size_t w
    cdef uint32_t u, rv
    cdef vector[uint32_t] lower
    cdef vector[uint64_t] upper  # (rank << 32) | id, so sorting by rank
    for v in range(n):
        rv = rank[v]
        lower.clear()
        upper.clear()
        for i in range(off[v], off[v + 1]):
            u = adj[i]
            if rank[u] < rv:
                lower.push_back(u)
            else:
                upper.push_back((<uint64_t> rank[u] << 32) | u)
        sort(upper.begin(), upper.end())
        split[v] = <int64_t> lower.size()
        k = off[v]
        for w in range(lower.size()):
            adj[k] = lower[w]
            k += 1
        for w in range(upper.size()):
            adj[k] = <uint32_t> (upper[w] & 0xFFFFFFFF)
            k += 1
    return None
