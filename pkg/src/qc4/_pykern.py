"""Pure-Python counting kernels.

Fallback mirror of the compiled extension: same algorithms, same scratch
discipline, plain lists instead of typed memoryviews.  Every function takes
the CSR as two lists (``off``: n+1 offsets, ``adj``: 2m neighbor IDs) plus a
precomputed total-order ``rank`` list (degree ascending, ID tie-break).

Scratch contracts match the compiled kernels exactly: ``counts`` (length n)
and the interleaved ``pairs`` array (length 2n, slot 2y holds the live
counter, 2y+1 the per-iteration copy) must be all-zero on entry at the live
slots and are restored to all-zero before returning.

Counters are capped at 64 bits so both backends report overflow identically
instead of one wrapping and one growing without bound.
"""

from .errors import CounterOverflowError

U64_MAX = 2**64 - 1


def _check_total(total):
    if total > U64_MAX:
        raise CounterOverflowError("4-cycle count exceeds 64 bits")


def _check_entries(values, what):
    if values and max(values) > U64_MAX:
        raise CounterOverflowError(f"per-{what} 4-cycle count exceeds 64 bits")


def global_count(off, adj, rank, counts):
    """Total 4-cycle count via wedges into a flat counter array."""
    n = len(off) - 1
    total = 0
    for v in range(n):
        rv = rank[v]
        seg = adj[off[v] : off[v + 1]]
        for u in seg:
            if rank[u] < rv:
                for y in adj[off[u] : off[u + 1]]:
                    if rank[y] < rv:
                        total += counts[y]
                        counts[y] += 1
        # Reset pass deliberately skips the rank filter on y: clearing a
        # never-touched slot is free and the branch is not.
        for u in seg:
            if rank[u] < rv:
                for y in adj[off[u] : off[u + 1]]:
                    counts[y] = 0
        _check_total(total)
    return total


def global_count_sorted(off, adj, split, counts):
    """Total count on a direction-sorted CSR: sentinel walk, no rank tests.

    Requires each list to hold lower-ranked neighbors first (``split[v]`` of
    them), then higher-ranked ones ascending by rank, so the walk over N(u)
    stops at y == v having seen exactly the wedge endpoints ranked below v.
    """
    n = len(off) - 1
    total = 0
    for v in range(n):
        for u in adj[off[v] : off[v] + split[v]]:
            j = off[u]
            while True:
                y = adj[j]
                if y == v:
                    break
                total += counts[y]
                counts[y] += 1
                j += 1
        for u in adj[off[v] : off[v] + split[v]]:
            j = off[u]
            while True:
                y = adj[j]
                if y == v:
                    break
                counts[y] = 0
                j += 1
        _check_total(total)
    return total


def vertex_count(off, adj, rank, pairs, out):
    """Per-vertex counts; ``out`` is a zeroed list of length n."""
    n = len(off) - 1
    for v in range(n):
        rv = rank[v]
        seg = adj[off[v] : off[v + 1]]
        for u in seg:
            if rank[u] < rv:
                for y in adj[off[u] : off[u + 1]]:
                    if rank[y] < rv:
                        t = 2 * y
                        o = pairs[t]
                        out[v] += o
                        out[y] += o
                        pairs[t + 1] = o
                        pairs[t] = o + 1
        # Second pass credits the wedge midpoints.  The rank filter on y is
        # required here: the copy slot is stale for any y not touched above.
        for u in seg:
            if rank[u] < rv:
                for y in adj[off[u] : off[u + 1]]:
                    if rank[y] < rv:
                        t = 2 * y
                        out[u] += pairs[t + 1]
                        pairs[t] = 0
    _check_entries(out, "vertex")


def edge_count(off, adj, rank, pairs, slots, out):
    """Per-edge counts.

    ``slots`` is a zeroed list with one cell per half-edge, accumulating the
    two directed shares of each edge; ``out`` is a zeroed list with one cell
    per undirected edge, filled in canonical scan order (lower endpoint
    first, then position in its list).
    """
    n = len(off) - 1
    for v in range(n):
        rv = rank[v]
        for u in adj[off[v] : off[v + 1]]:
            if rank[u] < rv:
                for y in adj[off[u] : off[u + 1]]:
                    if rank[y] < rv:
                        t = 2 * y
                        pairs[t + 1] = pairs[t]
                        pairs[t] = pairs[t] + 1
        for i in range(off[v], off[v + 1]):
            u = adj[i]
            if rank[u] < rv:
                for j in range(off[u], off[u + 1]):
                    y = adj[j]
                    if rank[y] < rv:
                        c = pairs[2 * y + 1]
                        slots[i] += c
                        slots[j] += c
                        pairs[2 * y] = 0
    # Fold the two directed shares of each edge into its canonical slot.
    # Safe in place: an edge's two slots are never read again after its own
    # visit, and each edge is visited once (from its higher-ranked end).
    for v in range(n):
        rv = rank[v]
        for i in range(off[v], off[v + 1]):
            u = adj[i]
            if rank[u] < rv:
                j = off[u]
                while adj[j] != v:
                    j += 1
                s = slots[i] + slots[j]
                if v < u:
                    slots[i] = s
                else:
                    slots[j] = s
    k = 0
    for v in range(n):
        for i in range(off[v], off[v + 1]):
            if adj[i] > v:
                out[k] = slots[i]
                k += 1
    _check_entries(out, "edge")


def global_count_hash(off, adj, rank):
    """Total count with a per-vertex dict instead of the counter array."""
    n = len(off) - 1
    total = 0
    for v in range(n):
        rv = rank[v]
        counts = {}
        for u in adj[off[v] : off[v + 1]]:
            if rank[u] < rv:
                for y in adj[off[u] : off[u + 1]]:
                    if rank[y] < rv:
                        c = counts.get(y, 0)
                        total += c
                        counts[y] = c + 1
        _check_total(total)
    return total


def vertex_count_hash(off, adj, rank, out):
    """Per-vertex counts with a per-vertex dict."""
    n = len(off) - 1
    for v in range(n):
        rv = rank[v]
        seg = adj[off[v] : off[v + 1]]
        counts = {}
        for u in seg:
            if rank[u] < rv:
                for y in adj[off[u] : off[u + 1]]:
                    if rank[y] < rv:
                        c = counts.get(y, 0)
                        out[v] += c
                        out[y] += c
                        counts[y] = c + 1
        for u in seg:
            if rank[u] < rv:
                for y in adj[off[u] : off[u + 1]]:
                    if rank[y] < rv:
                        out[u] += counts[y] - 1
    _check_entries(out, "vertex")


def edge_count_hash(off, adj, rank):
    """Per-edge counts into a dict keyed by packed endpoint pairs.

    Keys pack the lower ID into the high 32 bits.  Only edges that close at
    least one wedge pair appear (possibly with value 0); callers densify.
    The wedge dict is cleared after each outer vertex, not inside pass 2,
    because a midpoint can recur under different u within the same vertex.
    """
    n = len(off) - 1
    edge_counts = {}
    for v in range(n):
        rv = rank[v]
        seg = adj[off[v] : off[v + 1]]
        wedges = {}
        for u in seg:
            if rank[u] < rv:
                for y in adj[off[u] : off[u + 1]]:
                    if rank[y] < rv:
                        wedges[y] = wedges.get(y, 0) + 1
        for u in seg:
            if rank[u] < rv:
                if u < v:
                    kvu = (u << 32) | v
                else:
                    kvu = (v << 32) | u
                for y in adj[off[u] : off[u + 1]]:
                    if rank[y] < rv:
                        c = wedges[y] - 1
                        edge_counts[kvu] = edge_counts.get(kvu, 0) + c
                        if u < y:
                            kuy = (u << 32) | y
                        else:
                            kuy = (y << 32) | u
                        edge_counts[kuy] = edge_counts.get(kuy, 0) + c
    _check_entries(edge_counts.values(), "edge")
    return edge_counts


def sort_neighborhoods(off, adj, rank, split):
    """Reorder each list in place: lower-ranked neighbors first (original
    relative order kept), the rest ascending by rank.  Fills ``split``."""
    n = len(off) - 1
    for v in range(n):
        s, e = off[v], off[v + 1]
        rv = rank[v]
        lower = [u for u in adj[s:e] if rank[u] < rv]
        upper = sorted((u for u in adj[s:e] if rank[u] >= rv), key=rank.__getitem__)
        split[v] = len(lower)
        adj[s : s + len(lower)] = lower
        adj[s + len(lower) : e] = upper


def enumerate_cycles(off, adj, rank, emit):
    """Emit every 4-cycle once as (v, u, y, x); returns the emitted count.

    v is the rank-maximum of the four, y the opposite corner, and x closed
    an earlier wedge through y than u did.
    """
    n = len(off) - 1
    buckets = [[] for _ in range(n)]
    total = 0
    for v in range(n):
        rv = rank[v]
        seg = adj[off[v] : off[v + 1]]
        for u in seg:
            if rank[u] < rv:
                for y in adj[off[u] : off[u + 1]]:
                    if rank[y] < rv:
                        bucket = buckets[y]
                        for x in bucket:
                            emit(v, u, y, x)
                        total += len(bucket)
                        bucket.append(u)
        for u in seg:
            if rank[u] < rv:
                for y in adj[off[u] : off[u + 1]]:
                    buckets[y].clear()
    return total
