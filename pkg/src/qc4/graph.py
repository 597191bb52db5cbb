"""Graph container, loaders, generators, and the degree order.

Graphs are simple and undirected, held in compressed sparse row form: an
int64 offset array of length n+1 and a uint32 adjacency array storing both
directions of every edge.  Vertex IDs are 0..n-1.  All arrays are read-only
once constructed; derived data (degrees, order ranks, list views for the
pure-Python backend) is cached on the instance.
"""

import io
import struct
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from . import backend as _backend
from .errors import (
    CacheFormatError,
    DuplicateEdgeError,
    ParseError,
    SelfLoopError,
    VertexIdOverflowError,
)

_MAX_ID = 2**32 - 1
CACHE_MAGIC = b"QC4CSR1\x00"


@dataclass(frozen=True, eq=False)
class GraphCSR:
    n: int                    # number of vertices, IDs 0..n-1
    offsets: np.ndarray       # int64, length n+1
    adjacency: np.ndarray     # uint32, length 2m, both directions

    def __post_init__(self):
        offsets = np.ascontiguousarray(self.offsets, dtype=np.int64)
        adjacency = np.ascontiguousarray(self.adjacency, dtype=np.uint32)
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "adjacency", adjacency)
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if offsets.shape != (self.n + 1,):
            raise ValueError("offsets must have length n+1")
        if offsets[0] != 0:
            raise ValueError("offsets must start at 0")
        if offsets[self.n] != adjacency.shape[0]:
            raise ValueError("offsets must end at the adjacency length")
        if adjacency.shape[0] % 2 != 0:
            raise ValueError("adjacency must hold both directions of each edge")
        if not bool(np.all(offsets[1:] >= offsets[:-1])):
            raise ValueError("offsets must be non-decreasing")
        if adjacency.shape[0] and int(adjacency.max()) >= self.n:
            raise ValueError("adjacency refers to a vertex ID >= n")
        offsets.setflags(write=False)
        adjacency.setflags(write=False)

    @classmethod
    def from_edges(cls, n: int, edges) -> "GraphCSR":
        """Build from an iterable or (E, 2) array of endpoint pairs.

        Trusted constructor for generators and tests: self-loops and
        duplicates are collapsed silently; use the loader when the input
        needs policy enforcement or reporting.
        """
        pairs = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                           dtype=np.int64).reshape(-1, 2)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
            raise ValueError("edge endpoint out of range")
        a = np.minimum(pairs[:, 0], pairs[:, 1]).astype(np.uint64)
        b = np.maximum(pairs[:, 0], pairs[:, 1]).astype(np.uint64)
        keep = a != b
        packed = np.unique((a[keep] << np.uint64(32)) | b[keep])
        lo = (packed >> np.uint64(32)).astype(np.uint32)
        hi = (packed & np.uint64(0xFFFFFFFF)).astype(np.uint32)
        offsets, adjacency = _csr_from_canonical(n, lo, hi)
        return cls(n, offsets, adjacency)

    @property
    def half_edges(self) -> int:
        return int(self.adjacency.shape[0])

    @property
    def edge_count(self) -> int:
        return self.half_edges // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        out = np.empty(self.n, dtype=np.uint32)
        np.subtract(self.offsets[1:], self.offsets[:-1], out=out, casting="unsafe")
        out.setflags(write=False)
        return out

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    @cached_property
    def order(self) -> "DegreeOrder":
        return DegreeOrder(self.degrees)

    def neighbors(self, v: int) -> np.ndarray:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range")
        return self.adjacency[self.offsets[v] : self.offsets[v + 1]]

    # Cached plain-list mirrors for the pure-Python backend.

    @cached_property
    def _list_views(self) -> tuple[list, list]:
        return self.offsets.tolist(), self.adjacency.tolist()

    @cached_property
    def _rank_list(self) -> list:
        return self.order.rank.tolist()

    def validate(self) -> None:
        """Full structural check: symmetry, no self-loops, no duplicates.

        O(m log m); meant for tests and untrusted inputs, not hot paths.
        """
        src, dst = _half_edge_endpoints(self)
        if np.any(src == dst):
            raise ValueError("self-loop present")
        fwd = (src.astype(np.uint64) << np.uint64(32)) | dst
        rev = (dst.astype(np.uint64) << np.uint64(32)) | src
        fwd_sorted = np.sort(fwd)
        if np.unique(fwd_sorted).shape != fwd_sorted.shape:
            raise ValueError("duplicate neighbor entry")
        if not np.array_equal(fwd_sorted, np.sort(rev)):
            raise ValueError("adjacency is not symmetric")


@dataclass(frozen=True, eq=False)
class SortedGraphCSR(GraphCSR):
    """CSR whose lists hold lower-ranked neighbors first, the remainder
    ascending by rank; ``split[v]`` is the length of the first part."""

    split: np.ndarray         # int64, length n

    def __post_init__(self):
        super().__post_init__()
        split = np.ascontiguousarray(self.split, dtype=np.int64)
        object.__setattr__(self, "split", split)
        if split.shape != (self.n,):
            raise ValueError("split must have length n")
        split.setflags(write=False)

    @cached_property
    def _split_list(self) -> list:
        return self.split.tolist()


@dataclass(frozen=True, eq=False)
class DegreeOrder:
    """Total order: ascending degree, ties broken by ascending vertex ID."""

    degrees: np.ndarray

    @property
    def n(self) -> int:
        return int(self.degrees.shape[0])

    @cached_property
    def rank(self) -> np.ndarray:
        """Position of each vertex in the order, 0 = smallest."""
        order = np.argsort(self.degrees, kind="stable")  # stable = ID tie-break
        rank = np.empty(self.n, dtype=np.uint32)
        rank[order] = np.arange(self.n, dtype=np.uint32)
        rank.setflags(write=False)
        return rank

    def precedes(self, u: int, v: int) -> bool:
        """True iff u comes strictly before v in the order."""
        n = self.n
        if not (0 <= u < n and 0 <= v < n):
            raise IndexError("vertex out of range")
        du, dv = int(self.degrees[u]), int(self.degrees[v])
        return du < dv or (du == dv and u < v)


@dataclass
class LoadReport:
    vertices_seen: int        # distinct IDs appearing in the input
    edges_kept: int
    duplicates_dropped: int
    self_loops_dropped: int
    remapped: bool


def _csr_from_canonical(n: int, lo: np.ndarray, hi: np.ndarray):
    """Offsets and adjacency from unique canonical (lo < hi) edge arrays."""
    deg = np.bincount(lo, minlength=n) + np.bincount(hi, minlength=n)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=offsets[1:])
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))  # neighbor lists come out ascending
    return offsets, dst[order].astype(np.uint32)


def _half_edge_endpoints(g: GraphCSR):
    """(src, dst) uint32 arrays, one entry per half-edge in CSR scan order."""
    src = np.repeat(np.arange(g.n, dtype=np.uint32), g.degrees)
    return src, g.adjacency


def _iter_lines(source):
    if isinstance(source, (str, Path)):
        with open(source, "rt", encoding="utf-8") as fh:
            yield from fh
        return
    for line in source:
        yield line.decode("utf-8") if isinstance(line, bytes) else line


def load_edge_list(source, *, strict: bool = False, remap_ids: bool = False):
    """Parse a whitespace-separated edge list into a graph.

    ``source`` is a path or an iterable of lines.  Blank lines and lines
    starting with '#' are skipped.  Self-loops and duplicate edges are
    dropped (counted in the report) unless ``strict``, which rejects them.
    Without ``remap_ids``, IDs must fit 32 bits and n is max ID + 1; with
    it, IDs may be arbitrary non-negative integers and are densified in
    first-appearance order.

    Returns (GraphCSR, LoadReport).
    """
    us: list[int] = []
    vs: list[int] = []
    mapping: dict[int, int] = {}
    seen_ids: set[int] = set()
    seen_edges: set[tuple[int, int]] = set()
    max_id = -1
    for line_no, line in enumerate(_iter_lines(source), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise ParseError(line_no, f"expected two vertex IDs, got {len(tokens)} tokens")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(line_no, f"not an integer ID: {stripped!r}") from None
        if u < 0 or v < 0:
            raise ParseError(line_no, "negative vertex ID")
        if remap_ids:
            u = mapping.setdefault(u, len(mapping))
            v = mapping.setdefault(v, len(mapping))
            if len(mapping) > _MAX_ID + 1:
                raise VertexIdOverflowError(f"line {line_no}: more than 2^32 distinct vertices")
        else:
            if u > _MAX_ID or v > _MAX_ID:
                raise VertexIdOverflowError(
                    f"line {line_no}: vertex ID exceeds 32 bits; use ID remapping"
                )
            seen_ids.add(u)
            seen_ids.add(v)
            if u > max_id:
                max_id = u
            if v > max_id:
                max_id = v
        if strict:
            if u == v:
                raise SelfLoopError(line_no, u)
            key = (u, v) if u < v else (v, u)
            if key in seen_edges:
                raise DuplicateEdgeError(line_no, *key)
            seen_edges.add(key)
        us.append(u)
        vs.append(v)

    n = len(mapping) if remap_ids else max_id + 1
    ua = np.asarray(us, dtype=np.uint64)
    va = np.asarray(vs, dtype=np.uint64)
    not_loop = ua != va
    self_loops = int(ua.shape[0] - not_loop.sum())
    lo = np.minimum(ua[not_loop], va[not_loop])
    hi = np.maximum(ua[not_loop], va[not_loop])
    packed = np.unique((lo << np.uint64(32)) | hi)
    duplicates = int(lo.shape[0] - packed.shape[0])
    offsets, adjacency = _csr_from_canonical(
        n, (packed >> np.uint64(32)).astype(np.uint32),
        (packed & np.uint64(0xFFFFFFFF)).astype(np.uint32),
    )
    report = LoadReport(
        vertices_seen=len(mapping) if remap_ids else len(seen_ids),
        edges_kept=int(packed.shape[0]),
        duplicates_dropped=duplicates,
        self_loops_dropped=self_loops,
        remapped=remap_ids,
    )
    return GraphCSR(n, offsets, adjacency), report


def dump_edge_list(g: GraphCSR, stream) -> None:
    """Write one 'u v' line per edge, lower endpoint first, in canonical
    scan order.  Loading the result reproduces the graph exactly when its
    neighbor lists are ascending (loader and generator graphs are)."""
    from .count import edge_endpoints  # local import to avoid a cycle

    src, dst = edge_endpoints(g)
    for u, v in zip(src.tolist(), dst.tolist()):
        stream.write(f"{u} {v}\n")


def write_csr_cache(g: GraphCSR, path) -> None:
    """Binary CSR cache: magic, little-endian u64 n and m, then the offset
    and adjacency arrays widened to u64."""
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<QQ", g.n, g.edge_count))
        g.offsets.astype("<u8").tofile(fh)
        g.adjacency.astype("<u8").tofile(fh)


def read_csr_cache(path) -> GraphCSR:
    """Load a graph written by ``write_csr_cache``."""
    with open(path, "rb") as fh:
        magic = fh.read(len(CACHE_MAGIC))
        if magic != CACHE_MAGIC:
            raise CacheFormatError("not a CSR cache file (bad magic)")
        header = fh.read(16)
        if len(header) != 16:
            raise CacheFormatError("truncated header")
        n, m = struct.unpack("<QQ", header)
        offsets = np.fromfile(fh, dtype="<u8", count=n + 1)
        adjacency = np.fromfile(fh, dtype="<u8", count=2 * m)
        trailing = fh.read(1)
    if offsets.shape[0] != n + 1 or adjacency.shape[0] != 2 * m:
        raise CacheFormatError("truncated arrays")
    if trailing:
        raise CacheFormatError("trailing bytes after arrays")
    if adjacency.shape[0] and int(adjacency.max()) > _MAX_ID:
        raise CacheFormatError("adjacency entry exceeds 32 bits")
    try:
        return GraphCSR(int(n), offsets.astype(np.int64), adjacency.astype(np.uint32))
    except ValueError as exc:
        raise CacheFormatError(f"inconsistent CSR arrays: {exc}") from None


def load_path(path, *, strict: bool = False, remap_ids: bool = False):
    """Load either format by sniffing the magic bytes.

    Returns (GraphCSR, LoadReport or None); cache files carry no report.
    """
    with open(path, "rb") as fh:
        magic = fh.read(len(CACHE_MAGIC))
    if magic == CACHE_MAGIC:
        return read_csr_cache(path), None
    return load_edge_list(path, strict=strict, remap_ids=remap_ids)


def gen_grid(rows: int, cols: int) -> GraphCSR:
    """Rectangular grid graph, vertices numbered row-major.

    Neighbor lists come out ascending (up, left, right, down), matching the
    loader's ordering.  Built directly in CSR form with column-strided
    writes, so peak memory stays within a small constant of the output.
    """
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be at least 1x1")
    n = rows * cols
    if n > _MAX_ID + 1:
        raise OverflowError("grid has more than 2^32 vertices")

    deg = np.full(n, 4, dtype=np.uint8)
    deg[:cols] -= 1          # top row
    deg[n - cols :] -= 1     # bottom row
    deg[::cols] -= 1         # left column
    deg[cols - 1 :: cols] -= 1  # right column
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, dtype=np.int64, out=offsets[1:])
    del deg
    adjacency = np.empty(int(offsets[n]), dtype=np.uint32)

    offs = offsets[:n].reshape(rows, cols)
    vids = np.arange(n, dtype=np.uint32).reshape(rows, cols)
    has_up = np.ones((rows, 1), dtype=np.int64)
    has_up[0, 0] = 0
    # Slot of each neighbor = offset + number of earlier directions present.
    adjacency[offs[1:, :]] = vids[:-1, :]                       # up
    adjacency[offs[:, 1:] + has_up] = vids[:, :-1]              # left
    before_right = np.zeros((1, cols - 1), dtype=np.int64)
    before_right[0, 1:] = 1
    adjacency[offs[:, :-1] + has_up + before_right] = vids[:, 1:]  # right
    before_down = np.full((1, cols), 2, dtype=np.int64)
    before_down[0, 0] -= 1
    before_down[0, cols - 1] -= 1
    adjacency[offs[:-1, :] + has_up[:-1] + before_down] = vids[1:, :]  # down
    return GraphCSR(n, offsets, adjacency)


def avg_degeneracy(g: GraphCSR, *, chunk_vertices: int = 1 << 22) -> float:
    """Mean over edges of min(deg(u), deg(v)).

    The exact integer sum is accumulated in vertex chunks so no
    edge-length temporary is ever materialized.
    """
    m = g.edge_count
    if m == 0:
        raise ValueError("average degeneracy is undefined for an edgeless graph")
    deg = g.degrees
    total = 0
    for v0 in range(0, g.n, chunk_vertices):
        v1 = min(v0 + chunk_vertices, g.n)
        dst = g.adjacency[g.offsets[v0] : g.offsets[v1]]
        src = np.repeat(np.arange(v0, v1, dtype=np.uint32), deg[v0:v1])
        fwd = src < dst  # each edge counted at its lower-ID endpoint
        total += int(np.minimum(deg[src[fwd]], deg[dst[fwd]]).sum(dtype=np.int64))
    return total / m


def preprocess_sort(g: GraphCSR, *, backend: str | None = None) -> SortedGraphCSR:
    """Reorder neighbor lists for the sentinel-walk counter.

    Lower-ranked neighbors keep their relative order at the front of each
    list; the rest follow ascending by rank.  Offsets are shared with the
    input; only the adjacency is copied.
    """
    bk = _backend.resolve(backend)
    if bk == _backend.COMPILED:
        adjacency = g.adjacency.copy()
        split = np.zeros(g.n, dtype=np.int64)
        _backend.kernels(bk).sort_neighborhoods(g.offsets, adjacency, g.order.rank, split)
    else:
        off, adj = g._list_views
        adj = list(adj)
        split_l = [0] * g.n
        _backend.kernels(bk).sort_neighborhoods(off, adj, g._rank_list, split_l)
        adjacency = np.asarray(adj, dtype=np.uint32)
        split = np.asarray(split_l, dtype=np.int64)
    return SortedGraphCSR(g.n, g.offsets, adjacency, split)
