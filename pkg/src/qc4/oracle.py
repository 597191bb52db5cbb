"""Independent brute-force references for testing the fast counters.

Both oracles work from a dense boolean adjacency matrix and share no code
or traversal strategy with the production kernels.  They are quadratic to
quartic in n and refuse graphs above a hard size cap rather than silently
taking forever.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import OracleCapError
from .graph import GraphCSR

GLOBAL_CAP = 128
LOCAL_CAP = 64


@dataclass(frozen=True, eq=False)
class DenseAdjacency:
    """n x n boolean matrix mirror of a graph."""

    matrix: np.ndarray

    @classmethod
    def from_graph(cls, g: GraphCSR, cap: int) -> "DenseAdjacency":
        if g.n > cap:
            raise OracleCapError(f"n={g.n} exceeds the oracle cap of {cap} vertices")
        matrix = np.zeros((g.n, g.n), dtype=bool)
        src = np.repeat(np.arange(g.n, dtype=np.uint32), g.degrees)
        matrix[src, g.adjacency] = True
        matrix.setflags(write=False)
        return cls(matrix)

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])

    @cached_property
    def neighbor_lists(self) -> list:
        return [np.flatnonzero(row) for row in self.matrix]


@dataclass
class OracleCounts:
    """Exact reference counts from the closed-walk oracle."""

    total: int
    per_vertex: np.ndarray        # uint64, length n
    per_edge: dict                # {(lower, higher): count}, zero edges may be absent


def oracle_global_codegree(g: GraphCSR, *, cap: int = GLOBAL_CAP) -> int:
    """Total 4-cycles by summing codegree-choose-2 over vertex pairs.

    Every 4-cycle has two diagonal pairs, each contributing one chosen
    pair of common neighbors, so the sum is exactly twice the count.
    """
    dense = DenseAdjacency.from_graph(g, cap)
    a = dense.matrix
    paired = 0
    for v in range(dense.n):
        for w in range(v + 1, dense.n):
            codeg = int(np.count_nonzero(a[v] & a[w]))
            paired += codeg * (codeg - 1) // 2
    assert paired % 2 == 0, "codegree pair total must be even"
    return paired // 2


def oracle_local_quadruples(g: GraphCSR, *, cap: int = LOCAL_CAP) -> OracleCounts:
    """All three quantities by tallying closed 4-walks on distinct vertices.

    Walks (a, b, c, d) around each cycle number exactly 8 (4 rotations x 2
    directions); each vertex anchors 2 of them and each edge starts 2 of
    them, giving the divisors below.
    """
    dense = DenseAdjacency.from_graph(g, cap)
    a = dense.matrix
    walks = 0
    walks_from_vertex = np.zeros(dense.n, dtype=np.int64)
    walks_from_edge: dict = {}
    for start in range(dense.n):
        row_start = a[start]
        for b in dense.neighbor_lists[start]:
            b = int(b)
            edge = (start, b) if start < b else (b, start)
            for c in dense.neighbor_lists[b]:
                c = int(c)
                if c == start:
                    continue
                # d must close the walk: adjacent to both c and start,
                # not b; self-hits are impossible (no self-loops).
                closures = int(np.count_nonzero(a[c] & row_start)) - 1
                if closures:
                    walks += closures
                    walks_from_vertex[start] += closures
                    walks_from_edge[edge] = walks_from_edge.get(edge, 0) + closures
    assert walks % 8 == 0, "closed 4-walk total must split into rotations"
    assert all(w % 2 == 0 for w in walks_from_vertex), "vertex walk totals must pair up"
    assert all(w % 2 == 0 for w in walks_from_edge.values()), "edge walk totals must pair up"
    per_vertex = (walks_from_vertex // 2).astype(np.uint64)
    per_edge = {e: w // 2 for e, w in walks_from_edge.items()}
    return OracleCounts(total=walks // 8, per_vertex=per_vertex, per_edge=per_edge)
