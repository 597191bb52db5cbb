"""Timing harness comparing the flat-array kernels with the map variants.

Each measurement is the median of ``reps`` timed calls after ``warmups``
untimed ones.  Scratch buffers are touched before the clock starts so
one-time allocation never lands in a sample; everything the algorithm does
per call (including re-zeroing the per-half-edge accumulator and growing
its maps) stays inside.  Every record carries the 4-cycle total its runs
produced, so a benchmark doubles as a cross-variant consistency check.
"""

import time
from dataclasses import dataclass
from statistics import median

import numpy as np

from . import backend as _backend
from . import count as _count
from . import hashcount as _hash
from .graph import GraphCSR

QUANTITIES = ("global", "vertex", "edge")
VARIANTS = ("array", "map")


class BenchMismatchError(Exception):
    """Two variants disagreed on the 4-cycle total of the same graph."""


@dataclass
class BenchRecord:
    quantity: str        # global | vertex | edge
    variant: str         # array | map
    backend: str         # compiled | python
    graph: str
    n: int
    m: int
    repetitions: int
    warmups: int
    seconds: float       # median per-call wall time
    result: int          # 4-cycle total derived from the output

    TSV_HEADER = "quantity\tvariant\tbackend\tgraph\tn\tm\treps\twarmups\tseconds\tc4_count"

    def tsv_row(self) -> str:
        return "\t".join(
            str(x)
            for x in (self.quantity, self.variant, self.backend, self.graph, self.n,
                      self.m, self.repetitions, self.warmups, self.seconds, self.result)
        )

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "variant": self.variant,
            "backend": self.backend,
            "graph": self.graph,
            "n": self.n,
            "m": self.m,
            "repetitions": self.repetitions,
            "warmups": self.warmups,
            "seconds": self.seconds,
            "c4_count": self.result,
        }


def _timed(fn, reps: int, warmups: int):
    for _ in range(warmups):
        result = fn()
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter()
        result = fn()
        samples.append(time.perf_counter() - t0)
    return median(samples), result


def _quarter(total: int, what: str) -> int:
    if total % 4 != 0:
        raise BenchMismatchError(f"{what} summed to {total}, not a multiple of 4")
    return total // 4


def _make_call(g: GraphCSR, quantity: str, variant: str, bk: str):
    """(callable, result-extractor) pair for one measurement cell."""
    if variant == "array":
        scratch = _count.Scratch(g.n, "numpy" if bk == _backend.COMPILED else "list")
        if quantity == "global":
            scratch.counts()  # pre-touch so allocation stays out of the clock
            return (lambda: _count.count_global(g, scratch=scratch, backend=bk),
                    lambda r: r)
        if quantity == "vertex":
            scratch.pairs()
            return (lambda: _count.count_per_vertex(g, scratch=scratch, backend=bk),
                    lambda r: _quarter(int(r.sum(dtype=np.uint64)), "per-vertex output"))
        scratch.pairs()
        scratch.edge_slots(g.half_edges)
        return (lambda: _count.count_per_edge(g, scratch=scratch, backend=bk),
                lambda r: _quarter(int(r.sum(dtype=np.uint64)), "per-edge output"))
    if quantity == "global":
        return (lambda: _hash.count_global_hash(g, backend=bk), lambda r: r)
    if quantity == "vertex":
        return (lambda: _hash.count_per_vertex_hash(g, backend=bk),
                lambda r: _quarter(int(r.sum(dtype=np.uint64)), "per-vertex output"))
    # Per-edge map: time the kernel itself; turning the result map into a
    # Python dict keyed by tuples is presentation, not algorithm.
    kern = _backend.kernels(bk)
    if bk == _backend.COMPILED:
        call = lambda: kern.edge_count_hash(g.offsets, g.adjacency, g.order.rank, False)
        return call, lambda r: _quarter(int(r[1]), "per-edge map total")
    off, adj = g._list_views
    rank = g._rank_list
    call = lambda: kern.edge_count_hash(off, adj, rank)
    return call, lambda r: _quarter(sum(r.values()), "per-edge map total")


def run_benchmarks(g: GraphCSR, label: str, *,
                   quantities=QUANTITIES, variants=VARIANTS,
                   backends=None, reps: int = 3, warmups: int = 1):
    """Time the requested cells; returns (records, speedups).

    ``speedups`` maps (quantity, backend) -> map_seconds / array_seconds
    for every cell pair that ran both variants.  Raises BenchMismatchError
    if any two cells disagree on the graph's 4-cycle total.
    """
    if reps < 1:
        raise ValueError("reps must be at least 1")
    if backends is None:
        backends = (_backend.resolve(None),)
    records = []
    for bk in backends:
        bk = _backend.resolve(bk)
        for quantity in quantities:
            for variant in variants:
                fn, extract = _make_call(g, quantity, variant, bk)
                seconds, raw = _timed(fn, reps, warmups)
                records.append(BenchRecord(
                    quantity=quantity, variant=variant, backend=bk, graph=label,
                    n=g.n, m=g.edge_count, repetitions=reps, warmups=warmups,
                    seconds=seconds, result=extract(raw),
                ))
    totals = {r.result for r in records}
    if len(totals) > 1:
        raise BenchMismatchError(
            f"variants disagree on the 4-cycle total: {sorted(totals)}"
        )
    by_cell = {(r.quantity, r.backend, r.variant): r.seconds for r in records}
    speedups = {}
    for (quantity, bk, variant), seconds in by_cell.items():
        if variant == "map" and (quantity, bk, "array") in by_cell:
            array_seconds = by_cell[(quantity, bk, "array")]
            if array_seconds > 0:
                speedups[(quantity, bk)] = seconds / array_seconds
    return records, speedups
