"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 input/parse error, 3 verification
failure, 4 resource refusal (oracle cap or counter overflow).
"""

import argparse
import json
import os
import re
import sys

from . import backend as _backend
from .bench import BenchMismatchError, BenchRecord, run_benchmarks
from .count import (
    count_all,
    count_global,
    count_global_sorted,
    count_per_edge,
    count_per_vertex,
    edge_endpoints,
    enumerate_cycles,
    collect_cycles,
    validate_cycle_tuples,
)
from .errors import CounterOverflowError, EdgeListError, CacheFormatError, OracleCapError
from .graph import avg_degeneracy, gen_grid, load_path, preprocess_sort, write_csr_cache
from .hashcount import count_global_hash, count_per_edge_hash, count_per_vertex_hash
from .oracle import LOCAL_CAP, oracle_global_codegree, oracle_local_quadruples

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_VERIFY = 3
EXIT_REFUSED = 4


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; remap to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _grid_spec(text: str):
    match = re.fullmatch(r"(\d+)x(\d+)", text)
    if not match:
        raise argparse.ArgumentTypeError(f"expected ROWSxCOLS, got {text!r}")
    rows, cols = int(match.group(1)), int(match.group(2))
    if rows < 1 or cols < 1:
        raise argparse.ArgumentTypeError("grid dimensions must be at least 1")
    return rows, cols


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _add_input_args(p):
    p.add_argument("path", nargs="?", help="edge-list file or CSR cache")
    p.add_argument("--grid", type=_grid_spec, metavar="RxC",
                   help="generate a rows-x-cols grid instead of reading a file")
    p.add_argument("--strict", action="store_true",
                   help="reject duplicate edges and self-loops instead of dropping them")
    p.add_argument("--remap", action="store_true",
                   help="densify arbitrary vertex IDs in first-appearance order")


def _add_common_args(p, *, backend_all: bool = False):
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    choices = (_backend.COMPILED, _backend.PYTHON) + (("all",) if backend_all else ())
    p.add_argument("--backend", choices=choices,
                   help="kernel backend (default: best available)")


def _load_input(parser, args):
    if (args.path is None) == (args.grid is None):
        parser.error("exactly one of PATH or --grid is required")
    if args.grid is not None:
        rows, cols = args.grid
        return gen_grid(rows, cols), f"grid-{rows}x{cols}"
    g, _report = load_path(args.path, strict=args.strict, remap_ids=args.remap)
    return g, os.path.basename(args.path)


def _emit_kv(args, pairs):
    if args.format == "json":
        json.dump(dict(pairs), sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for key, value in pairs:
            sys.stdout.write(f"{key}\t{value}\n")


def cmd_count(parser, args) -> int:
    if args.sorted and args.variant == "map":
        parser.error("--sorted applies to the array variant only")
    g, label = _load_input(parser, args)
    if args.save_cache:
        write_csr_cache(g, args.save_cache)
    if args.sorted:
        total = count_global_sorted(preprocess_sort(g, backend=args.backend),
                                    backend=args.backend)
    elif args.variant == "map":
        total = count_global_hash(g, backend=args.backend)
    else:
        total = count_global(g, backend=args.backend)
    avg = avg_degeneracy(g) if g.edge_count else None
    if avg is None and args.format == "tsv":
        avg = "undefined"
    _emit_kv(args, [
        ("graph", label),
        ("n", g.n),
        ("m", g.edge_count),
        ("half_edges", g.half_edges),
        ("max_degree", g.max_degree),
        ("avg_degeneracy", avg),
        ("c4_count", total),
    ])
    return EXIT_OK


def cmd_vertex(parser, args) -> int:
    g, _label = _load_input(parser, args)
    if args.variant == "map":
        per_vertex = count_per_vertex_hash(g, backend=args.backend)
    else:
        per_vertex = count_per_vertex(g, backend=args.backend)
    total = count_global(g, backend=args.backend)
    ok = int(per_vertex.sum(dtype="uint64")) == 4 * total
    if args.format == "json":
        json.dump({"per_vertex": per_vertex.tolist(), "c4_count": total,
                   "identity_ok": ok}, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for v, c in enumerate(per_vertex.tolist()):
            sys.stdout.write(f"{v}\t{c}\n")
        sys.stdout.write(f"# vertex sum = 4 x {total}: {'ok' if ok else 'MISMATCH'}\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_edge(parser, args) -> int:
    g, _label = _load_input(parser, args)
    lo, hi = edge_endpoints(g)
    if args.variant == "map":
        counts_map = count_per_edge_hash(g, backend=args.backend)
        counts = [counts_map[(a, b)] for a, b in zip(lo.tolist(), hi.tolist())]
    else:
        counts = count_per_edge(g, backend=args.backend).tolist()
    total = count_global(g, backend=args.backend)
    ok = sum(counts) == 4 * total
    if args.format == "json":
        rows = [[a, b, c] for (a, b, c) in zip(lo.tolist(), hi.tolist(), counts)]
        json.dump({"edges": rows, "c4_count": total, "identity_ok": ok},
                  sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for a, b, c in zip(lo.tolist(), hi.tolist(), counts):
            sys.stdout.write(f"{a}\t{b}\t{c}\n")
        sys.stdout.write(f"# edge sum = 4 x {total}: {'ok' if ok else 'MISMATCH'}\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_enumerate(parser, args) -> int:
    g, _label = _load_input(parser, args)
    if args.format == "json":
        cycles = collect_cycles(g)
        json.dump({"cycles": [list(c) for c in cycles], "total": len(cycles)},
                  sys.stdout, indent=2)
        sys.stdout.write("\n")
        emitted = len(cycles)
    else:
        out = sys.stdout

        def sink(c):
            out.write(f"{c.v}\t{c.u}\t{c.y}\t{c.x}\n")

        emitted = enumerate_cycles(g, sink)
        out.write(f"total\t{emitted}\n")
    expected = count_global(g, backend=args.backend)
    return EXIT_OK if emitted == expected else EXIT_VERIFY


def cmd_verify(parser, args) -> int:
    g, _label = _load_input(parser, args)
    if g.n > LOCAL_CAP:
        sys.stderr.write(
            f"qc4: refusing to verify n={g.n} > {LOCAL_CAP}; "
            "the brute-force oracle is quartic\n"
        )
        return EXIT_REFUSED
    reference = oracle_local_quadruples(g)
    checks = [("oracle-agreement",
               oracle_global_codegree(g) == reference.total)]
    ref_vertex = reference.per_vertex
    lo, hi = edge_endpoints(g)
    ref_edge = [reference.per_edge.get((a, b), 0)
                for a, b in zip(lo.tolist(), hi.tolist())]
    for bk in _backend.available_backends():
        counts = count_all(g, backend=bk)
        sorted_total = count_global_sorted(preprocess_sort(g, backend=bk), backend=bk)
        edge_map = count_per_edge_hash(g, backend=bk)
        checks += [
            (f"global-array-{bk}", counts.total == reference.total),
            (f"global-sorted-{bk}", sorted_total == reference.total),
            (f"global-map-{bk}", count_global_hash(g, backend=bk) == reference.total),
            (f"vertex-array-{bk}", counts.per_vertex.tolist() == ref_vertex.tolist()),
            (f"vertex-map-{bk}",
             count_per_vertex_hash(g, backend=bk).tolist() == ref_vertex.tolist()),
            (f"edge-array-{bk}", counts.per_edge.tolist() == ref_edge),
            (f"edge-map-{bk}",
             [edge_map[(a, b)] for a, b in zip(lo.tolist(), hi.tolist())] == ref_edge),
            (f"identity-vertex-sum-{bk}", counts.vertex_sum_matches()),
            (f"identity-edge-sum-{bk}", counts.edge_sum_matches()),
            (f"identity-halving-{bk}", counts.halving_matches(g)),
        ]
    cycles = collect_cycles(g)
    try:
        validate_cycle_tuples(g, cycles)
        checks.append(("enumeration-valid", True))
    except ValueError:
        checks.append(("enumeration-valid", False))
    checks.append(("enumeration-count", len(cycles) == reference.total))
    if args.format == "json":
        json.dump({name: bool(ok) for name, ok in checks}, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for name, ok in checks:
            sys.stdout.write(f"{name}\t{'ok' if ok else 'FAIL'}\n")
    return EXIT_OK if all(ok for _name, ok in checks) else EXIT_VERIFY


def cmd_bench(parser, args) -> int:
    g, label = _load_input(parser, args)
    quantities = ("global", "vertex", "edge") if args.quantity == "all" else (args.quantity,)
    variants = ("array", "map") if args.variant == "all" else (args.variant,)
    backends = _backend.available_backends() if args.backend == "all" else (args.backend,)
    records, speedups = run_benchmarks(
        g, label, quantities=quantities, variants=variants,
        backends=backends, reps=args.reps, warmups=args.warmups,
    )
    if args.format == "json":
        json.dump({
            "records": [r.to_dict() for r in records],
            "speedup_map_over_array": {
                f"{quantity}/{bk}": ratio for (quantity, bk), ratio in speedups.items()
            },
        }, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(BenchRecord.TSV_HEADER + "\n")
        for r in records:
            sys.stdout.write(r.tsv_row() + "\n")
        for (quantity, bk), ratio in speedups.items():
            sys.stdout.write(f"# speedup\t{quantity}\t{bk}\tmap/array\t{ratio}\n")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="qc4", description="4-cycle counting in sparse graphs")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("count", help="total 4-cycle count plus graph summary")
    _add_input_args(p)
    _add_common_args(p)
    p.add_argument("--variant", choices=("array", "map"), default="array")
    p.add_argument("--sorted", action="store_true",
                   help="use the sentinel-walk variant on pre-sorted lists")
    p.add_argument("--save-cache", metavar="PATH",
                   help="also write the graph as a binary CSR cache")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("vertex", help="per-vertex 4-cycle counts")
    _add_input_args(p)
    _add_common_args(p)
    p.add_argument("--variant", choices=("array", "map"), default="array")
    p.set_defaults(func=cmd_vertex)

    p = sub.add_parser("edge", help="per-edge 4-cycle counts")
    _add_input_args(p)
    _add_common_args(p)
    p.add_argument("--variant", choices=("array", "map"), default="array")
    p.set_defaults(func=cmd_edge)

    p = sub.add_parser("enumerate", help="list every 4-cycle once")
    _add_input_args(p)
    _add_common_args(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="cross-check all variants against the oracle")
    _add_input_args(p)
    _add_common_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time array vs map kernels")
    _add_input_args(p)
    _add_common_args(p, backend_all=True)
    p.add_argument("--quantity", choices=("global", "vertex", "edge", "all"),
                   default="global")
    p.add_argument("--variant", choices=("array", "map", "all"), default="all")
    p.add_argument("--reps", type=_positive_int, default=3,
                   help="timed repetitions per cell (median is reported)")
    p.add_argument("--warmups", type=_non_negative_int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.error("a command is required")
    try:
        return args.func(parser, args)
    except BrokenPipeError:
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_INPUT
    except (EdgeListError, CacheFormatError) as exc:
        sys.stderr.write(f"qc4: {exc}\n")
        return EXIT_INPUT
    except OSError as exc:
        sys.stderr.write(f"qc4: {exc}\n")
        return EXIT_INPUT
    except (CounterOverflowError, OracleCapError, OverflowError) as exc:
        sys.stderr.write(f"qc4: {exc}\n")
        return EXIT_REFUSED
    except BenchMismatchError as exc:
        sys.stderr.write(f"qc4: {exc}\n")
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
