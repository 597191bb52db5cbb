"""Command-line interface: exit codes, formats, and determinism."""

import json

import pytest

import qc4.cli as cli
from qc4 import read_csr_cache


def run(capsys, *argv):
    try:
        code = cli.main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def square_file(tmp_path):
    path = tmp_path / "square.txt"
    path.write_text("0 1\n1 2\n2 3\n3 0\n")
    return str(path)


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4.txt"
    path.write_text("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    return str(path)


class TestCount:
    def test_tsv(self, capsys, square_file):
        code, out, err = run(capsys, "count", square_file)
        assert code == 0
        rows = dict(line.split("\t") for line in out.splitlines())
        assert rows["n"] == "4"
        assert rows["m"] == "4"
        assert rows["half_edges"] == "8"
        assert rows["max_degree"] == "2"
        assert rows["avg_degeneracy"] == "2.0"
        assert rows["c4_count"] == "1"

    def test_json(self, capsys, square_file):
        code, out, _ = run(capsys, "count", square_file, "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["c4_count"] == 1
        assert data["avg_degeneracy"] == 2.0

    def test_grid_input(self, capsys):
        code, out, _ = run(capsys, "count", "--grid", "3x3")
        assert code == 0
        assert "c4_count\t4" in out

    def test_variants_agree(self, capsys, k4_file):
        outputs = set()
        for extra in ((), ("--variant", "map"), ("--sorted",)):
            code, out, _ = run(capsys, "count", k4_file, *extra)
            assert code == 0
            outputs.add(next(l for l in out.splitlines() if l.startswith("c4_count")))
        assert outputs == {"c4_count\t3"}

    def test_edgeless_degeneracy_undefined(self, capsys, tmp_path):
        empty = tmp_path / "empty.txt"
        empty.write_text("# no edges\n")
        code, out, _ = run(capsys, "count", str(empty))
        assert code == 0
        assert "avg_degeneracy\tundefined" in out
        code, out, _ = run(capsys, "count", str(empty), "--format", "json")
        assert code == 0
        assert json.loads(out)["avg_degeneracy"] is None

    def test_save_cache(self, capsys, square_file, tmp_path):
        cache = tmp_path / "square.qc4"
        code, _, _ = run(capsys, "count", square_file, "--save-cache", str(cache))
        assert code == 0
        g = read_csr_cache(cache)
        assert g.n == 4 and g.edge_count == 4
        code, out, _ = run(capsys, "count", str(cache))
        assert code == 0
        assert "c4_count\t1" in out

    def test_reruns_byte_identical(self, capsys, k4_file):
        first = run(capsys, "count", k4_file)
        second = run(capsys, "count", k4_file)
        assert first == second


class TestVertexAndEdge:
    def test_vertex_tsv(self, capsys):
        code, out, _ = run(capsys, "vertex", "--grid", "3x3")
        assert code == 0
        lines = out.splitlines()
        assert lines[:3] == ["0\t1", "1\t2", "2\t1"]
        assert lines[-1] == "# vertex sum = 4 x 4: ok"

    def test_vertex_map_variant(self, capsys):
        code, out, _ = run(capsys, "vertex", "--grid", "3x3", "--variant", "map")
        assert code == 0
        assert out.splitlines()[4] == "4\t4"

    def test_edge_tsv(self, capsys):
        code, out, _ = run(capsys, "edge", "--grid", "2x2")
        assert code == 0
        assert out.splitlines() == [
            "0\t1\t1", "0\t2\t1", "1\t3\t1", "2\t3\t1",
            "# edge sum = 4 x 1: ok",
        ]

    def test_edge_map_matches_array(self, capsys, k4_file):
        _, array_out, _ = run(capsys, "edge", k4_file)
        _, map_out, _ = run(capsys, "edge", k4_file, "--variant", "map")
        assert array_out == map_out

    def test_vertex_json(self, capsys):
        code, out, _ = run(capsys, "vertex", "--grid", "3x3", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["per_vertex"] == [1, 2, 1, 2, 4, 2, 1, 2, 1]
        assert data["identity_ok"] is True

    def test_identity_failure_exits_3(self, capsys, monkeypatch, square_file):
        monkeypatch.setattr(cli, "count_global", lambda g, backend=None: 999)
        code, out, _ = run(capsys, "vertex", square_file)
        assert code == 3
        assert "MISMATCH" in out


class TestEnumerate:
    def test_square(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--grid", "2x2")
        assert code == 0
        assert out == "3\t2\t0\t1\ntotal\t1\n"

    def test_k4_frozen(self, capsys, k4_file):
        code, out, _ = run(capsys, "enumerate", k4_file)
        assert code == 0
        assert out.splitlines() == [
            "3\t1\t2\t0", "3\t2\t0\t1", "3\t2\t1\t0", "total\t3",
        ]

    def test_json(self, capsys, k4_file):
        code, out, _ = run(capsys, "enumerate", k4_file, "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["total"] == 3
        assert data["cycles"][0] == [3, 1, 2, 0]


class TestVerify:
    def test_small_graph_all_ok(self, capsys, square_file):
        code, out, _ = run(capsys, "verify", square_file)
        assert code == 0
        lines = out.splitlines()
        assert all(line.endswith("\tok") for line in lines)
        assert any(line.startswith("oracle-agreement") for line in lines)
        assert any("enumeration-count" in line for line in lines)

    def test_json(self, capsys):
        code, out, _ = run(capsys, "verify", "--grid", "4x4", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert all(data.values())

    def test_refuses_large_input(self, capsys):
        code, out, err = run(capsys, "verify", "--grid", "9x8")
        assert code == 4
        assert out == ""
        assert "refusing" in err


class TestBench:
    def test_tsv(self, capsys):
        code, out, _ = run(capsys, "bench", "--grid", "6x6",
                           "--reps", "1", "--warmups", "0")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("quantity\tvariant\tbackend\t")
        assert any(line.startswith("# speedup\tglobal\t") for line in lines)

    def test_json(self, capsys):
        code, out, _ = run(capsys, "bench", "--grid", "5x5", "--quantity", "edge",
                           "--variant", "all", "--reps", "1", "--warmups", "0",
                           "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["records"]
        assert all(r["quantity"] == "edge" for r in data["records"])
        assert data["speedup_map_over_array"]

    def test_reps_must_be_positive(self, capsys):
        code, _, err = run(capsys, "bench", "--grid", "4x4", "--reps", "0")
        assert code == 1
        assert "error" in err


class TestUsageErrors:
    def test_no_command(self, capsys):
        code, _, err = run(capsys)
        assert code == 1
        assert "command is required" in err

    def test_no_input_source(self, capsys):
        code, _, err = run(capsys, "count")
        assert code == 1

    def test_both_input_sources(self, capsys, square_file):
        code, _, err = run(capsys, "count", square_file, "--grid", "2x2")
        assert code == 1

    def test_bad_grid_spec(self, capsys):
        code, _, err = run(capsys, "count", "--grid", "3by3")
        assert code == 1
        code, _, err = run(capsys, "count", "--grid", "0x4")
        assert code == 1

    def test_sorted_map_conflict(self, capsys, square_file):
        code, _, err = run(capsys, "count", square_file,
                           "--variant", "map", "--sorted")
        assert code == 1
        assert "array variant" in err

    def test_unknown_backend(self, capsys):
        code, _, err = run(capsys, "count", "--grid", "2x2", "--backend", "turbo")
        assert code == 1


class TestInputErrors:
    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "count", "/nonexistent/graph.txt")
        assert code == 2
        assert "qc4:" in err

    def test_parse_error_reports_line(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("0 1\nnot numbers\n")
        code, _, err = run(capsys, "count", str(bad))
        assert code == 2
        assert "line 2" in err

    def test_strict_duplicate(self, capsys, tmp_path):
        dup = tmp_path / "dup.txt"
        dup.write_text("0 1\n1 0\n")
        code, _, err = run(capsys, "count", str(dup), "--strict")
        assert code == 2
        assert "line 2" in err
        code, _, _ = run(capsys, "count", str(dup))
        assert code == 0  # permissive mode just drops it

    def test_corrupt_cache(self, capsys, tmp_path):
        bad = tmp_path / "bad.qc4"
        bad.write_bytes(b"QC4CSR1\x00" + b"\x01" * 4)
        code, _, err = run(capsys, "count", str(bad))
        assert code == 2
