"""End-to-end command line checks driven through main(argv)."""

from __future__ import annotations

import csv
import io
import json
import math

import pytest

from sedwalk.cli import main


def run(capsys, *argv: str) -> tuple[int, str, str]:
    rc = main(list(argv))
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


def test_classify_table_tight_pair(capsys):
    rc, out, err = run(
        capsys, "classify", "--graph", "KM(2,2,2)", "--matrix", "L", "--vertex", "0"
    )
    assert rc == 0 and err == ""
    lines = out.splitlines()
    assert lines[0].split() == [
        "vertex", "verdict", "constant", "tight", "sharp", "time",
        "partner", "certified", "trail",
    ]
    row = lines[1].split()
    assert row[:7] == [
        "0", "sedentary", "0.333333333333", "yes", "no", "1.57079632679", "(pi/2)",
    ]
    assert row[7:9] == ["-", "yes"]
    trail = row[9]
    assert "parity:odd-relation" in trail
    assert "equality-time:t1=1.57079632679" in trail


def test_classify_table_pst_pair(capsys):
    rc, out, _ = run(
        capsys, "classify", "--graph", "join(O(2),K(6))", "--matrix", "L", "--vertex", "0"
    )
    assert rc == 0
    row = out.splitlines()[1].split()
    assert row[1] == "pst"
    assert row[5:7] == ["1.57079632679", "(pi/2)"]
    assert row[7] == "1"  # the other vertex of the empty cell
    assert "pst:time=1.57079632679" in row[9]


def test_classify_json_schema(capsys):
    rc, out, _ = run(
        capsys, "classify", "--graph", "KM(2,2,2)", "--matrix", "L",
        "--vertex", "0", "--format", "json",
    )
    assert rc == 0
    payload = json.loads(out)
    assert isinstance(payload, list) and len(payload) == 1
    rec = payload[0]
    assert rec["schema"] == 1
    assert rec["vertex"] == 0
    assert rec["matrix_kind"] == "L"
    assert rec["verdict"] == "sedentary"
    assert rec["constant"] == pytest.approx(1 / 3, abs=1e-9)
    assert rec["tight"] is True and rec["sharp"] is False
    assert rec["tightness_time"] == pytest.approx(math.pi / 2, abs=1e-9)
    assert rec["partner"] is None and rec["pst_time"] is None
    assert rec["certified"] is True
    assert isinstance(rec["lemma_trail"], list) and rec["lemma_trail"]
    ev = rec["evidence"]
    assert set(ev) == {"grid_min", "grid_argmin", "mode", "grid_points", "horizon"}
    assert ev["mode"] == "exact-on-period"
    assert ev["grid_min"] == pytest.approx(rec["constant"], abs=1e-9)


def test_series_csv_minimum(capsys):
    rc, out, _ = run(
        capsys, "series", "--graph", "dprod(K(3),K(4))", "--vertex", "0",
        "--tmax", str(2 * math.pi), "--steps", "20000",
    )
    assert rc == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["t", "u0"]
    assert rows[1] == ["0", "1"]
    ts = [float(r[0]) for r in rows[1:]]
    vals = [float(r[1]) for r in rows[1:]]
    k = min(range(len(vals)), key=vals.__getitem__)
    assert vals[k] == pytest.approx(0.141923, abs=1e-4)
    assert ts[k] == pytest.approx(0.9445, abs=1e-3)
    assert len(rows) == 20001  # header plus one line per sample point


def test_series_endpoint_included(capsys):
    rc, out, _ = run(
        capsys, "series", "--graph", "K(2)", "--vertex", "0",
        "--tmax", "6.2832", "--steps", "8",
    )
    assert rc == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 9  # header plus eight sample points
    assert float(rows[-1][0]) == pytest.approx(6.2832)


def test_exit_code_for_unsupported_laplacian(capsys):
    rc, out, err = run(capsys, "classify", "--graph", "dprod(P(3),K(2))", "--matrix", "L")
    assert rc == 3
    assert out == ""
    assert err.startswith("error:")


def test_exit_code_for_parse_error(capsys):
    rc, _, err = run(capsys, "classify", "--graph", "K(3")
    assert rc == 2
    assert "position" in err


def test_exit_code_for_bad_vertex(capsys):
    rc, _, err = run(capsys, "classify", "--graph", "K(2)", "--vertex", "5")
    assert rc == 2
    assert "out of range" in err


def test_repeated_runs_are_identical(capsys):
    argv = ["analyze", "--graph", "Gamma(2,6)", "--matrix", "L", "--format", "json"]
    rc1 = main(argv)
    first = capsys.readouterr().out
    rc2 = main(argv)
    second = capsys.readouterr().out
    assert rc1 == rc2 == 0
    assert first == second


def test_out_writes_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    rc, out, _ = run(
        capsys, "classify", "--graph", "K(3)", "--format", "json", "--out", str(target)
    )
    assert rc == 0
    assert out == ""
    rc, direct, _ = run(capsys, "classify", "--graph", "K(3)", "--format", "json")
    assert rc == 0
    assert target.read_text(encoding="utf-8") == direct


def test_edge_list_file_matches_expression(capsys, tmp_path):
    listing = tmp_path / "path3.txt"
    listing.write_text("n 3\n0 1\n1 2\n", encoding="utf-8")
    rc, via_file, _ = run(capsys, "classify", "--file", str(listing), "--matrix", "L")
    assert rc == 0
    rc, via_expr, _ = run(capsys, "classify", "--graph", "P(3)", "--matrix", "L")
    assert rc == 0
    assert via_file == via_expr


def test_edge_list_weights_and_loops(capsys, tmp_path):
    listing = tmp_path / "loop.txt"
    listing.write_text("# a weighted loop\nn 2\n0 1 2\n0 0 1/2\n", encoding="utf-8")
    rc, out, _ = run(capsys, "twins", "--file", str(listing))
    assert rc == 0
    assert out.splitlines()[0].split() == ["members", "omega", "eta", "theta"]


def test_families_product_table(capsys):
    rc, out, _ = run(capsys, "families", "--family", "product", "--start", "2", "--stop", "5")
    assert rc == 0
    rows = {ln.split()[0]: ln.split() for ln in out.splitlines()[1:]}
    assert rows["dprod(K(2),K(3))"][3] == "not-sedentary"
    assert rows["dprod(K(3),K(3))"][2:5] == ["product-odd-factors", "sedentary", "0.111111111111"]
    assert rows["dprod(K(3),K(4))"][2:4] == ["product-balanced", "undetermined"]
    assert rows["dprod(K(3),K(4))"][-1] == "no"  # not certified
    assert rows["dprod(K(4),K(4))"][2:5] == ["product-dominant-class", "sedentary", "0.125"]
    assert rows["dprod(K(5),K(5))"][4] == "0.28"


def test_families_cp_table(capsys):
    rc, out, _ = run(capsys, "families", "--family", "cp", "--start", "2", "--stop", "5")
    assert rc == 0
    rows = {ln.split()[0]: ln.split() for ln in out.splitlines()[1:]}
    assert rows["CP(4)"][3] == "pst"
    assert rows["CP(6)"][3:5] == ["sedentary", "0.333333333333"]
    assert rows["CP(8)"][3] == "pst"
    assert rows["CP(10)"][3:5] == ["sedentary", "0.2"]


def test_families_clique_minus_edge_table(capsys):
    rc, out, _ = run(
        capsys, "families", "--family", "clique-minus-edge",
        "--start", "3", "--stop", "4", "--matrix", "L",
    )
    assert rc == 0
    rows = [ln.split() for ln in out.splitlines()[1:]]
    n3 = [r for r in rows if r[0] == "KM(2,1)"]
    assert n3[0][2:5] == ["pair-part-three", "sedentary", "0.333333333333"]
    n4 = [r for r in rows if r[0] == "KM(2,1,1)"]
    assert n4[0][3] == "pst"


def test_families_threshold_needs_laplacian(capsys):
    rc, _, err = run(capsys, "families", "--family", "threshold", "--cells", "2,6")
    assert rc == 2
    assert "--matrix L" in err
    rc, out, _ = run(
        capsys, "families", "--family", "threshold", "--cells", "2,6", "--matrix", "L"
    )
    assert rc == 0
    rows = [ln.split() for ln in out.splitlines()[1:]]
    assert rows[0][2:4] == ["first-cell-pst", "pst"]
    assert rows[1][2:5] == ["clique-cell", "sedentary", "0.75"]


def test_threads_env_validated(capsys, monkeypatch):
    monkeypatch.setenv("SEDWALK_THREADS", "abc")
    rc, _, err = run(capsys, "families", "--family", "cp", "--start", "2", "--stop", "3")
    assert rc == 2
    assert "SEDWALK_THREADS" in err


def test_threads_env_does_not_change_output(capsys, monkeypatch):
    argv = ["families", "--family", "cp", "--start", "2", "--stop", "4"]
    monkeypatch.delenv("SEDWALK_THREADS", raising=False)
    rc1 = main(argv)
    serial = capsys.readouterr().out
    monkeypatch.setenv("SEDWALK_THREADS", "4")
    rc2 = main(argv)
    pooled = capsys.readouterr().out
    assert rc1 == rc2 == 0
    assert serial == pooled


def test_spectrum_table(capsys):
    rc, out, _ = run(capsys, "spectrum", "--graph", "K(3)", "--vertex", "0")
    assert rc == 0
    lines = [ln.split() for ln in out.splitlines()]
    assert lines[0] == ["vertex", "eigenvalue", "weight"]
    assert lines[1] == ["0", "2", "0.333333333333"]
    assert lines[2] == ["0", "-1", "0.666666666667"]


def test_twins_table(capsys):
    rc, out, _ = run(capsys, "twins", "--graph", "Gamma(2,3)")
    assert rc == 0
    lines = [ln.split() for ln in out.splitlines()]
    assert lines[1] == ["0,1", "0", "0", "0"]
    assert lines[2] == ["2,3,4", "0", "1", "-1"]


def test_classify_csv_format(capsys):
    rc, out, _ = run(
        capsys, "classify", "--graph", "K(2)", "--matrix", "L", "--format", "csv"
    )
    assert rc == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert "matrix" in rows[0]
    assert len(rows) == 3  # header plus one row per vertex
