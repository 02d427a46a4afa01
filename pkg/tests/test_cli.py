from __future__ import annotations

import csv
import io
import json

import pytest

from bicyclic_energy import cli
from bicyclic_energy.errors import ConvergenceError

from conftest import FIXTURES


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_charpoly_examples(capsys, tmp_path):
    assert run(capsys, "charpoly", "--family", "path", "--n", "2")[:2] == (0, "2 1 0 -1\n")
    code, out, _ = run(capsys, "charpoly", "--family", "p66", "--n", "13")
    assert out == "13 1 0 -14 0 74 0 -188 0 245 0 -158 0 40 0\n"
    f = tmp_path / "c4.edges"
    f.write_text("4 4\n0 1\n1 2\n2 3\n3 0\n")
    assert run(capsys, "charpoly", "--file", str(f))[:2] == (0, "4 1 0 -4 0 0\n")


@pytest.mark.parametrize("method", ["direct", "recursion", "deletion"])
def test_charpoly_methods_agree(capsys, method):
    code, out, _ = run(capsys, "charpoly", "--family", "r", "--a", "6", "--b", "10", "--method", method)
    assert code == 0
    assert out == run(capsys, "charpoly", "--family", "r", "--a", "6", "--b", "10")[1]


def test_charpoly_json(capsys):
    code, out, _ = run(capsys, "charpoly", "--family", "cycle", "--n", "4", "--json")
    doc = json.loads(out)
    assert doc["records"][0]["polynomial"] == "4 1 0 -4 0 0"
    assert doc["records"][0]["coefficients"] == [1, 0, -4, 0, 0]


def test_parse_error_reports_line(capsys, tmp_path):
    f = tmp_path / "bad.edges"
    f.write_text("3 2\n0 1\n1 q\n")
    code, out, err = run(capsys, "charpoly", "--file", str(f))
    assert code == 2 and "line 3" in err and out == ""


@pytest.mark.parametrize("argv", [
    ["charpoly", "--family", "p66", "--n", "10"],
    ["charpoly", "--family", "pylone", "--n", "10"],
    ["charpoly"],
    ["charpoly", "--file", "/nonexistent/g.edges"],
    ["compare", "--n", "20", "--t", "12"],
    ["scan", "19"],
    ["scan", "104"],
    ["signgrid", "--t", "12"],
    ["signgrid", "--n", "42"],
    ["extremal", "11"],
    ["extremal", "14"],
    ["extremal", "15", "--allow-large"],
    ["verify", "--precision-digits", "20"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["signgrid", "--quantity", "g"])
    assert info.value.code == 2


def test_energy_both_methods(capsys):
    code, out, _ = run(capsys, "energy", "--family", "cycle", "--n", "6", "--energy-method", "both")
    assert code == 0
    got = rows(out)
    assert [r["method"] for r in got] == ["eigenvalue", "coulson-explicit"]
    assert [r["energy"] for r in got] == ["8", "8"]


def test_convergence_failure_exit_3(capsys, monkeypatch):
    def boom(p):
        raise ConvergenceError("quadrature did not converge", 1e-3)
    monkeypatch.setattr(cli, "energy_coulson_explicit", boom)
    code, _, err = run(capsys, "energy", "--family", "cycle", "--n", "6", "--energy-method", "coulson")
    assert code == 3 and "1.000e-03" in err


def test_compare_record(capsys):
    code, out, _ = run(capsys, "compare", "--n", "20", "--t", "10")
    assert code == 0
    (rec,) = rows(out)
    assert list(rec) == cli.COMPARISON_COLUMNS
    assert float(rec["difference"]) > 0 and rec["methods_agree"] == "true"
    assert len(rec["E_p66"].replace(".", "")) <= 12


def test_scan_20_single_record(capsys):
    code, out, _ = run(capsys, "scan", "20")
    assert code == 0
    assert [(r["a"], r["b"]) for r in rows(out)] == [("10", "10")]


def test_scan_50_matches_fixture(capsys):
    code, out, err = run(capsys, "scan", "50")
    assert code == 0
    assert out == (FIXTURES / "scan_50.csv").read_text()
    assert "20 pairs, 20 positive" in err


def test_signgrid_default_quantity_passes_on_coarse_grid(capsys):
    code, out, err = run(capsys, "signgrid", "--grid-density", "3")
    assert code == 0 and out == ",".join(cli.SIGNGRID_COLUMNS) + "\n"


def test_signgrid_json(capsys):
    code, out, _ = run(capsys, "signgrid", "--quantity", "K", "--t", "10,14", "--n", "28,32", "--grid-density", "2", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["records"] == []
    assert doc["points"] == 2 * (6 * 2 + 1 + 3)


def test_signgrid_f10_reports_display_mismatch(capsys):
    code, out, err = run(capsys, "signgrid", "--quantity", "f10", "--grid-density", "2")
    assert code == 1
    got = rows(out)
    assert got and all(r["kind"] == "mismatch" for r in got)
    assert "0 sign violations" in err


def test_signgrid_parallel_matches_serial(capsys):
    serial = run(capsys, "signgrid", "--quantity", "f10", "--grid-density", "2")
    parallel = run(capsys, "signgrid", "--quantity", "f10", "--grid-density", "2", "--jobs", "2")
    assert serial == parallel


def test_extremal_12(capsys):
    code, out, _ = run(capsys, "extremal", "12", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["winner_is_p66"] and doc["winner_unique"]
    assert doc["total"] == 4938 and len(doc["records"]) == 10
    pinned = json.loads((FIXTURES / "regression.json").read_text())
    top = [[float(r["energy"]), r["canonical"]] for r in doc["records"][:3]]
    assert [c for _, c in top] == [c for _, c in pinned["extremal_12_top"]]
    assert all(abs(e - p) < 1e-10 for (e, _), (p, _) in zip(top, pinned["extremal_12_top"]))


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "golden", "--only", "base case")
    got = rows(out)
    assert code == 0 and [r["passed"] for r in got] == ["true", "true"]
    assert "E(R10,10)-E(P66_12)" in got[1]["detail"]


def test_verify_reports_failure_with_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "--only", "display = f_value", "--grid-density", "1")
    assert code == 1 and rows(out)[0]["passed"] == "false"


def test_output_is_deterministic(capsys):
    a = run(capsys, "extremal", "12")
    b = run(capsys, "extremal", "12")
    assert a == b
