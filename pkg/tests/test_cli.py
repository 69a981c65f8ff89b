import csv
import io
import json
import subprocess
import sys

import pytest

from so_einstein import cli
from so_einstein import einstein_solver as es


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_3_4_json(capsys):
    code, out, _ = run(capsys, "solve", "--k", "3", "--l", "4")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"command", "params", "results", "checks"}
    recs = doc["results"]
    assert len(recs) == 2
    assert {r["branch"] for r in recs} == {"below_one", "above_one"}
    assert all(r["naturally_reductive"] is False for r in recs)
    for r in recs:
        lo, hi = (int(a) / int(b) for a, b in (r["x12_lo"].split("/"), r["x12_hi"].split("/")))
        assert lo <= r["x12"] <= hi


def test_json_roundtrip_and_17_digits(capsys):
    _, out, _ = run(capsys, "solve", "--k", "3", "--l", "5")
    doc = json.loads(out)
    assert cli.render(doc["command"], doc["params"], doc["results"], doc["checks"], "json") == out
    x12 = out.split('"x12": ')[1].split(",")[0]
    assert len(x12.replace("0.", "", 1).lstrip("0")) >= 16


def test_deterministic_output(capsys):
    first = run(capsys, "verify-oracle", "--k1", "2", "--k2", "3", "--k3", "3", "--trials", "8", "--seed", "4")
    second = run(capsys, "verify-oracle", "--k1", "2", "--k2", "3", "--k3", "3", "--trials", "8", "--seed", "4")
    assert first == second and first[0] == 0


def test_solve_csv_columns(capsys):
    code, out, _ = run(capsys, "solve", "--k", "4", "--l", "6", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0][:14] == ["k", "l", "x1", "x2", "x3", "x12", "x13", "x23", "lambda", "residual",
                            "branch", "naturally_reductive", "x12_lo", "x12_hi"]
    assert len(rows) == 3


def test_solve_table_and_output_file(capsys, tmp_path):
    path = tmp_path / "out.txt"
    code, out, _ = run(capsys, "solve", "--k", "3", "--l", "4", "--format", "table", "-o", str(path))
    assert code == 0 and out == ""
    text = path.read_text()
    assert "below_one" in text and "# theorem_ok: True" in text


def test_solve_normalize_lambda(capsys):
    _, out, _ = run(capsys, "solve", "--k", "3", "--l", "4", "--normalize", "lambda")
    for r in json.loads(out)["results"]:
        assert r["lambda"] == 1.0 and r["x13"] == r["x23"] != 1.0


def test_solve_outside_hypothesis_exit_0(capsys):
    assert run(capsys, "solve", "--k", "3", "--l", "2")[0] == 0


@pytest.mark.parametrize("argv", [
    ["solve", "--k", "2", "--l", "5"],
    ["solve", "--k", "3"],
    ["solve", "--k", "3", "--l", "4", "--tol", "0"],
    ["enumerate", "--n", "9"],
    ["verify-oracle", "--k1", "1", "--k2", "3", "--k3", "4"],
    ["verify-oracle", "--k1", "2", "--k2", "3", "--k3", "4", "--trials", "0"],
    ["sign-facts", "--k-max", "2", "--l-max", "5"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as info:
        raise SystemExit(cli.main(argv))
    assert info.value.code == 1
    assert "usage" in capsys.readouterr().err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "25")
    doc = json.loads(out)
    assert code == 0
    assert [r["k"] for r in doc["results"]] == [3, 4, 5, 6, 7, 8]
    assert doc["checks"]["bound"] == 12 and doc["checks"]["total"] >= 12


def test_enumerate_shortfall_exit_2(capsys, monkeypatch):
    real = es.solve_report

    def lossy(k, l, *a, **kw):
        rep = real(k, l, *a, **kw)
        rep.solutions = rep.solutions[:1]
        return rep

    monkeypatch.setattr(es, "solve_report", lossy)
    code, out, _ = run(capsys, "enumerate", "--n", "13")
    assert code == 2 and json.loads(out)["checks"]["ok"] is False


def test_solve_theorem_failure_exit_2(capsys, monkeypatch):
    real = es.solve_report

    def lossy(k, l, *a, **kw):
        rep = real(k, l, *a, **kw)
        rep.solutions = []
        return rep

    monkeypatch.setattr(es, "solve_report", lossy)
    assert run(capsys, "solve", "--k", "3", "--l", "4")[0] == 2


def test_degeneracy_exit_3(capsys, monkeypatch):
    def boom(*a, **kw):
        raise es.DegenerateElimination("g1, g2 share a factor")

    monkeypatch.setattr(es, "solve_report", boom)
    code, _, err = run(capsys, "solve", "--k", "3", "--l", "4")
    assert code == 3 and "share a factor" in err


def test_verify_oracle(capsys, tmp_path):
    path = tmp_path / "triples.csv"
    code, out, _ = run(capsys, "verify-oracle", "--k1", "3", "--k2", "3", "--k3", "4",
                       "--trials", "50", "--seed", "7", "--export-triples", str(path))
    doc = json.loads(out)
    assert code == 0
    assert doc["checks"]["max_deviation"] <= 1e-9
    assert doc["checks"]["bi_invariant_exact"] is True
    assert len(doc["results"]) == 50
    assert path.read_text().splitlines()[0] == "i,j,k,value"


def test_random_metrics_are_log_uniform_in_range():
    ms = cli.random_metrics(200, 1)
    assert ms[0].as_tuple() == (1.0,) * 6
    vals = [v for m in ms[1:] for v in m]
    assert min(vals) >= 0.25 and max(vals) <= 4.0
    assert sum(v < 1 for v in vals) / len(vals) == pytest.approx(0.5, abs=0.05)


def test_sign_facts(capsys):
    code, out, _ = run(capsys, "sign-facts", "--k-max", "3", "--l-max", "4")
    doc = json.loads(out)
    assert code == 0
    (row,) = doc["results"]
    assert (row["k"], row["l"], row["h0"], row["h1"]) == (3, 4, 24336, -1800)
    assert row["descartes"] is True


def test_sign_facts_full_sweep(capsys):
    code, out, _ = run(capsys, "sign-facts", "--k-max", "10", "--l-max", "30", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert rows and all(r["descartes"] == "True" and r["ok"] == "True" for r in rows)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "so_einstein", "solve", "--k", "3", "--l", "4", "--format", "csv"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.count("\n") == 3
