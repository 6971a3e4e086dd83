import json

import pytest

from src.cli.main import main
from src.config import get_settings


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_check_admissible(capsys):
    code, out = run(capsys, "check", "01(10)", "10(01)")
    assert code == 0
    payload = json.loads(out)
    assert payload["subcommand"] == "check"
    assert payload["outputs"]["verdict"] == "Admissible"


def test_check_not_admissible(capsys):
    code, out = run(capsys, "check", "01(0)", "1(0)")
    assert code == 3
    witness = json.loads(out)["outputs"]["witness"]
    assert (witness["word"], witness["shift"]) == ("alpha", 1)


@pytest.mark.parametrize("argv", [["check", "0(2)", "1(0)"], ["check", "0(1)"], ["frobnicate"]])
def test_usage_errors(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 1
    assert out == ""


def test_solve_golden(capsys):
    code, out = run(capsys, "solve", "0(10)", "1(0)", "--show-poly")
    assert code == 0
    outputs = json.loads(out)["outputs"]
    assert float(outputs["a"]["value"]) == pytest.approx(1.6180339887498949, abs=1e-12)
    assert float(outputs["p"]["value"]) == pytest.approx(0.3819660112501051, abs=1e-12)
    assert outputs["root"]["status"] == "Root"
    assert set(outputs["root"]["scan_ceiling"]) == {"value", "error_bound"}
    assert "x**2" in outputs["exact"]["root_polynomial"]


def test_solve_flags_after_subcommand(capsys):
    code, out = run(capsys, "solve", "01(10)", "10(01)", "--tol", "1e-8", "--precision", "30")
    assert code == 0
    inputs = json.loads(out)["inputs"]
    assert inputs["tol"] == 1e-8
    assert inputs["precision_digits"] == 30


def test_solve_is_deterministic(capsys):
    _, first = run(capsys, "solve", "01(10)", "10(01)")
    _, second = run(capsys, "solve", "01(10)", "10(01)")
    assert first == second


def test_solve_not_admissible(capsys):
    code, out = run(capsys, "solve", "01(0)", "1(0)")
    assert code == 3
    assert json.loads(out)["outputs"]["admissibility"]["verdict"] == "NotAdmissible"


def test_reconstruct_golden(capsys):
    code, out = run(capsys, "reconstruct", "0(10)", "1(0)", "--verify-len", "32")
    assert code == 0
    report = json.loads(out)["outputs"]["report"]
    assert report["verdict"]["status"] == "Verified"
    assert report["verified_depth"] == 32


def test_growth_exact_needs_periodic_pair(capsys):
    code, _ = run(capsys, "growth", "@primes", "1(0)", "--mode", "exact")
    assert code == 1


def test_growth_reports_published_value(capsys, tmp_path):
    table = tmp_path / "counts.csv"
    code, out = run(capsys, "growth", "01(10)", "10(01)", "--max-len", "12", "--table", str(table))
    assert code == 0
    outputs = json.loads(out)["outputs"]
    assert outputs["report"]["classification"] == "NonNull"
    [row] = outputs["published"]
    assert row["quantity"] == "growth_rate"
    assert row["consistent"] is False
    assert set(row["difference"]) == {"value", "error_bound"}
    assert set(outputs["report"]["counts"][0]["rate_bound"]) == {"value", "error_bound"}
    assert float(outputs["entropy_check"]["difference"]["value"]) == pytest.approx(0, abs=1e-8)
    assert table.read_text().splitlines()[0] == "L,count,rate_bound"


def test_growth_estimate_for_streams(capsys):
    code, out = run(capsys, "growth", "@primes", "1(0)", "--mode", "estimate", "--max-len", "12")
    assert code == 0
    assert json.loads(out)["outputs"]["report"]["classification"] == "NonNull"


def test_plotdata_from_p(capsys):
    code, out = run(capsys, "plotdata", "--a", "2", "--p", "0.5", "--len", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "block,x,y,branch"
    assert len(lines) == 1 + 1001 + 3
    assert lines[-3] == "orbit,0.5,1.0,0"


def test_plotdata_from_x(capsys, tmp_path):
    png = tmp_path / "map.png"
    code, out = run(capsys, "plotdata", "--a", "2", "--p", "0.5", "--x", "0.75", "--len", "1",
                    "--png", str(png))
    assert code == 0
    assert out.splitlines()[-1] == "orbit,0.75,0.5,1"
    assert png.exists() and png.stat().st_size > 0


def test_plotdata_rejects_bad_parameters(capsys):
    code, _ = run(capsys, "plotdata", "--a", "2.5", "--p", "0.5")
    assert code == 1


def test_search_null(capsys):
    code, out = run(capsys, "search-null", "--max-pre", "1", "--max-per", "1")
    assert code == 0
    last = json.loads(out.splitlines()[-1])
    assert last["outputs"]["summary"] == {
        "enumerated": 1, "admissible": 1, "null": 0, "non_null": 1, "unknown": 0,
    }
    [row] = last["outputs"]["pairs"]
    assert (row["alpha"], row["beta"], row["classification"]) == ("0(1)", "1(0)", "NonNull")


def test_search_null_bounds(capsys):
    code, _ = run(capsys, "search-null", "--max-pre", "9")
    assert code == 1


def test_primes(capsys):
    code, out = run(capsys, "primes", "--max", "10")
    assert code == 0
    outputs = json.loads(out)["outputs"]
    assert outputs["disagreements"] == []
    assert [r["n"] for r in outputs["rows"] if r["indicator"]] == [2, 3, 5, 7]


def test_primes_csv(capsys, tmp_path):
    target = tmp_path / "primes.csv"
    code, out = run(capsys, "primes", "--max", "5", "--format", "csv", "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().splitlines()[0] == "n,indicator,sieve,iterate,error_bound,bits"


def test_invalid_environment_is_reported_once(capsys, monkeypatch):
    monkeypatch.setenv("KNEAD_TOL", "2")
    get_settings.cache_clear()
    try:
        code = main(["check", "01(10)", "10(01)"])
    finally:
        get_settings.cache_clear()
    err = capsys.readouterr().err
    assert code == 1
    assert err.count("❌") == 1
    assert "KNEAD_TOL must lie in (0, 1)" in err
