import json
from pathlib import Path

import numpy as np
import pytest

from submersion_lab import cli
from submersion_lab.specio import dump_report, load_report

SPECS = {p.name: str(p) for p in (Path(__file__).parents[1] / "specs").glob("*.json")}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, (json.loads(out) if out else None), err


def test_check_flat(capsys):
    code, rep, _ = run_json(capsys, "check", "--example", "flat", "--n", "3")
    assert code == 0
    assert all(v == 0.0 for v in rep["maxima"].values())
    assert rep["verdict"] == "harmonic"


def test_check_hyperbolic(capsys):
    code, rep, _ = run_json(capsys, "check", "--example", "hyperbolic-slice", "--n", "2")
    assert code == 1
    assert rep["verdict"] == "not_biharmonic"
    b = rep["residuals"]["bitension"]
    assert b["p1:1"] == pytest.approx(-2.0, abs=1e-4)
    assert b["p1:2"] == pytest.approx(0.0, abs=1e-4)
    assert rep["passed"]["curvature_second"]


def test_check_hopf(capsys):
    code, rep, _ = run_json(capsys, "check", "--example", "hopf")
    assert code == 0 and rep["verdict"] == "harmonic"


def test_check_nil3_skips_curvature(capsys):
    code, rep, _ = run_json(capsys, "check", "--example", "nil3")
    assert code == 0
    assert not any(k.startswith("curvature_") for k in rep["residuals"])


def test_check_spec(capsys):
    code, rep, _ = run_json(capsys, "check", "--spec", SPECS["hyperbolic_n3.json"])
    assert code == 1
    assert rep["residuals"]["bitension"]["1"] == -4.0
    assert rep["verdict"] == "not_biharmonic"


def test_inconsistent_curvature(capsys):
    code, rep, _ = run_json(capsys, "check", "--spec", SPECS["hyperbolic_n3.json"], "--c", "1")
    assert code == 1 and rep["verdict"] == "inconsistent_inputs"


def test_identities(capsys):
    code, rep, _ = run_json(capsys, "identities", "--spec", SPECS["hyperbolic_n3.json"])
    assert code == 0
    assert rep["residuals"]["key_identity"]["value"] == -4.0
    assert rep["maxima"]["simplified_vs_full"] == 0.0


def test_identities_example(capsys):
    code, rep, _ = run_json(capsys, "identities", "--example", "hyperbolic-slice-warped", "--n", "3")
    assert code == 0
    assert rep["residuals"]["key_identity"]["p1:value"] == pytest.approx(-4.0, abs=1e-4)


def test_adapt_spec(capsys):
    code, rep, _ = run_json(capsys, "adapt", "--spec", SPECS["kappa_345.json"])
    assert code == 0
    assert np.allclose(rep["outputs"]["kappa_out"], [5.0, 0.0, 0.0])


def test_adapt_zero(tmp_path, capsys):
    p = tmp_path / "z.json"
    p.write_text(json.dumps({"n": 3, "kappa": [0, 0, 0], "sigma": [[0] * 3] * 3}))
    code, rep, _ = run_json(capsys, "adapt", "--spec", str(p))
    assert code == 0 and np.array_equal(rep["outputs"]["K"], np.eye(3))


def test_adapt_random_seeded(capsys, monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "5")
    code, rep, _ = run_json(capsys, "adapt", "--n", "6")
    assert code == 0
    assert rep["maxima"]["tridiagonality"] < 1e-11
    _, again, _ = run_json(capsys, "adapt", "--n", "6")
    assert again == rep
    monkeypatch.setenv(cli.SEED_ENV, "6")
    _, other, _ = run_json(capsys, "adapt", "--n", "6")
    assert other["inputs"]["kappa"] != rep["inputs"]["kappa"]


def test_adapt_not_skew(tmp_path, capsys):
    p = tmp_path / "s.json"
    # antisymmetry is checked exactly on load
    p.write_text(json.dumps({"n": 2, "kappa": [1, 0], "sigma": [[0, 1], [1, 0]]}))
    code, _, err = run(capsys, "adapt", "--spec", str(p))
    assert code == 2 and "sigma[2][1]" in err


def test_oracle_hyperbolic(capsys):
    code, rep, _ = run_json(capsys, "oracle", "--example", "hyperbolic-slice", "--n", "3", "--h", "1e-3")
    assert code == 0
    for name in ("first", "second", "third", "fourth"):
        assert rep["maxima"][f"curvature_{name}"] <= 1e-4 * 1e-3


def test_oracle_flat_exact(capsys):
    code, rep, _ = run_json(capsys, "oracle", "--example", "flat")
    assert code == 0
    assert all(v == 0.0 for k, v in rep["maxima"].items())


def test_oracle_nil3(capsys):
    code, rep, _ = run_json(capsys, "oracle", "--example", "nil3")
    assert code == cli.EXIT_NOT_CONSTANT
    assert rep["outputs"]["best_constant_residual"] >= 0.5 - 1e-9


def test_oracle_warped_order(capsys):
    code, rep, _ = run_json(capsys, "oracle", "--example", "hyperbolic-slice-warped")
    assert code == 0
    assert 3.5 <= rep["outputs"]["convergence_ratio"] <= 4.5


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--example", "torus"],
        ["check"],
        ["check", "--spec", "does-not-exist.json"],
        ["check", "--example", "flat", "--h", "-1"],
        ["check", "--example", "flat", "--n", "1"],
        ["oracle", "--spec", SPECS["flat_n2.json"]],
        ["check", "--spec", SPECS["kappa_345.json"]],
        ["identities", "--example", "nil3"],
    ],
)
def test_input_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("submersion-lab: error:")


def test_malformed_spec_reports_line(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{\n "n": 2,\n "kappa": [0 0]\n}')
    code, _, err = run(capsys, "check", "--spec", str(p))
    assert code == 2 and "line 3" in err


def test_json_output_round_trips(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "check", "--example", "hopf", "--format", "json", "--out", str(out))
    text = out.read_text()
    assert dump_report(load_report(text)) == text


def test_deterministic(capsys):
    a = run(capsys, "oracle", "--example", "hopf", "--format", "json")
    b = run(capsys, "oracle", "--example", "hopf", "--format", "json")
    assert a == b


def test_text_output(capsys):
    code, out, _ = run(capsys, "check", "--example", "hyperbolic-slice")
    assert "bitension" in out and "FAIL" in out and "verdict: not_biharmonic" in out


def test_run_config_validation():
    with pytest.raises(ValueError):
        cli.RunConfig("check", tol_algebraic=0.0)
    with pytest.raises(ValueError):
        cli.RunConfig("check", spec_path="a", example="flat")
    cfg = cli.RunConfig("oracle", example="flat", h=2e-3)
    assert cfg.tol_grid == pytest.approx(2e-4)
