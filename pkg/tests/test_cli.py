import io
import json

import pytest

from floer_radial.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_hf_table_tsv():
    code, text = run("hf", "table", "--n", "2", "--mmax", "3", "--tsv")
    assert code == EXIT_OK
    rows = text.strip().splitlines()
    assert len(rows) == 4
    assert [r.split("\t")[-1] for r in rows[1:]] == ["6", "10", "14"]


def test_stair_build_json(tmp_path):
    save = tmp_path / "profile.json"
    code, text = run("stair", "build", "--a", "1", "--b", "2", "--b0", "3/2", "--cphi", "1/10", "--json",
                     "--grid-n", "2001", "--save", str(save))
    assert code == EXIT_OK
    data = json.loads(text)
    assert data["ok"] and data["params"]["A"] == "3/20" and data["units"] == "multiples of 2pi"
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"unit_multiplier": "3/2", "all_integer_multiples": True, "multipliers": []}))
    code, text = run("spectrum", "orbits", "--profile", str(save), "--spectrum", str(spec), "--tsv")
    assert code == EXIT_OK
    assert [line.split("\t")[0] for line in text.splitlines()[1:]] == ["I", "II", "III", "IV"]


def test_stair_infeasible_is_certified_failure():
    code, text = run("stair", "build", "--a", "1", "--b", "2", "--b0", "3/2", "--cphi", "1/2")
    assert code == EXIT_FAIL and not json.loads(text)["ok"]


def test_geodesic_check():
    code, text = run("geodesic", "check", "--axes", "1,1,0.8")
    assert code == EXIT_OK
    assert json.loads(text)["witness"] == pytest.approx(5.672, abs=1e-3)
    code, _ = run("geodesic", "check", "--axes", "1.2,1,1")
    assert code == EXIT_FAIL
    code, _ = run("geodesic", "check", "--axes", "1,x,1")
    assert code == EXIT_USAGE


def test_smooth_accepts_negative_rationals():
    code, text = run("smooth", "convex", "--r0", "0", "--ell", "1", "--alpha", "1", "--beta0", "0",
                     "--beta1", "-1/2", "--grid-n", "101")
    assert code == EXIT_OK
    assert json.loads(text)["meta"]["branch"] == "equal"
    code, _ = run("smooth", "convex", "--r0", "0", "--ell", "1", "--alpha", "1", "--beta0", "0", "--beta1", "1/10")
    assert code == EXIT_FAIL
    code, _ = run("smooth", "concave", "--r0", "0")
    assert code == EXIT_USAGE


def test_transfer_commands(tmp_path):
    assert run("transfer", "bound", "--below", "3", "--w1", "8", "--w2", "10")[0] == EXIT_OK
    code, text = run("transfer", "bound", "--below", "0", "--w1", "5", "--w2", "5")
    assert code == EXIT_FAIL and json.loads(text)["note"] == "equality required"
    code, text = run("transfer", "copies", "--delta", "1/3", "--m", "2")
    assert code == EXIT_OK and json.loads(text)["r0"] == "1/16"
    assert run("transfer", "copies", "--delta", "1/2", "--m", "2")[0] == EXIT_USAGE
    dims = tmp_path / "dims.txt"
    dims.write_text(" ".join(str(4 * m + 2) for m in range(1, 101)))
    code, text = run("transfer", "kappa", "--dims", str(dims))
    assert code == EXIT_OK and json.loads(text)["estimate"] == "206/51"


def test_hf_kappa_and_visible():
    code, text = run("hf", "kappa", "--n", "2", "--mmax", "10")
    assert code == EXIT_OK and json.loads(text)["limit"] == "4"
    code, text = run("hf", "visible", "--n", "2", "--m", "1")
    data = json.loads(text)
    assert code == EXIT_OK and (data["lower"], data["upper"], data["exact"]) == (2, 6, 6)
    assert run("hf", "table", "--n", "1", "--mmax", "2")[0] == EXIT_USAGE


def test_usage_errors():
    assert run("bogus")[0] == EXIT_USAGE
    assert run("hf", "table", "--n", "2")[0] == EXIT_USAGE
    assert run("hf", "table", "--n", "2", "--mmax", "2", "--tol", "0")[0] == EXIT_USAGE


def test_seed_env_overrides(monkeypatch):
    monkeypatch.setenv("FLOER_RADIAL_SEED", "17")
    _, text = run("geodesic", "check", "--axes", "1,1,1", "--seed", "3")
    assert json.loads(text)["seed"] == 17


def test_output_is_deterministic():
    first = run("geodesic", "check", "--axes", "0.9,0.7,1", "--seed", "4")
    assert run("geodesic", "check", "--axes", "0.9,0.7,1", "--seed", "4") == first
