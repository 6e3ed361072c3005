import json
import subprocess
import sys

import numpy as np
import pytest

from conftest import halmos_pair
from resgrass import io
from resgrass.cli import main


@pytest.fixture
def files(tmp_path):
    p, q = halmos_pair(0.4)
    paths = {"p": tmp_path / "p.json", "q": tmp_path / "q.json"}
    io.save_projection(p, paths["p"])
    io.save_projection(q, paths["q"])
    paths["r2"] = tmp_path / "r2.json"
    io.save_projection(np.diag([1.0, 1.0, 0.0]), paths["r2"])
    paths["r1"] = tmp_path / "r1.json"
    io.save_projection(np.diag([1.0, 0.0, 0.0]), paths["r1"])
    paths["minus"] = tmp_path / "minus.json"
    io.save_matrix(-np.eye(2), paths["minus"])
    paths["one"] = tmp_path / "one.json"
    io.save_matrix(np.eye(2), paths["one"])
    paths["out"] = tmp_path / "out"
    return {k: str(v) for k, v in paths.items()}


def test_geodesic_same_point(files, capsys):
    assert main(["geodesic", files["p"], files["p"]]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["branch"] == "A"
    np.testing.assert_allclose(io.matrix_from_obj(obj["z"]), 0, atol=1e-15)


def test_geodesic_angle_pair(files):
    assert main(["geodesic", files["p"], files["q"], "--out", files["out"]]) == 0
    obj = io.read_json(files["out"])
    assert obj["branch"] == "A"
    assert np.isclose(obj["norm_inf"], 0.4)


def test_geodesic_rank_mismatch(files, capsys):
    assert main(["geodesic", files["r1"], files["r2"]]) == 3
    assert "orbit" in capsys.readouterr().err


def test_geodesic_parse_error(files, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    assert main(["geodesic", str(bad), files["p"]]) == 2
    assert main(["geodesic", files["minus"], files["p"]]) == 2
    assert main(["geodesic", files["p"], files["q"], "--format", "csv"]) == 2


def test_distance(files, capsys):
    assert main(["distance", files["p"], files["q"]]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["space"] == "grassmannian"
    assert np.isclose(obj["distance"], 0.4 * np.sqrt(2))
    assert main(["distance", files["minus"], files["one"], "--format", "csv"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "space,distance"
    assert np.isclose(float(out[1].split(",")[1]), np.pi * np.sqrt(2))
    assert main(["distance", files["p"], files["one"]]) == 2


def test_log_unitary(files, capsys):
    assert main(["log-unitary", files["minus"]]) == 0
    z = io.matrix_from_obj(json.loads(capsys.readouterr().out))
    np.testing.assert_allclose(z, 1j * np.pi * np.eye(2), atol=1e-15)
    assert main(["log-unitary", files["one"], files["minus"]]) == 0
    capsys.readouterr()
    assert main(["log-unitary", files["one"], files["one"], files["one"]]) == 2


def test_random_pair(files, tmp_path, capsys):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    assert main(["random-pair", a, b, "--dim", "4", "--rank", "2", "--seed", "7"]) == 0
    q0, q1 = io.load_projection(a), io.load_projection(b)
    assert np.linalg.norm(q0 - q1, 2) < 1
    assert main(["random-pair", "--mode", "boundary"]) == 0
    obj = json.loads(capsys.readouterr().out)
    q0, q1 = io.projection_from_obj(obj["q0"]), io.projection_from_obj(obj["q1"])
    assert abs(np.linalg.norm(q0 - q1, 2) - 1) <= 1e-10
    assert main(["random-pair", "--dim", "3", "--rank", "3"]) == 2
    assert main(["random-pair", a]) == 2


def test_verify_minimality(files, capsys):
    argv = "verify-minimality --dim 4 --rank 2 --k 2 --trials 20 --competitors 20 --m 512 --seed 42".split()
    assert main(argv + ["--out", files["out"]]) == 0
    line = capsys.readouterr().out.strip()
    assert line.startswith("min_margin=") and line.endswith("trials=20")
    assert float(line.split()[0].split("=")[1]) >= 0
    first = open(files["out"]).read()
    assert len(first.splitlines()) == 21
    assert main(argv + ["--out", files["out"]]) == 0
    assert open(files["out"]).read() == first


def test_verify_minimality_bad_k(capsys):
    assert main(["verify-minimality", "--k", "0.5"]) == 2
    assert main(["verify-minimality", "--k", "inf"]) == 2
    assert main(["verify-unitary-minimality", "--k", "1"]) == 2
    assert main(["verify-minimality", "--dim", "3", "--rank", "3"]) == 2


def test_verify_minimality_json(capsys):
    assert main(["verify-minimality", "--trials", "2", "--competitors", "2", "--m", "16", "--format", "json"]) == 0
    text = capsys.readouterr().out
    payload, summary = text.rsplit("\n", 2)[0], text.strip().splitlines()[-1]
    reports = json.loads(payload)
    assert len(reports) == 2 and "tol_disc" in reports[0]
    assert summary.startswith("min_margin=")


def test_verify_unitary_minimality(files, capsys):
    argv = ["verify-unitary-minimality", "--dim", "6", "--trials", "5", "--competitors", "5", "--out", files["out"]]
    assert main(argv) == 0
    assert len(open(files["out"]).read().splitlines()) == 6


def test_verify_inequalities(files, capsys):
    assert main(["verify-inequalities", "--trials", "1000", "--seed", "7", "--out", files["out"]]) == 0
    line = capsys.readouterr().out.strip()
    assert float(line.split()[0].split("=")[1]) >= -1e-10
    assert main(["verify-inequalities", "--r", "0.5"]) == 2


def test_verify_sandwich(files, capsys):
    assert main(["verify-sandwich", "--trials", "20", "--out", files["out"]]) == 0
    assert capsys.readouterr().out.startswith("min_margin=")
    assert main(["verify-sandwich", "--trials", "3", "--format", "json"]) == 0


def test_unknown_command(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "resgrass", "verify-sandwich", "--trials", "5"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert out.returncode == 0
    assert out.stdout.strip().splitlines()[-1].endswith("trials=5")
