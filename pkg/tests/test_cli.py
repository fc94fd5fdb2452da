import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "loopcybe.cli"]


def run(*args, inputs=None):
    return subprocess.run(CLI + list(args), capture_output=True, text=True)


def write_quad(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


VALID_A2 = {
    "diagram": {"type": "A2", "s": [1, 0, 0], "nu_perm": None},
    "gamma1": [1], "gamma2": [2], "gamma": {"1": 2},
    "t_h": [{"i": 1, "j": 2, "val": "1/36"}],
}

INVALID_A2 = {
    "diagram": {"type": "A2", "s": [1, 0, 0], "nu_perm": None},
    "gamma1": [1], "gamma2": [1], "gamma": {"1": 1}, "t_h": [],
}


def test_roots_subcommand():
    out = run("roots", "A2")
    assert out.returncode == 0
    data = json.loads(out.stdout)
    assert data["count"] == 6


def test_roots_invalid_type_exits_2():
    out = run("roots", "Q9")
    assert out.returncode == 2
    assert "error" in json.loads(out.stdout)


def test_r0_subcommand():
    out = run("r0", "--type", "A1", "--s", "1,0")
    assert out.returncode == 0
    data = json.loads(out.stdout)
    assert data["tensor"]["m"] == 1
    assert {"dx": 0, "dy": 0, "i": 1, "j": 0, "val": "1/4"} in data["tensor"]["poly"]


def test_validate_valid(tmp_path):
    path = write_quad(tmp_path, "q.json", VALID_A2)
    out = run("validate", "-i", path)
    assert out.returncode == 0
    assert json.loads(out.stdout)["valid"] is True


def test_validate_condition2_failure(tmp_path):
    path = write_quad(tmp_path, "q.json", INVALID_A2)
    out = run("validate", "-i", path)
    assert out.returncode == 1
    data = json.loads(out.stdout)
    assert data["condition2"]["ok"] is False
    assert data["condition2"]["trapped"] == [1]


def test_malformed_json_exits_2(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    out = run("validate", "-i", str(p))
    assert out.returncode == 2
    assert "error" in json.loads(out.stdout)


def test_verify_cybe(tmp_path):
    path = write_quad(tmp_path, "q.json", VALID_A2)
    out = run("verify-cybe", "-i", path)
    assert out.returncode == 0
    data = json.loads(out.stdout)
    assert data == {"cybe": "zero", "skew": "zero", "mode": "symbolic",
                    "operators": "agree"}


def test_verify_cybe_degree_bound_flag(tmp_path):
    path = write_quad(tmp_path, "q.json", VALID_A2)
    out = run("--degree-bound", "2", "verify-cybe", "-i", path)
    assert out.returncode == 0
    assert json.loads(out.stdout)["operators"] == "agree"


def test_twist_deterministic_output(tmp_path):
    path = write_quad(tmp_path, "q.json", VALID_A2)
    out1 = run("twist", "-i", path)
    out2 = run("twist", "-i", path)
    assert out1.returncode == 0
    assert out1.stdout == out2.stdout      # byte-identical


def test_census_b_series():
    out = run("census", "--types", "B", "--max-rank", "5")
    assert out.returncode == 0
    rows = json.loads(out.stdout)
    by_rank = {r["rank"]: r for r in rows}
    assert by_rank[2]["good"] and by_rank[3]["good"]
    assert not by_rank[5]["good"]
    assert by_rank[5]["witness_gamma1"] is not None


def test_equiv_subcommand(tmp_path):
    qa = write_quad(tmp_path, "a.json", VALID_A2)
    rotated = {
        "diagram": {"type": "A2", "s": [1, 0, 0], "nu_perm": None},
        "gamma1": [2], "gamma2": [0], "gamma": {"2": 0},
        "t_h": [{"i": 1, "j": 2, "val": "1/36"}],
    }
    qb = write_quad(tmp_path, "b.json", rotated)
    out = run("equiv", "-a", qa, "-b", qb)
    data = json.loads(out.stdout)
    assert out.returncode == 0
    assert data["equivalent"] is True


def test_export_catalog():
    out = run("export", "--what", "catalog", "--type", "A1", "--s", "1,0")
    assert out.returncode == 0
    data = json.loads(out.stdout)
    assert len(data["orbits"]) == 2
    assert all("t_h_dimension" in o for o in data["orbits"])


def test_unknown_flag_rejected():
    out = run("roots", "A1", "--frobnicate")
    assert out.returncode == 2


def test_r0_default_s_untwisted_and_twisted():
    out = run("r0", "--type", "A1")
    assert out.returncode == 0
    assert json.loads(out.stdout)["sigma"]["s"] == [1, 0]
    out = run("r0", "--type", "A2", "--nu", "1,0")
    assert out.returncode == 0
    data = json.loads(out.stdout)
    assert data["sigma"]["s"] == [1, 0]
    assert data["tensor"]["m"] == 2


def test_export_structure_table():
    out = run("export", "--what", "structure", "--type", "A1")
    assert out.returncode == 0
    data = json.loads(out.stdout)
    assert data["killing_gram"][2][2] == "8"
