from __future__ import annotations

import json
import subprocess
import sys

import pytest

from morsetilings.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_family_dot(capsys):
    code, out, _ = run(capsys, "family", "grid2", "--n", "5", "--dot")
    assert code == 0
    nodes = [line for line in out.splitlines() if "[label=" in line and " -- " not in line]
    assert len(nodes) == 10


def test_family_json(capsys):
    code, out, _ = run(capsys, "family", "even-tiling", "--n", "3", "--k", "2", "--json")
    assert code == 0
    assert len(json.loads(out)["vertices"]) == 10


def test_family_param_error(capsys):
    code, out, err = run(capsys, "family", "grid2", "--n", "0")
    assert code == 2 and not out and "error" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["family", "hexagons"])
    assert exc.value.code == 2


def test_badmatchings(capsys):
    code, out, _ = run(capsys, "badmatchings", "cycle", "--m", "6")
    assert json.loads(out)["matchings"] == [["a", "d"], ["b", "e"], ["c", "f"]]


def test_complex(capsys):
    code, out, _ = run(capsys, "complex", "grid2", "--n", "2")
    data = json.loads(out)
    assert [[data["ground"][i] for i in f] for f in data["facets"]] == [["a_1", "a_2"], ["b_1", "c_1"]]
    assert data["f_vector"] == [4, 2]


def test_morse_odd_grid(capsys):
    code, out, _ = run(capsys, "morse", "grid2", "--n", "7", "--schedule", "a_1,a_3,a_5,a_7")
    assert code == 0
    assert json.loads(out)["critical"] == []


def test_morse_even_grid(capsys):
    code, out, _ = run(capsys, "morse", "grid2", "--n", "6", "--schedule", "a_1,b_1,a_3,b_3,a_5,b_5")
    report = json.loads(out)
    assert report["critical"] == [{"dim": 2, "faces": [["b_1", "b_3", "b_5"]]}]
    assert report["discrepancy"] is False


def test_morse_odd_simple_reports_census(capsys):
    code, out, _ = run(capsys, "morse", "odd-simple", "--n", "2", "--k", "2", "--schedule", "a_1,b_{1,1},c_{4,1}")
    report = json.loads(out)
    assert "discrepancy" in report
    assert report["discrepancy"] == bool(report["critical"])


def test_morse_errors(capsys):
    assert run(capsys, "morse", "grid2", "--n", "4", "--schedule", "z_1")[0] == 2
    assert run(capsys, "morse", "path", "--m", "3", "--schedule", "e_1")[0] == 2


def test_homology(capsys):
    code, out, _ = run(capsys, "homology", "grid2", "--n", "4")
    data = json.loads(out)
    assert data["reduced_betti"][:2] == [0, 1]
    assert data["consistent_with"]["holds"] is True


def test_verify_thm_grid(capsys):
    code, out, _ = run(capsys, "verify", "thm-grid", "--n-max", "8")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 7 and all(line.startswith("PASS") for line in lines)
    assert "predicted S^1; computed betti [0, 1, 0, 0]" in lines[2]


def test_verify_lemma_bad(capsys):
    code, out, _ = run(capsys, "verify", "lemma-bad", "--n-max", "8")
    assert code == 0 and out.count("PASS") == 7


def test_verify_over_cap_skips(capsys):
    code, out, _ = run(capsys, "verify", "thm-grid", "--n-max", "11")
    assert code == 3
    assert out.splitlines()[-1].startswith("SKIP thm-grid n=11")


def test_face_cap_exit(capsys):
    code, out, err = run(capsys, "homology", "grid", "--m", "4", "--n", "4", "--cap-faces", "50")
    assert code == 3 and "cap" in err


def test_face_cap_skip_in_verify(capsys):
    code, out, _ = run(capsys, "verify", "thm-grid", "--n-max", "3", "--cap-faces", "10")
    assert code == 3 and "SKIP" in out and "FAIL" not in out


def test_conjecture_table(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "conjecture", "--m-max", "4", "--n-max", "4")
    assert code == 0
    assert "m,n,betti,torsion_free" in out
    assert "4,4,0 0 2 1 0 0 0 0,true" in out
    target = tmp_path / "sweep.csv"
    code, _, _ = run(capsys, "conjecture", "--m-max", "2", "--n-max", "2", "--out", str(target))
    assert target.read_text().splitlines() == ["m,n,betti,torsion_free", "1,1,void,", "1,2,0,true", "2,1,0,true", "2,2,1 0,true"]


def test_config_precedence(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "caps.cfg"
    cfg.write_text("# small caps\ngrid_n_max = 3\n")
    monkeypatch.setenv("MORSETILINGS_CONFIG", str(cfg))
    code, out, _ = run(capsys, "verify", "thm-grid")
    assert code == 0 and len(out.splitlines()) == 2
    other = tmp_path / "other.cfg"
    other.write_text("grid_n_max=4\n")
    code, out, _ = run(capsys, "verify", "thm-grid", "--config", str(other))
    assert len(out.splitlines()) == 3
    code, out, _ = run(capsys, "verify", "thm-grid", "--config", str(other), "--n-max", "5")
    assert code == 3


def test_bad_config(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour=blue\n")
    assert run(capsys, "verify", "thm-grid", "--config", str(cfg))[0] == 2


def test_json_report_written(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "grid-schedules", "--n-max", "4", "--out", str(target))
    data = json.loads(target.read_text())
    assert [i["status"] for i in data["instances"]] == ["PASS"] * 3


def test_output_is_byte_stable():
    cmd = [sys.executable, "-m", "morsetilings", "verify", "thm-odd-simple", "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["job"] == "thm-odd-simple"
