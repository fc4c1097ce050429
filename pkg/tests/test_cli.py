import json

import pytest

from sqfpairs import singular
from sqfpairs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sigma_product_three(capsys):
    code, out, err = run(capsys, "sigma", "--method", "product", "--prime-bound", "3", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["exact"] == "7/9" and rec["value"] == pytest.approx(7 / 9)
    assert "tail_bound" in rec
    assert json.loads(err)["config"]["command"] == "sigma"


def test_gamma_csv(capsys):
    code, out, _ = run(capsys, "gamma", "--x", "1000", "10000", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("X,gamma,sigma_x")
    assert lines[1].split(",")[:2] == ["1000", "670"]
    assert lines[2].split(",")[:2] == ["10000", "6721"]


def test_threads_do_not_change_stdout(capsys):
    _, a, _ = run(capsys, "gamma", "--x", "50000", "--format", "csv", "--threads", "1")
    _, b, _ = run(capsys, "gamma", "--x", "50000", "--format", "csv", "--threads", "4")
    assert a == b


def test_surjection_verify(capsys):
    code, out, _ = run(capsys, "surjection", "verify", "--max", "2000", "--format", "json")
    assert code == 0 and json.loads(out)["failures"] == 0


def test_usage_errors(capsys):
    assert main(["roots", "--a", "1"]) == 2
    assert main(["gamma", "--x", "10", "--z", "1"]) == 2
    with pytest.raises(SystemExit) as ex:
        main(["sigma", "--bogus", "1"])
    assert ex.value.code == 2


def test_prehod_sweep_reports_failure(capsys):
    code, out, _ = run(capsys, "prehod", "--x", "100", "--format", "csv")
    assert code == 1 and "29,100" in out


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.csv"
    assert main(["lambda", "--q1", "25", "--q2", "9", "--format", "csv", "--out", str(path)]) == 0
    assert path.read_text() == "q1,q2,lambda\n25,9,4\n"


def test_kloosterman_and_theta(capsys):
    code, out, _ = run(capsys, "kloosterman", "--r", "5", "--h", "1", "--alpha", "1", "--beta", "5", "--format", "json")
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = run(capsys, "theta", "--d2", "40", "--m", "3", "--x", "900", "--format", "json")
    assert code == 0 and json.loads(out)["pass"]


def test_verify_all_smoke(capsys):
    code, out, _ = run(capsys, "verify-all", "--scale", "smoke")
    assert code == 0 and out.count("PASS") == 12


def test_fault_injection_names_sigma(monkeypatch, capsys):
    good = singular.local_factor
    monkeypatch.setattr(singular, "local_factor", lambda p: good(p) * (1 - 1 / (p * 3)))
    code, out, _ = run(capsys, "verify-all", "--scale", "smoke")
    assert code == 1
    failed = [line for line in out.splitlines() if line.startswith("FAIL")]
    assert failed and failed[0].startswith("FAIL sigma-two-method")
