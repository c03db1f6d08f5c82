import json
import math
import subprocess
import sys

import numpy as np
import pytest

from gsvm.cli import main, run


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


EX22 = "1,0,1\n0,1,1\n-1,0,-1\n0,-1,-1\n"


def test_reproduce_four_point_example():
    code, rep = run(["reproduce", "--example", "ex2_2"])
    assert code == 0 and rep["paper_match"]
    res = rep["result"]
    np.testing.assert_allclose(res["w"], [1, 1], atol=1e-12)
    assert res["b"] == pytest.approx(0, abs=1e-12)
    assert res["norm"] == pytest.approx(math.sqrt(2), abs=1e-12)
    assert res["matches_paper"]


@pytest.mark.parametrize("argv", [["reproduce", "--all"], ["reproduce", "--example", "all"]])
def test_reproduce_all(argv):
    code, rep = run(argv)
    assert code == 0 and rep["paper_match"] and rep["status"] == "ok"
    assert len(rep["result"]["examples"]) == 8


def test_empty_csv_is_usage_error(tmp_path):
    code, rep = run(["train-svm", "--input", write(tmp_path, "empty.csv", "")])
    assert code == 2 and rep["status"] == "error"


def test_bad_label_reports_line(tmp_path):
    code, rep = run(["train-svm", "--input", write(tmp_path, "d.csv", "1,0,1\n1,0,2\n")])
    assert code == 2
    assert rep["error"]["line"] == 2
    assert "invalid label 2" in rep["error"]["message"]


def test_solve_vi_example():
    code, rep = run(["solve-vi", "--op", "affine", "--a", "2", "--c", "-4,-4",
                     "--rho", "0.25", "--start", "10,10"])
    assert code == 0
    np.testing.assert_allclose(rep["result"]["solution"], [2, 2], atol=1e-9)
    assert rep["result"]["theta"] == pytest.approx(0.5, abs=1e-15)
    assert rep["result"]["within_certificate"]


def test_solve_vi_boundary_step_is_domain_error():
    code, rep = run(["solve-vi", "--a", "2", "--c", "1", "--rho", "1", "--start", "1"])
    assert code == 1
    assert rep["error"]["code"] and rep["error"]["theta"] == 1.0


def test_solve_vi_missing_start():
    assert run(["solve-vi", "--a", "2", "--c", "1"])[0] == 2


def test_train_svm_and_classify_with_model(tmp_path):
    data = write(tmp_path, "d.csv", EX22)
    model = tmp_path / "model.json"
    assert main(["train-svm", "--input", data, "--output", str(model)]) == 0
    doc = json.loads(model.read_text())
    np.testing.assert_allclose(doc["result"]["w"], [1, 1], atol=1e-9)
    code, rep = run(["classify", "--model", str(model), "--input", data])
    assert code == 0
    assert rep["result"]["predictions"] == [1, 1, -1, -1]
    assert rep["result"]["accuracy"] == 1.0


def test_train_gsvm_and_classify(tmp_path):
    data = write(tmp_path, "d.csv", EX22)
    model = tmp_path / "g.json"
    assert main(["train-gsvm", "--input", data, "--output", str(model)]) == 0
    doc = json.loads(model.read_text())
    assert doc["result"]["rows_equal"]
    np.testing.assert_allclose(doc["result"]["row_solution"]["w"], [1, 1], atol=1e-9)
    unl = write(tmp_path, "u.csv", "3,0\n0,-3\n")
    code, rep = run(["classify", "--model", str(model), "--input", unl, "--unlabeled"])
    assert code == 0 and rep["result"]["predictions"] == [1, -1]


def test_enumeration_solver(tmp_path):
    code, rep = run(["train-svm", "--solver", "enumeration",
                     "--input", write(tmp_path, "d.csv", EX22)])
    assert code == 0
    np.testing.assert_allclose(rep["result"]["w"], [1, 1], atol=1e-9)


def test_classify_with_inline_hyperplane(tmp_path):
    code, rep = run(["classify", "--w", "1,1", "--b", "-1", "--unlabeled",
                     "--input", write(tmp_path, "u.csv", "1,0\n0,0\n")])
    assert code == 0 and rep["result"]["predictions"] == [1, -1]


def test_infeasible_is_domain_error(tmp_path):
    xor = "1,1,1\n-1,-1,1\n1,-1,-1\n-1,1,-1\n"
    code, rep = run(["train-svm", "--input", write(tmp_path, "x.csv", xor)])
    assert code == 1
    assert rep["error"]["code"] == "infeasible"
    assert rep["error"]["certificate"]


def test_inconsistent_gsvm_and_svm_active(tmp_path):
    path = tmp_path / "s3.csv"
    assert main(["gen", "--example", "ex2_3_s3", "--csv", str(path)]) == 0
    assert run(["train-gsvm", "--input", str(path)])[0] == 1
    code, rep = run(["train-gsvm", "--input", str(path), "--active", "svm"])
    assert code == 0
    np.testing.assert_allclose(rep["result"]["row_solution"]["w"], [2, 2], atol=1e-9)


def test_gen_family(tmp_path):
    out = tmp_path / "a.csv"
    code, rep = run(["gen", "--family", "A", "--n", "3", "--alphas", "1,2,4",
                     "--k", "3", "--csv", str(out)])
    assert code == 0
    np.testing.assert_allclose(rep["result"]["expected_w"], [-0.5, -0.25, -0.125])
    assert out.read_text().count("\n") == 6


def test_gen_family_example():
    code, rep = run(["gen", "--example", "ex2_13"])
    assert code == 0 and rep["result"]["margin_feasible"] is False


def test_gen_bad_spec_is_domain_error():
    code, rep = run(["gen", "--family", "B", "--n", "3", "--alphas", "1,2,3", "--k", "-1"])
    assert code == 1 and rep["error"]["code"]


def test_check_op():
    code, rep = run(["check-op", "--op", "affine", "--a", "2", "--c", "1,1"])
    assert code == 0
    reports = rep["result"]["reports"]
    assert reports["lipschitz"].estimate == pytest.approx(2.0, abs=1e-12)
    assert reports["strongly_monotone"].holds
    assert rep["result"]["hierarchy_consistent"]


def test_check_op_norm_gradient():
    code, rep = run(["check-op", "--op", "norm-gradient", "--dim", "3", "--alpha", "0.1",
                     "--lipschitz", "100"])
    assert code == 0
    reports = rep["result"]["reports"]
    assert reports["monotone"].holds
    assert not reports["strongly_monotone"].holds
    assert reports["strongly_monotone"].witness is not None


def test_check_op_needs_dim():
    assert run(["check-op", "--op", "norm-gradient"])[0] == 2


@pytest.mark.parametrize("argv", [["solve-vi", "--a", "2", "--c", "1", "--start", "1",
                                   "--rho", "-1"],
                                  ["check-op", "--a", "2", "--c", "1", "--samples", "0"]])
def test_non_positive_numeric_flags(argv):
    assert run(argv)[0] == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as err:
        run(["train-svm", "--solver", "magic"])
    assert err.value.code == 2


def test_subprocess_json_is_deterministic(tmp_path):
    cmd = [sys.executable, "-m", "gsvm", "reproduce", "--all"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True)
    b = subprocess.run(cmd, capture_output=True, text=True, check=True)
    assert a.stdout == b.stdout
    doc = json.loads(a.stdout)
    assert set(doc) >= {"command", "status", "result", "diagnostics", "paper_match"}


def test_subprocess_diagnostic_without_color(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "gsvm", "train-svm", "--input", str(tmp_path / "none.csv")],
        capture_output=True, text=True, env={"NO_COLOR": "1", "PATH": ""})
    assert proc.returncode == 2
    assert "\033[" not in proc.stderr and "error:" in proc.stderr
