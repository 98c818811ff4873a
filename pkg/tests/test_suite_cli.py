import io
import json
import os
import subprocess
import sys

import pytest

from qlogic import SuiteConfig, emit_report, run_postulate_suite
from qlogic.cli import main
from qlogic.suite import CHECKS, report_dict


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_suite_passes_on_complex_matrices():
    report = run_postulate_suite(SuiteConfig("C(3)", samples=20, seed=1))
    assert report.passed
    assert [c.name for c in report.checks] == sorted(c for c in CHECKS if c != "counterexample")


def test_spin_factor_fails_uniqueness():
    report = run_postulate_suite(SuiteConfig("spin(3) + R(2)", samples=10, seed=1))
    assert not report.passed
    a = report.check("A")
    assert not a.passed and "uniqueness FAILS" in a.detail
    assert report.check("counterexample").passed
    assert report.check("C").passed


def test_rank_below_three_is_vacuous_for_D():
    report = run_postulate_suite(SuiteConfig("C(2)", samples=5, seed=0, checks=("D",)))
    assert report.passed
    assert report.check("D").residual == 0.0


def test_tolerance_override_can_fail_a_check():
    report = run_postulate_suite(SuiteConfig("C(3)", samples=10, seed=0, tolerances={"C": 1e-30}, checks=("C",)))
    c = report.check("C")
    assert c.threshold == 1e-30
    assert c.passed == (c.residual <= 1e-30)


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig("C(3)", samples=0)
    with pytest.raises(ValueError):
        SuiteConfig("C(3)", checks=("Z",))
    with pytest.raises(ValueError):
        SuiteConfig("C(3)", tolerances={"A": -1.0})


def test_empty_selection():
    report = run_postulate_suite(SuiteConfig("C(3)", samples=5, checks=()))
    assert len(report.checks) == 0
    assert report.passed
    code, text = run_cli("check", "--algebra", "C(3)", "--only", "", "--format", "json")
    assert code == 0
    assert json.loads(text)["checks"] == []


def test_report_json_shape():
    report = run_postulate_suite(SuiteConfig("R(3)", samples=5, seed=3, checks=("C", "D")))
    data = json.loads(emit_report(report, "json"))
    assert set(data) == {"version", "tool_version", "spec", "seed", "samples", "checks", "passed"}
    assert data["checks"][0]["millis"] is None
    assert report_dict(report, timings=True)["checks"][0]["millis"] is not None
    assert "overall: PASS" in emit_report(report, "text")


def test_cli_check_exit_codes():
    assert run_cli("check", "--algebra", "R(3)", "--samples", "5")[0] == 0
    assert run_cli("check", "--algebra", "spin(3)", "--samples", "5", "--only", "A")[0] == 1
    assert run_cli("check", "--algebra", "O(4)")[0] == 2
    assert run_cli("check", "--algebra", "C(3", "--samples", "5")[0] == 2
    assert run_cli("check", "--algebra", "C(3)", "--tol-override", "Q=1")[0] == 2
    assert run_cli("check")[0] == 2


def test_cli_deterministic():
    args = ("check", "--algebra", "H(2)", "--samples", "10", "--seed", "5", "--format", "json")
    assert run_cli(*args)[1] == run_cli(*args)[1]


def test_cli_seed_from_environment(monkeypatch):
    monkeypatch.setenv("QLOGIC_SEED", "11")
    code, text = run_cli("check", "--algebra", "R(3)", "--samples", "3", "--format", "json")
    assert code == 0 and json.loads(text)["seed"] == 11
    code, text = run_cli("check", "--algebra", "R(3)", "--samples", "3", "--seed", "4", "--format", "json")
    assert json.loads(text)["seed"] == 4


def test_cli_counterexample():
    code, text = run_cli("counterexample", "spin", "--n", "3", "--format", "json", "--lift", "spin(3) + R(2)")
    data = json.loads(text)
    assert code == 0
    assert data["counterexample"] and data["nu_not_density"] and data["lift"]["passed"]
    assert run_cli("counterexample", "spin", "--n", "1")[0] == 2
    assert run_cli("counterexample", "spin", "--n", "3", "--u1", "0,0,1")[0] == 2


def test_cli_interference():
    code, text = run_cli("interference", "--algebra", "C(3)", "--order", "3", "--configs", "10", "--format", "json")
    assert code == 0 and json.loads(text)["max_abs_I3"] <= 1e-8
    code, text = run_cli("interference", "--algebra", "C(3)", "--order", "2", "--search", "--configs", "50", "--format", "json")
    assert code == 0 and json.loads(text)["max_abs_I2"] >= 0.1
    assert run_cli("interference", "--algebra", "C(3)", "--order", "3", "--search")[0] == 2
    assert run_cli("interference", "--algebra", "spin(3)", "--order", "3")[0] == 2


def test_module_entry_point():
    env = dict(os.environ, QLOGIC_SEED="3")
    proc = subprocess.run(
        [sys.executable, "-m", "qlogic", "check", "--algebra", "O(4)"], capture_output=True, text=True, env=env
    )
    assert proc.returncode == 2
    assert "octonionic factor only k=3" in proc.stderr
    assert proc.stdout == ""
