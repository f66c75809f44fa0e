import io
import json
import subprocess
import sys

import pytest

from linklct import cli, lct
from linklct.polyring import PolynomialParseError


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--format", "json")
    return code, (json.loads(out) if out else None), err


def test_lct_det_json():
    code, rep, _ = run_json("lct-det", "--spec", "4", "4", "2")
    assert code == 0 and rep["status"] == "ok"
    assert rep["result"]["value"] == "8/1"
    assert rep["result"]["minimizing_t"] == 0
    stage = rep["result"]["stages"][0]
    assert {k: stage[k] for k in ("i", "a_i", "k_i", "q_i", "predicted")} == {
        "i": 1, "a_i": 2, "k_i": 15, "q_i": 6, "predicted": 2
    }
    assert set(rep) == {"command", "inputs", "result", "certificates", "status", "timing_ms"}
    assert len(rep["inputs"]["digest"]) == 64


def test_output_is_deterministic():
    a = run_json("lct-monomial", "--ideal", "x1^2*x2, x3^3")[1]
    b = run_json("lct-monomial", "--ideal", "x1^2*x2, x3^3")[1]
    a.pop("timing_ms"), b.pop("timing_ms")
    assert a == b
    assert a["result"]["value"] == "5/6"
    assert a["certificates"]["dual"] == ["1/2", "0/1", "1/3"]


def test_triangle_reports_documented_discrepancy():
    code, rep, _ = run_json("lct-monomial", "--ideal", "x1*x2, x2*x3, x3*x1")
    assert code == 0
    assert rep["result"]["value"] == "3/2"
    assert rep["result"]["published_value"] == "2/1"
    assert rep["result"]["discrepancy"] is True


def test_published_lookup_ignores_unused_variables():
    code, rep, _ = run_json("lct-monomial", "--ideal", "x1^2, x1*x2, x2^2", "--vars", "x1", "x2", "x3")
    assert rep["result"]["value"] == "1/1"
    assert rep["result"]["discrepancy"] is False


def test_gb_and_quotient_text():
    code, out, _ = run("gb", "--ideal", "x*y - 1, y^2 - 1", "--order", "lex")
    assert code == 0 and "basis: [y^2 - 1, x - y]" in out
    code, out, _ = run("quotient", "--ideal", "x^2, x*y", "--by", "x")
    assert code == 0 and "quotient: [y, x]" in out


def test_link_stacked_minors_and_double_link():
    code, rep, _ = run_json("link", "--spec", "3", "2", "2", "--double")
    assert code == 0
    r = rep["result"]
    assert (r["ord_X"], r["ord_Y"], r["predicted_ord_Y"], r["double_link"]) == (2, 1, 1, True)
    assert len(r["I_Y"]) == 4


def test_ord_specialized_stage():
    code, rep, _ = run_json("ord", "--spec", "4", "3", "3", "--stage", "1", "--mode", "specialized")
    assert code == 0
    st = rep["result"]["stages"][0]
    assert st["computed"] == st["predicted"] == 2
    assert st["per_seed"] == {"0": 2, "1": 2, "2": 2}
    assert rep["result"]["stages"][1]["computed"] is None


def test_ord_of_inline_ideal():
    code, rep, _ = run_json("ord", "--ideal", "x^2*t + y^3", "--block", "x", "y")
    assert code == 0 and rep["result"]["order"] == 2


def test_budget_exit_code():
    code, rep, _ = run_json("ord", "--spec", "4", "4", "2", "--stage", "1")
    assert code == cli.EXIT_RESOURCE
    assert rep["status"] == "resource-limit"
    assert rep["certificates"]["stats"]["variables"] > 14


def test_step_limit_exit_code():
    code, rep, _ = run_json("link", "--spec", "3", "2", "2", "--max-steps", "0")
    assert code == cli.EXIT_RESOURCE


@pytest.mark.parametrize(
    "argv, token",
    [
        (["gb", "--ideal", "x +* y"], "'*'"),
        (["gb", "--ideal", "x + q", "--vars", "x", "y"], "'q'"),
        (["lct-det", "--spec", "2", "2", "3"], "2 2 3"),
        (["lct-monomial", "--ideal", "x + y"], "x + y"),
    ],
)
def test_usage_errors_name_the_token(argv, token):
    code, out, err = run(*argv)
    assert code == cli.EXIT_USAGE
    assert out == ""
    assert len(err.strip().splitlines()) == 1 and token in err


def test_argparse_usage_error():
    code, _, _ = run("lct-det", "--spec", "a", "2", "2")
    assert code == cli.EXIT_USAGE
    code, _, _ = run("nonsense")
    assert code == cli.EXIT_USAGE


def test_verify_pass_and_failure(monkeypatch):
    code, rep, _ = run_json("verify", "stage-bound", "--max", "12", "--summary")
    assert code == 0 and rep["result"]["case_count"] == 364
    code, rep, _ = run_json("verify", "equal-thresholds", "--max", "30", "--summary")
    assert code == 0 and rep["result"]["all_pass"] and rep["result"]["case_count"] == 4960
    code, rep, _ = run_json("verify", "monomial")
    assert code == 0 and rep["result"]["notes"]

    def broken(max_m, workers=1):
        report = lct.VerifierReport("forced")
        report.add((1, 1, 1), 1, 2, False)
        return report

    monkeypatch.setattr(lct, "verify_stage_bound", broken)
    code, rep, _ = run_json("verify", "stage-bound")
    assert code == cli.EXIT_FAIL and rep["status"] == "failed"
    assert rep["result"]["failures"][0]["observed"] == 2


def test_verify_vanishing_notes_hypothesis():
    code, rep, _ = run_json("verify", "vanishing", "--spec", "3", "2", "2")
    assert code == 0
    assert "hypothesis-not-applicable" in rep["result"]["notes"]


def test_ideal_file(tmp_path):
    path = tmp_path / "ideal.txt"
    path.write_text("# a complete intersection\nvars: x1 x2 x3\nx1^2*x2   # first\n\nx3^3\n")
    I = cli.parse_ideal_file(str(path))
    assert I.ring.variables == ("x1", "x2", "x3") and len(I.generators) == 2
    code, rep, _ = run_json("lct-monomial", "--file", str(path))
    assert rep["result"]["value"] == "5/6"


def test_ideal_file_error_has_line_and_column(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("vars: x y\nx + y\nx ** y\n")
    with pytest.raises(PolynomialParseError) as err:
        cli.parse_ideal_file(str(path))
    assert "line 3" in str(err.value) and "column 4" in str(err.value)
    code, _, err_text = run("gb", "--file", str(path))
    assert code == cli.EXIT_USAGE and "line 3" in err_text


def test_duplicate_variables_rejected():
    code, _, err = run("gb", "--ideal", "x", "--vars", "x", "x")
    assert code == cli.EXIT_USAGE and "duplicate" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "linklct", "lct-det", "--spec", "3", "2", "2", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["value"] == "2/1"


def test_threaded_sweep_matches_serial():
    a = run_json("verify", "equal-thresholds", "--max", "8")[1]
    b = run_json("verify", "equal-thresholds", "--max", "8", "--jobs", "4")[1]
    assert a["result"] == b["result"]


def test_json_round_trips_and_stage_schema():
    code, rep, _ = run_json("lct-det", "--spec", "3", "2", "2")
    assert json.loads(json.dumps(rep)) == rep
    keys = {"i", "m_i", "n_i", "r_i", "a_i", "k_i", "q_i", "predicted", "computed"}
    assert all(keys <= set(st) for st in rep["result"]["stages"])
