import csv
import io
import json
import os
import subprocess
import sys

import pytest

from stirlingseries.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    return status, capsys.readouterr().out


def test_coeffs_text(capsys):
    status, out = run(capsys, "coeffs", "--max", "2", "--format", "text")
    assert status == 0
    assert out.splitlines() == ["a_0 = 1/2*sqrt(2)", "a_1 = -1/3", "a_2 = 1/12*sqrt(2)"]


def test_coeffs_json_single_entry(capsys):
    _, out = run(capsys, "coeffs", "--max", "0", "--format", "json")
    record = json.loads(out)
    assert record["schema_version"] == "1" and record["command"] == "coeffs"
    (entry,) = record["payload"]["coefficients"]
    assert entry == {"index": 0, "rational_part": "0", "sqrt2_part": "1/2", "value": "1/2*sqrt(2)"}


def test_coeffs_last_row(capsys):
    _, out = run(capsys, "coeffs", "--max", "20")
    assert "6232523202521089" in out.splitlines()[-1]
    assert out.splitlines()[-1].startswith("a_20 = ")


def test_coeffs_csv_quotes_fractions(capsys):
    _, out = run(capsys, "coeffs", "--max", "3", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == '"index","rational_part","sqrt2_part","value"'
    assert lines[2] == '1,"-1/3","0","-1/3"'
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[3]["rational_part"] == "-4/135" and rows[3]["sqrt2_part"] == "0"


@pytest.mark.parametrize(
    "k, line",
    [(3, "c_3 = -139/51840"), (0, "c_0 = 1"), (10, "c_10 = 6232523202521089/86504006548979712000")],
)
def test_stirling_text(capsys, k, line):
    _, out = run(capsys, "stirling", "--max", str(k))
    assert out.splitlines()[-1] == line


def _approx_json(capsys, s, order, digits="40"):
    status, out = run(capsys, "approx", "--s", s, "--order", order, "--format", "json", "--digits", digits)
    assert status == 0
    (row,) = json.loads(out)["payload"]["rows"]
    return row


def test_approx_examples(capsys):
    assert float(_approx_json(capsys, "10", "5")["rel_error"]) <= 1e-9
    assert abs(float(_approx_json(capsys, "1", "0")["rel_error"]) - 0.078) < 5e-4
    assert abs(float(_approx_json(capsys, "10", "0")["rel_error"]) - 8.3e-3) < 5e-5


def test_approx_reports_digits_and_exact_reference(capsys):
    _, out = run(capsys, "approx", "--s", "10", "--order", "0", "--format", "json", "--digits", "30")
    payload = json.loads(out)["payload"]
    assert payload["digits"] == 30
    assert payload["rows"][0]["reference"] == "3628800." + "0" * 23


def test_table_sorted_rows(capsys):
    _, out = run(capsys, "table", "--s-list", "20,10", "--orders", "1,0", "--format", "csv", "--digits", "30")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(r["order"], r["s"]) for r in rows] == [("0", "10"), ("0", "20"), ("1", "10"), ("1", "20")]


def test_json_round_trip(capsys):
    for argv in (["stirling", "--max", "4"], ["table", "--s-list", "10,5/2", "--orders", "0,2", "--digits", "30"]):
        _, out = run(capsys, *argv, "--format", "json")
        record = json.loads(out)
        assert json.dumps(record, indent=2) + "\n" == out


def test_identical_invocations_byte_identical(capsys):
    argv = ["table", "--s-list", "10,20", "--orders", "0,3", "--digits", "30", "--format", "json"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_verify_oracles_text(capsys):
    status, out = run(capsys, "verify", "--suite", "oracles", "--digits", "40")
    assert status == 0
    assert "stirling_from_bernoulli == stirling_coefficients (k<=10): EXACT MATCH" in out.splitlines()


def test_verify_limits_json(capsys):
    status, out = run(capsys, "verify", "--suite", "limits", "--digits", "30", "--format", "json")
    payload = json.loads(out)["payload"]
    assert status == 0 and payload["passed"]
    assert all("tolerance" in c and "measured" in c for c in payload["checks"])


def test_verify_failure_exit_status(capsys, monkeypatch):
    from stirlingseries import cli
    from stirlingseries.verification import Check

    monkeypatch.setattr(cli, "run_suite", lambda suite, ctx: [Check("broken", False, "0", "1")])
    status, out = run(capsys, "verify", "--suite", "limits")
    assert status == 1
    assert "broken: FAIL" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["coeffs", "--max", "-1"],
        ["coeffs", "--max", "201"],
        ["approx", "--s", "0", "--order", "1"],
        ["approx", "--s", "abc", "--order", "1"],
        ["approx", "--s", "10", "--order", "1", "--digits", "5"],
        ["table", "--s-list", ",", "--orders", "1"],
        ["coeffs"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
    assert capsys.readouterr().err


def test_env_digits(capsys, monkeypatch):
    monkeypatch.setenv("STIRLING_DIGITS", "24")
    _, out = run(capsys, "approx", "--s", "10", "--order", "0", "--format", "json")
    assert json.loads(out)["payload"]["digits"] == 24
    monkeypatch.setenv("STIRLING_DIGITS", "nope")
    with pytest.raises(SystemExit) as info:
        main(["approx", "--s", "10", "--order", "0"])
    assert info.value.code == 2


def test_module_entry_point():
    env = dict(os.environ, STIRLING_DIGITS="20")
    proc = subprocess.run(
        [sys.executable, "-m", "stirlingseries", "stirling", "--max", "1"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert proc.stdout == "c_0 = 1\nc_1 = 1/12\n"
