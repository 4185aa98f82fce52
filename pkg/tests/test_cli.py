import csv
import io
import json
import subprocess
import sys

import pytest

from repalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_dims_text_and_json(capsys):
    code, out = run(capsys, "dims", "--m", "2", "--n", "2", "--cap", "3")
    assert code == 0 and "k=3 dim gr^k = 56" in out.out
    code, out = run(capsys, "dims", "--m", "2", "--n", "2", "--format", "json")
    assert [r["dim"] for r in json.loads(out.out)] == [6, 21, 56]


def test_basis_csv(capsys):
    code, out = run(capsys, "basis", "--m", "2", "--n", "1", "--k", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out.out)))
    assert code == 0 and len(rows) == 1 + 3


def test_normal_form(capsys):
    code, out = run(capsys, "normal-form", "--word", "[x1,x2]", "--entry", "1,2", "--n", "2", "--cap", "2")
    assert code == 0
    assert "2 s(1,1;x1)*s(1,2;x2) - 2 s(1,2;x1)*s(1,1;x2)" in out.out


def test_eta_and_errors(capsys):
    code, out = run(capsys, "eta", "--aut", "K12", "--n", "2")
    assert code == 0 and "s(1,2;x1)*s(2,1;x2)" in out.out
    code, out = run(capsys, "eta", "--aut", "U", "--n", "2")
    assert code == 2 and "not in D(1)" in out.err


@pytest.mark.parametrize("argv", [
    ["dims", "--cap", "9"],
    ["normal-form", "--word", "x7", "--n", "2"],
    ["theta", "--aut", "Z", "--n", "2"],
    ["dims", "--m", "1"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2 and out.err.startswith("repalg: error")


def test_theta_json_reproducible(capsys):
    _, a = run(capsys, "theta", "--aut", "U S", "--n", "2", "--format", "json")
    _, b = run(capsys, "theta", "--aut", "U S", "--n", "2", "--format", "json")
    assert a.out == b.out
    doc = json.loads(a.out)
    assert doc["aut"] == "U S"


def test_theta_abelian(capsys):
    code, out = run(capsys, "theta", "--aut", "S", "--n", "2", "--target", "abelian", "--format", "json")
    doc = json.loads(out.out)
    assert code == 0 and doc["theta_H"]["s(1,1;xb1)"] == {"u(12,21;1,1)": "-1", "v(11;1,1)": "-1"}


def test_abelian_dims(capsys):
    code, out = run(capsys, "abelian-dims", "--m", "3", "--n", "2", "--format", "json")
    doc = json.loads(out.out)
    assert code == 0 and doc["dim_gr2"] == doc["formula"] == 128


def test_verify_suite(capsys):
    code, out = run(capsys, "verify", "--suite", "6,13")
    assert code == 0 and "2/2 criteria passed" in out.out
    code, out = run(capsys, "verify", "--suite", "6", "--format", "json")
    assert json.loads(out.out)[0]["status"] == "pass"
    code, out = run(capsys, "verify", "--suite", "nonsense")
    assert code == 2


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "repalg.cli", "dims", "--m", "2", "--n", "1", "--cap", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "dim gr^k = 3" in res.stdout
