import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from qsympeaks.cli import main
from qsympeaks.linalg import ExactMatrix, subset_order
from qsympeaks.ppartitions import EXAMPLE_POSET, gamma_q
from qsympeaks.theorems import reference_B4

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_count(capsys):
    assert run(capsys, "count", "--p", "1", "--n", "7") == (0, "13\n")
    code, out = run(capsys, "count", "--p", "1", "--n", "4", "--list")
    assert out.splitlines() == ["3", "[]", "[2]", "[3]"]


def test_matrix_csv_is_reference_B4(capsys):
    code, out = run(capsys, "matrix", "--n", "4", "--q", "symbolic")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0][1:] == ["{}", "{1}", "{2}", "{2,1}", "{3}", "{3,1}", "{3,2}", "{3,2,1}"]
    labels = subset_order(4)
    assert out == ExactMatrix(labels, labels, reference_B4()).to_csv()


def test_rank(capsys):
    code, out = run(capsys, "rank", "--n", "9", "--p", "4", "--format", "json")
    doc = json.loads(out)
    assert doc == {"n": 9, "p": 4, "rank": 228, "kernel_dimension": 28, "extended_peak_sets": 228}
    code, out = run(capsys, "rank", "--n", "5", "--q", "rational:1/2")
    assert "rank: 16" in out


def test_expand_json(capsys, tmp_path):
    code, out = run(capsys, "expand", "--basis", "eta", "--n", "2", "--set", "1")
    doc = json.loads(out)
    assert doc["terms"] == [{"composition": [2], "coeff": [[1, 1], [1, 1]]}]
    target = tmp_path / "u.json"
    code, out = run(capsys, "expand", "--basis", "U", "--composition", "1,2", "--set", "1",
                    "--q", "rho:2", "--vars", "2", "--out", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert "realization" in doc and doc["degree"] == 3


def test_oracle_gamma_fixture(capsys):
    code, out = run(capsys, "oracle", "gamma", "--poset", str(DATA / "example_poset.json"), "--vars", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc == json.loads(json.dumps(gamma_q(EXAMPLE_POSET, 2).to_json()))


def test_verify_exit_codes(capsys):
    code, out = run(capsys, "verify", "--suite", "binom")
    assert code == 0 and out.rstrip().endswith("ALL PASSED")
    code, out = run(capsys, "verify", "--suite", "coproduct", "--max-n", "3", "--format", "json")
    assert code == 0 and json.loads(out)["passed"] is True


@pytest.mark.parametrize("argv", [
    ["rank", "--n", "3", "--q", "bogus"],
    ["rank", "--n", "0", "--p", "1"],
    ["count", "--n", "3", "--p", "0"],
    ["expand", "--basis", "L", "--set", "1"],
    ["expand", "--basis", "L", "--n", "3", "--set", "5"],
    ["oracle", "gamma", "--poset", "/nonexistent.json", "--vars", "1"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert capsys.readouterr().err


def test_output_is_byte_identical():
    argv = [sys.executable, "-m", "qsympeaks", "expand", "--basis", "L", "--n", "4", "--set", "1,3", "--q", "rho:3"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first


def test_verify_all_default_bounds(capsys):
    code, out = run(capsys, "verify", "--suite", "all", "--max-n", "6", "--max-p", "3")
    assert code == 0, out
    assert out.count("[PASS]") == 7
