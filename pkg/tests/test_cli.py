import csv
import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from navier_ide.cli import main
from navier_ide.problem import example1, example2
from navier_ide.quadrature import GridSpec
from navier_ide.solver import ExactError, Successive, solve

TABLE_GRIDS = "50,100,150,200,300,400,500,800,1000"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def field(out, key):
    for line in out.splitlines():
        if line.startswith(key):
            return line.split()[-1]
    raise KeyError(key)


def test_solve_example1_exact(capsys):
    code, out, _ = run(capsys, "solve", "--example", "example1", "--n", "100", "--criterion", "exact")
    assert code == 0
    assert field(out, "iterations") == "3"
    assert field(out, "error_u") == "2.8588e-06"


def test_solve_example2(capsys):
    code, out, _ = run(capsys, "solve", "--example", "example2", "--n", "100", "--criterion", "successive", "--eps", "1e-10")
    assert code == 0
    sol = solve(example2(), GridSpec(100), Successive(1e-10))
    assert field(out, "iterations") == str(sol.iterations)
    assert "error_u" not in out


def test_solve_smallest_custom(capsys, tmp_path):
    path = tmp_path / "s.csv"
    code, _, _ = run(capsys, "solve", "--f", "sin(pi*x)", "--kernel", "0", "--n", "4", "--out", str(path))
    assert code == 0
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["x", "u", "v"] and len(rows) == 6


def test_solve_plot(capsys, tmp_path):
    path = tmp_path / "u.svg"
    assert run(capsys, "solve", "--example", "example2", "--plot", str(path))[0] == 0
    ET.parse(path)


def test_thin_shell(capsys):
    code, out, _ = run(capsys, "solve", "--example", "example1", "--n", "150", "--criterion", "exact")
    sol = solve(example1(), GridSpec(150), ExactError())
    assert field(out, "error_u") == f"{sol.error_u:.4e}"
    assert field(out, "residual") == f"{sol.residual:.4e}"
    assert field(out, "max|U|") == f"{np.max(np.abs(sol.u)):.4e}"


def test_solve_json_round_trip(capsys):
    code, out, _ = run(capsys, "solve", "--example", "example1", "--n", "100", "--json")
    doc = json.loads(out)
    sol = solve(example1(), GridSpec(100), Successive(1e-10))
    assert doc["iterations"] == sol.iterations == 7
    assert doc["error_u"] == sol.error_u
    assert doc["residual"] == sol.residual


def test_study_table1(capsys, tmp_path):
    path = tmp_path / "t1.csv"
    code, out, _ = run(capsys, "study", "--example", "example1", "--grids", TABLE_GRIDS, "--criterion", "exact", "--out", str(path))
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 10 and "order" in lines[0]
    assert [int(line.split()[2]) for line in lines[1:]] == [2, 3, 3, 3, 3, 3, 3, 4, 4]
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["N", "h2", "m", "error"] and len(rows) == 10


def test_study_table2(capsys):
    code, out, _ = run(capsys, "study", "--example", "example1", "--grids", TABLE_GRIDS)
    assert code == 0
    assert all(line.split()[2] == "7" for line in out.strip().splitlines()[1:])


def test_study_single_grid(capsys):
    code, out, _ = run(capsys, "study", "--example", "example1", "--grids", "50")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 2 and "order" not in lines[0]


def test_study_json(capsys):
    code, out, _ = run(capsys, "study", "--example", "example2", "--grids", "20,40", "--json")
    doc = json.loads(out)
    assert [r["N"] for r in doc["rows"]] == [20, 40]
    assert "residual" in doc["rows"][0]


@pytest.mark.parametrize(
    "argv, q",
    [
        (["--example", "example1", "--M", "113", "--L0", "12.2010", "--L1", "1.4714", "--L2", "2.1649"], 0.2690),
        (["--example", "example2", "--M", "1.1", "--L0", "2.0515e-4", "--L1", "0", "--L2", "2", "--M2", "0.5"], 0.0130),
    ],
)
def test_certify_paper_constants(capsys, argv, q):
    code, out, _ = run(capsys, "certify", *argv, "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["q"] == pytest.approx(q, abs=1e-4)
    assert doc["contraction_ok"] is True


def test_certify_text(capsys):
    code, out, _ = run(capsys, "certify", "--example", "example2", "--M", "1.1", "--estimate", "--samples", "2000")
    assert code == 0 and "q        =" in out


def test_certify_not_contractive(capsys):
    code, _, err = run(capsys, "certify", "--example", "example1", "--M", "1", "--L0", "0", "--L1", "0", "--L2", "100")
    assert code == 5 and "warning" in err


def test_list_examples(capsys):
    code, out, _ = run(capsys, "list-examples")
    assert code == 0 and "example1" in out and "example2" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["solve"],
        ["solve", "--example", "example1", "--f", "u", "--kernel", "0"],
        ["solve", "--example", "example2", "--criterion", "exact"],
        ["solve", "--example", "nope"],
        ["solve", "--f", "u"],
        ["study", "--example", "example1", "--grids", "10,x"],
        ["study", "--example", "example1", "--grids", "1"],
        ["certify", "--example", "example1", "--M", "113"],
        ["certify", "--example", "example1", "--M", "-1", "--estimate"],
        ["solve", "--example", "example1", "--eps", "0"],
    ],
)
def test_invalid_arguments_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["solve", "--n", "abc"])
    assert info.value.code == 2


def test_parse_error_exit_4(capsys):
    code, _, err = run(capsys, "solve", "--f", "sin(pi*x", "--kernel", "0")
    assert code == 4 and "offset" in err
    code, _, err = run(capsys, "solve", "--f", "y", "--kernel", "0")
    assert code == 4 and "'y'" in err


def test_evaluation_error_exit_4(capsys):
    assert run(capsys, "solve", "--f", "1/x", "--kernel", "0")[0] == 4


def test_nonconvergence_exit_3(capsys):
    code, _, err = run(capsys, "solve", "--f", "5000*u + 1", "--kernel", "0", "--max-iter", "5")
    assert code == 3 and "final residual" in err
    assert run(capsys, "study", "--f", "5000*u + 1", "--kernel", "0", "--grids", "10,20", "--max-iter", "5")[0] == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "navier_ide", "solve", "--example", "example1", "--n", "50", "--criterion", "exact"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "1.4305e-04" in proc.stdout
