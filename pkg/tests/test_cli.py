import io
import subprocess
import sys

import pytest

from presburger_witness.cli import main

NU = ("exists x0, x1. x0 + x1 = x & !R(x0, x1) & R(x0, x1 + 1) "
      "& !R(x0 + 1, x1) & !R(x0 + 1, x1 + 1)")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def evens_spec(tmp_path):
    p = tmp_path / "evens.rel"
    p.write_text("relation evens dim 1\nlinear base (0) periods (2)\n")
    return str(p)


def test_check_definable_r1():
    code, text = run("check-definable", "--builtin", "odd_le_square",
                     "--max-t", "32", "--coord-bound", "2000", "--max-s", "2")
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("# config command=check-definable builtin=odd_le_square")
    assert "coord_bound=2000" in lines[0]
    assert lines[2].startswith("verdict=NOT-DEFINABLE (property b, K=1)")
    assert lines[4] == "  s=1 K=1 t=0:(0,0) t=8:(81,8) t=16:(289,16) t=32:(1089,32)"


def test_check_definable_semilinear_spec(evens_spec):
    code, text = run("check-definable", "--spec", evens_spec)
    assert code == 1
    assert "verdict=DEFINABLE" in text


def test_check_definable_unknown():
    code, text = run("check-definable", "--builtin", "full", "--dim", "2", "--max-k", "1",
                     "--max-s", "1", "--coord-bound", "30", "--max-section", "2")
    assert code == 3
    assert "verdict=UNKNOWN [max_k=1" in text


def test_witness_r0():
    code, text = run("witness", "--builtin", "squares_times_N", "--window", "400", "--count", "6")
    assert code == 0
    assert "branch=SectionRecursion final=Base" in text
    assert "values=0,1,4,9,16,25\n" in text
    assert "verdict=NotPeriodic B=400" in text


def test_witness_family():
    code, text = run("witness", "--builtin", "prime_divides", "--family", "--count", "3", "--window", "400")
    assert code == 0
    assert "values=2,6,30\n" in text


def test_witness_semilinear(evens_spec):
    code, text = run("witness", "--spec", evens_spec)
    assert code == 1 and "no witness" in text


def test_cube_map_csv():
    code, text = run("cube-map", "--builtin", "odd_le_square", "--s", "1", "--k", "1", "--extent", "12x4")
    assert code == 0
    rows = text.splitlines()
    assert rows[0] == "x0,x1,in_R,cube_code,s_shiftable"
    assert len(rows) == 1 + 12 * 4
    assert "9,2,0,2,0" in rows
    assert all(len(r.split(",")) == 5 for r in rows)


def test_cube_map_clamps_to_bound():
    code, text = run("cube-map", "--builtin", "odd_le_square", "--bound", "10", "--extent", "50x50")
    assert code == 0
    assert len(text.splitlines()) == 1 + 9 * 9


def test_eval_formula():
    code, text = run("eval", "--builtin", "odd_le_square", "--qbound", "200",
                     "--formula", NU, "--assign", "x=11")
    assert code == 0 and text.splitlines()[-1] == "true Q=200"
    code, text = run("eval", "--builtin", "odd_le_square", "--qbound", "200",
                     "--formula", NU, "--assign", "x=5")
    assert code == 1 and text.splitlines()[-1] == "false Q=200"


def test_eval_schema():
    code, _ = run("eval", "--builtin", "odd_le_square", "--schema", "beta",
                  "--assign", "x0=0,x1=0,y0=0,y1=2,k=1")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["eval", "--formula", "x = "],
    ["eval", "--formula", "x = 0"],
    ["eval", "--formula", "R(x) = 0"],
    ["eval", "--formula", "x = 0", "--assign", "x"],
    ["check-definable"],
    ["check-definable", "--builtin", "nope"],
    ["check-definable", "--builtin", "full", "--spec", "x"],
    ["cube-map", "--builtin", "prime_divides", "--extent", "3by4"],
    ["frobnicate"],
])
def test_usage_errors(argv, capsys):
    assert main(argv, out=io.StringIO()) == 2


def test_determinism_in_process():
    argv = ["check-definable", "--builtin", "squares_times_N", "--coord-bound", "500"]
    assert run(*argv) == run(*argv)


def test_module_entry_point():
    args = [sys.executable, "-m", "presburger_witness", "witness", "--builtin", "prime_divides",
            "--family", "--count", "3", "--window", "200"]
    first = subprocess.run(args, capture_output=True, check=False)
    second = subprocess.run(args, capture_output=True, check=False)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    assert b"values=2,6,30\n" in first.stdout
