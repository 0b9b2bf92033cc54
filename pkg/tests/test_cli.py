import json

import pytest

from hyperspecial.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_basis_listing(capsys):
    code, out = run(capsys, "basis", "--n", "1", "--max-grade", "6")
    assert code == 0
    assert out.out.strip().endswith("14 elements, pass=True")


def test_basis_usage_error(capsys):
    code, out = run(capsys, "basis", "--n", "0")
    assert code == 2 and "error" in out.err


def test_basis_json_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "basis", "--n", "2", "--max-grade", "4", "--json", str(a))[0] == 0
    assert run(capsys, "basis", "--n", "2", "--max-grade", "4", "--json", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_weyl_dim(capsys):
    code, out = run(capsys, "weyl", "dim", "--n", "2", "--lambda", "1,1", "--points", "1,3")
    assert code == 0 and out.out.strip() == "50 = 50"


def test_weyl_char(capsys):
    code, out = run(capsys, "weyl", "char", "--n", "1", "--lambda", "1")
    data = json.loads(out.out)
    assert code == 0 and data["total"] == 3
    grade0 = sorted(r["weight"] for r in data["character"] if r["grade"] == 0)
    assert grade0 == [[-1], [1]]


def test_weyl_verify(capsys):
    code, out = run(capsys, "weyl", "verify", "--n", "1", "--lambda", "3", "--seed", "4")
    data = json.loads(out.out)
    assert code == 0 and data["pass"]
    checks = {r["check"] for r in data["reports"]}
    assert {"p_series", "garland", "straightening", "demazure", "character_independence"} <= checks


def test_weyl_nongeneric_points(capsys):
    code, _ = run(capsys, "weyl", "dim", "--n", "1", "--lambda", "2", "--points", "1,-1")
    assert code == 2


def test_weyl_bad_lambda(capsys):
    assert run(capsys, "weyl", "dim", "--n", "2", "--lambda", "1")[0] == 2
    assert run(capsys, "weyl", "dim", "--n", "1", "--lambda", "x")[0] == 2


def test_appendix(capsys):
    code, out = run(capsys, "appendix", "--weight", "2", "--lmax", "4")
    assert code == 0 and json.loads(out.out)["pass"]
    code, out = run(capsys, "appendix", "--weight", "0")
    assert code == 0


def test_appendix_enumerate(capsys):
    code, out = run(capsys, "appendix", "enumerate", "--l", "1", "--m", "2")
    assert code == 0 and json.loads(out.out)["count"] == 2
    assert run(capsys, "appendix", "enumerate", "--l", "1/2", "--m", "1")[0] == 2


def test_surjectivity(capsys):
    code, out = run(capsys, "surjectivity", "--n", "1", "--points", "1,2", "--order", "2")
    assert code == 0 and json.loads(out.out)["pass"]
    code, out = run(capsys, "surjectivity", "--n", "1", "--points", "1,-1", "--max-grade", "12")
    assert code == 1


def test_no_command(capsys):
    assert run(capsys)[0] == 2
