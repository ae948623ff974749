import io
import json

import pytest

from core.acceptance import load_table
from core.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue().splitlines()


def records(lines, key):
    return [line.split("\t", 1)[1] for line in lines if line.split("\t", 1)[0] == key]


def test_beran():
    code, lines = run("beran", "-(-(x ==1 y) ==1 y)")
    assert code == 0
    assert "beran\t22  a" in lines
    assert run("beran", "1")[1][1] == "beran\t96  1"
    assert records(run("beran", "a == b")[1], "beran")[0].startswith("8  ")
    assert lines[0] == "command\tberan -(-(x ==1 y) ==1 y)"
    assert lines[-1].startswith("time\t")


@pytest.mark.parametrize("expr", ["a ^ ^", "a ^ b ^ c", "a ==1 b ==1 c"])
def test_beran_errors(expr):
    code, lines = run("beran", expr)
    assert code == 2
    assert records(lines, "error")


def test_usage_errors():
    assert run()[0] == 2
    assert run("check")[0] == 2


def test_table(tmp_path):
    code, lines = run("table")
    assert code == 0
    assert len(records(lines, "entry")) == 36
    assert "entry\t0 0 88" in lines
    assert records(lines, "verdict") == ["match"]

    tampered = {"rows": load_table()}
    tampered["rows"][2][3] = 41
    path = tmp_path / "table.json"
    path.write_text(json.dumps(tampered), encoding="utf-8")
    code, lines = run("table", "--expected", str(path))
    assert code == 1
    assert records(lines, "diff") == ["2 3 computed=40 expected=41"]


def test_check_equation():
    code, lines = run("check", "o6", "--eq", "OML")
    assert code == 1
    assert records(lines, "status") == ["fails"]
    assert records(lines, "verified") == ["yes"]
    assert run("check", "mo2", "--eq", "OML")[0] == 0
    assert run("check", "boolean_3", "--eq", "a ^ (b v c) = (a ^ b) v (a ^ c)")[0] == 0


def test_check_unknown_model():
    code, lines = run("check", "no-such-model", "--eq", "OML")
    assert code == 2


def test_exhaustive_guard(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"checker": {"exhaustive_limit": 100}}), encoding="utf-8")
    code, lines = run("--config", str(config), "check", "free2", "--eq", "TRANS")
    assert code == 2
    assert "exhaustive limit" in records(lines, "error")[0]
    code, _ = run("--config", str(config), "check", "free2", "--eq", "TRANS",
                  "--mode", "random", "--trials", "200")
    assert code == 0


def test_check_relations():
    code, lines = run("check", "o6", "--iff", "5")
    assert code == 1
    assert records(lines, "witness") == ["a=p b=q'"]

    code, lines = run("check", "mo2", "--commutes", "x", "y")
    assert code == 1
    assert records(lines, "commutes") == ["x y\tno"]

    code, lines = run("check", "o6", "--theta", "5")
    assert records(lines, "reflexive") == ["yes"]
    assert set(records(lines, "pairs")[0].split()) == {"p,q'", "q',p", "q,p'", "p',q"}

    code, lines = run("check", "mo2")
    assert code == 0
    assert "commutes_with\tx\t0 x x' 1" in lines


def test_check_law():
    assert run("check", "woml20", "--law", "woml")[0] == 0
    assert run("check", "woml20", "--law", "oml")[0] == 1
    assert run("check", "free2", "--law", "oml")[0] == 0
    assert run("check", "mo2", "--iff", "0")[0] == 1
    code, lines = run("check", "woml20", "--eq", "EQ4")
    assert code == 1 and records(lines, "witness")
    assert run("check", "free2", "--foulis-holland")[0] == 0


def test_closure():
    code, lines = run("closure", "--preset", "equiv")
    assert code == 0
    assert records(lines, "odd") == ["0"]

    code, lines = run("closure", "--preset", "meetjoin", "--seeds", "a,b,a',b'")
    assert records(lines, "reached") == ["96"]

    code, lines = run("closure", "--seeds", "B22,B39", "--op", "a ^ b")
    assert records(lines, "seeds") == ["22 39"]
    assert records(lines, "elements") == ["2 22 39"]

    code, lines = run("closure", "--preset", "ortho")
    assert records(lines, "reached") == ["96"]

    code, lines = run("closure", "--seeds", "a")
    assert records(lines, "ops") == ["-"]
    assert records(lines, "elements") == ["22"]


def test_validate():
    code, lines = run("validate", "woml20", "--profile", "woml")
    assert code == 0
    assert records(lines, "profile") == ["woml\tok"]
    assert len(records(lines, "gate")) == 5

    code, lines = run("validate", "o6", "--profile", "woml")
    assert code == 1
    assert records(lines, "law_oml") == ["fails"]


def test_hilbert():
    code, lines = run("hilbert", "--eq", "DISTRIB", "--dim", "2", "--trials", "300")
    assert code == 1
    code, lines = run("hilbert", "--law", "oml", "--dim", "3", "--trials", "50")
    assert code == 0
    assert records(lines, "dim") == ["3"]


def test_seeded_runs_are_reproducible():
    argv = ("check", "free2", "--eq", "DISTRIB", "--mode", "random", "--seed", "3")
    first, second = run(*argv), run(*argv)
    assert first[0] == second[0] == 1
    assert first[1][:-1] == second[1][:-1]


@pytest.mark.slow
def test_accept_quick():
    code, lines = run("accept", "--quick")
    assert code == 0, [line for line in lines if "FAIL" in line]
    assert records(lines, "summary") == ["10/10 criteria pass"]
    assert {e.split("\t")[0] for e in records(lines, "erratum")} >= {
        "equiv5-formula", "delta-index", "classical-complement-order"}


@pytest.mark.slow
def test_accept_is_reproducible():
    first, second = run("accept", "--quick", "--seed", "11"), run("accept", "--quick", "--seed", "11")
    assert first[0] == second[0]
    assert first[1][:-1] == second[1][:-1]
