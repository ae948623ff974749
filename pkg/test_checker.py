import itertools

import numpy as np
import pytest

from core import checker, equations
from core.errors import UnknownName
from core.model_factory import builtin
from core.term import parse, parse_equation


def brute_force_witness(m, text):
    """Lexicographically least violating assignment, by plain iteration."""
    lhs, rel, rhs = parse_equation(text)
    names = checker.equation_variables(lhs, rhs)
    for values in itertools.product(m.elements, repeat=len(names)):
        assignment = dict(zip(names, values))
        left = m.element(checker.evaluate(m, lhs, assignment))
        right = m.element(checker.evaluate(m, rhs, assignment))
        if (left != right) if rel == "=" else (m.meet(left, right) != left):
            return assignment
    return None


@pytest.mark.parametrize("name", ["o6", "mo2", "woml20", "boolean_3"])
def test_ortholattice_law_holds(name):
    assert checker.check_law(builtin(name), "ortholattice").holds


@pytest.mark.parametrize("name, holds", [
    ("o6", False), ("mo2", True), ("boolean_3", True), ("woml20", False), ("free2", True),
])
def test_oml_law(name, holds):
    assert checker.check_law(builtin(name), "oml").holds is holds


def test_woml_law(o6, woml20, mo2):
    assert checker.check_law(woml20, "woml").holds
    assert checker.check_law(mo2, "woml").holds
    # o6 is weakly orthomodular without being orthomodular
    result = checker.check_law(o6, "woml")
    assert result.holds and result.witness is None
    assert result.assignments_checked == 36


def test_unknown_law(o6):
    with pytest.raises(UnknownName):
        checker.check_law(o6, "modular")


@pytest.mark.parametrize("name, text", [
    ("mo2", "DISTRIB"),
    ("o6", "OML"),
    ("woml20", "EQ4"),
    ("o6", "a ^ (b v c) <= (a ^ b) v c"),
])
def test_witness_is_lexicographically_least(name, text):
    m = builtin(name)
    eq = equations.resolve(text)
    result = checker.check_equation(m, eq.lhs, eq.rel, eq.rhs, chunk_size=5)
    assert not result.holds
    assert result.witness == brute_force_witness(m, eq.text)
    assert checker.verify_witness(m, eq.lhs, eq.rel, eq.rhs, result)


def test_worker_count_does_not_change_result(woml20):
    eq = equations.get("EQ4")
    results = [checker.check_equation(woml20, eq.lhs, eq.rel, eq.rhs, workers=w, chunk_size=64)
               for w in (1, 2, 4)]
    assert results[0] == results[1] == results[2]


def test_assignments_checked(boolean4, o6):
    eq = equations.get("DISTRIB")
    lhs, rel, rhs = eq.lhs, eq.rel, eq.rhs
    assert checker.check_equation(boolean4, lhs, rel, rhs).assignments_checked == 16 ** 3
    result = checker.check_equation(o6, lhs, rel, rhs)
    names = ["a", "b", "c"]
    rank = sum(o6.element(result.witness[v]) * 6 ** (2 - j) for j, v in enumerate(names))
    assert result.assignments_checked == rank + 1


def test_constant_equation(o6):
    assert checker.check_text(o6, "0 <= 1").assignments_checked == 1
    assert not checker.check_text(o6, "1 = 0").holds


def test_random_mode_is_seeded(free2, boolean4):
    eq = equations.get("DISTRIB")
    first = checker.check_equation(free2, eq.lhs, eq.rel, eq.rhs, mode="random", trials=500, seed=7)
    second = checker.check_equation(free2, eq.lhs, eq.rel, eq.rhs, mode="random", trials=500, seed=7)
    assert first == second
    assert not first.holds
    held = checker.check_equation(boolean4, eq.lhs, eq.rel, eq.rhs, mode="random", trials=300, seed=7)
    assert held.holds and held.assignments_checked == 300


def test_bad_mode_and_relation(o6):
    with pytest.raises(ValueError):
        checker.check_equation(o6, parse("a"), "=", parse("a"), mode="sometimes")
    with pytest.raises(ValueError):
        checker.check_equation(o6, parse("a"), ">=", parse("a"))


def test_woml20_identities(woml20):
    assert checker.check_text(woml20, "EQ6").holds
    assert checker.check_text(woml20, "EQ7").holds
    assert not checker.check_text(woml20, "EQ4").holds


def test_free2_lemmas(free2):
    assert checker.check_text(free2, "TRANS").holds
    assert checker.check_text(free2, "EQ3").holds
    assert checker.check_text(free2, "XL").holds
    for i in range(6):
        assert checker.check_text(free2, f"COMPL_{i}").holds


def test_iff_characterization(free2, boolean4, o6, mo2):
    for i in range(1, 6):
        assert checker.iff_characterization(free2, i).holds
    assert checker.iff_characterization(boolean4, 0).holds
    assert not checker.iff_characterization(free2, 0).holds

    result = checker.iff_characterization(o6, 5)
    assert result.witness == {"a": "p", "b": "q'"}
    result = checker.iff_characterization(mo2, 0)
    assert result.witness == {"a": "x", "b": "y"}


def test_commutes(mo2, o6):
    assert checker.commutes(mo2, "x", "x'")
    assert checker.commutes(mo2, "x", "0")
    assert not checker.commutes(mo2, "x", "y")
    matrix = checker.commuting_pairs(o6)
    assert matrix.diagonal().all()
    for p in range(o6.n):
        for q in range(o6.n):
            assert matrix[p, q] == checker.commutes(o6, p, q)


@pytest.mark.parametrize("name", ["o6", "mo2", "boolean_3", "free2"])
def test_foulis_holland(name):
    assert checker.foulis_holland_check(builtin(name)).holds


def test_theta_on_o6(o6):
    report = checker.theta_relation(o6, 5)
    assert report.equivalence
    off_diagonal = {(p, q) for p, q in report.pairs(o6) if p != q}
    assert off_diagonal == {("p", "q'"), ("q'", "p"), ("q", "p'"), ("p'", "q")}
    assert not report.identity


def test_theta_is_identity_in_free2(free2, boolean4):
    for i in range(1, 6):
        assert checker.theta_relation(free2, i).identity
    assert checker.theta_relation(boolean4, 0).identity


def test_theta_relation_matches_matrix(woml20):
    for i in range(6):
        report = checker.theta_relation(woml20, i)
        assert (report.relation == checker.theta_matrix(woml20, i)).all()
        assert report.congruence == (report.equivalence and report.compatible)
        if not report.congruence:
            assert report.counterexamples


def test_pair_table(o6):
    table = checker.pair_table(o6, parse("a ^ b"))
    assert (table == o6.meet_table).all()
    constant = checker.pair_table(o6, parse("1"))
    assert (constant == o6.top).all()


def test_woml_profile(woml20, o6):
    ok, errors = checker.validate_profile(woml20)
    assert ok, errors
    ok, errors = checker.validate_profile(o6)
    assert not ok
    assert {e["id"] for e in errors} == {"ortholattice"}
    with pytest.raises(UnknownName):
        checker.profile_gates(woml20, "oml")


@pytest.mark.slow
@pytest.mark.parametrize("alias", ["EQ1", "EQ2"])
def test_four_variable_identities_in_free2(free2, alias):
    assert checker.check_text(free2, alias, workers=4).holds


@pytest.mark.slow
def test_free2_random_oml(free2):
    result = checker.check_text(free2, "OML", mode="random", trials=100000, seed=1)
    assert result.holds and isinstance(result.assignments_checked, (int, np.integer))
