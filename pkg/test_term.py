import pytest
from hypothesis import given, strategies as st

from core.errors import AmbiguityError, TermSyntaxError
from core.term import (
    Complement, Equivalence, Implication, Join, Meet, One, SymDiff, SymDiffKind, Variable, Zero,
    compile_term, connective_count, expand, is_primitive, parse, parse_equation, print_term,
    variables,
)

a, b, c = Variable("a"), Variable("b"), Variable("c")

# "v", "nabla" and "delta" are reserved words
names = st.sampled_from(["a", "b", "c", "p", "q2", "x_1"])
leaves = st.one_of(names.map(Variable), st.just(Zero()), st.just(One()))


def _branches(children):
    index = st.integers(0, 5)
    return st.one_of(
        children.map(Complement),
        st.builds(Meet, children, children),
        st.builds(Join, children, children),
        st.builds(Implication, index, children, children),
        st.builds(Equivalence, index, children, children),
        st.builds(SymDiff, st.sampled_from(list(SymDiffKind)), children, children),
    )


terms = st.recursive(leaves, _branches, max_leaves=12)


def test_precedence():
    assert parse("a ^ b v c") == Join(Meet(a, b), c)
    assert parse("a v b ^ c") == Join(a, Meet(b, c))
    assert parse("a ^ b ^ c") == Meet(Meet(a, b), c)
    assert parse("a v b ->1 c") == Implication(1, Join(a, b), c)


def test_complement_spellings():
    assert parse("a'") == Complement(a)
    assert parse("-a") == Complement(a)
    assert parse("¬a") == Complement(a)
    assert parse("a''") == Complement(Complement(a))
    assert parse("-(a ^ b)") == parse("(a ^ b)'")


def test_connectives():
    assert parse("a == b") == Equivalence(5, a, b)
    assert parse("a ==0 b") == Equivalence(0, a, b)
    assert parse("a ==_3 b") == Equivalence(3, a, b)
    assert parse("a ->1 b") == Implication(1, a, b)
    assert parse("a →2 b") == Implication(2, a, b)
    assert parse("a ≡4 b") == Equivalence(4, a, b)
    assert parse("a ∧ b ∨ c") == Join(Meet(a, b), c)
    assert parse("a +lp b") == SymDiff(SymDiffKind.PLUS_LP, a, b)
    assert parse("a +l b") == SymDiff(SymDiffKind.PLUS_L, a, b)
    assert parse("a nabla b") == SymDiff(SymDiffKind.NABLA, a, b)
    assert parse("a △ b") == SymDiff(SymDiffKind.DELTA, a, b)


def test_constants():
    assert parse("0") == Zero()
    assert parse("1'") == Complement(One())
    assert parse("a ^ 0") == Meet(a, Zero())


@pytest.mark.parametrize("text", [
    "a ->6 b", "a -> b", "a 2", "a v", "a ^ ^ b", "a +x b", "a $ b", "",
    "a ==10", "a ->10", "a ==_12 b", "a ->05 b",
])
def test_syntax_errors(text):
    with pytest.raises(TermSyntaxError):
        parse(text)


def test_error_position():
    with pytest.raises(TermSyntaxError) as info:
        parse("(a")
    assert info.value.position == 2


def test_chained_connectives_are_ambiguous():
    with pytest.raises(AmbiguityError):
        parse("a ==1 b ==1 c")
    with pytest.raises(AmbiguityError):
        parse("a ->0 b ->0 c")
    assert parse("(a ->0 b) ->0 c") == Implication(0, Implication(0, a, b), c)


def test_index_out_of_range():
    with pytest.raises(ValueError):
        Implication(6, a, b)


def test_parse_equation():
    assert parse_equation("a") == (a, "=", One())
    assert parse_equation("a ^ b <= a") == (Meet(a, b), "<=", a)
    assert parse_equation("a ≤ b") == (a, "<=", b)
    assert parse_equation("a'' = a") == (Complement(Complement(a)), "=", a)
    with pytest.raises(TermSyntaxError):
        parse_equation("a = b = c")


def test_print_term():
    assert print_term(parse("a == b")) == "(a ==5 b)"
    assert print_term(parse("-(-(x ==1 y) ==1 y)")) == "((x ==1 y)' ==1 y)'"
    assert print_term(parse("a v b ^ c'")) == "(a v (b ^ c'))"


def test_variables_in_first_occurrence_order():
    assert variables(parse("(b ^ a) v b'")) == ["b", "a"]
    assert variables(parse("0 v 1")) == []


def test_connective_count():
    assert connective_count(parse("(a ^ b)'")) == 2
    assert connective_count(parse("a")) == 0


def test_expand_equivalence5():
    expanded = expand(parse("a ==5 b"))
    assert expanded == Join(Meet(a, b), Meet(Complement(a), Complement(b)))


def test_expand_symdiff_is_complement_of_equivalence():
    assert expand(parse("a delta b")) == Complement(expand(parse("a ==5 b")))
    assert expand(parse("a nabla b")) == Complement(expand(parse("a ==0 b")))
    assert expand(parse("a +l b")) == Complement(expand(parse("a ==1 b")))
    assert expand(parse("a +r b")) == Complement(expand(parse("a ==4 b")))


def test_compile_shares_subterms():
    program = compile_term(parse("(a ^ b) v (a ^ b)"))
    assert program.variables == ("a", "b")
    assert len(program) == 4


def test_compile_rejects_unbound_variable():
    with pytest.raises(ValueError):
        compile_term(parse("a ^ c"), ("a", "b"))


@given(terms)
def test_print_parse_round_trip(t):
    assert parse(print_term(t)) == t


@given(terms)
def test_print_is_idempotent(t):
    once = print_term(t)
    assert print_term(parse(once)) == once


@given(terms)
def test_expand_is_primitive(t):
    assert is_primitive(expand(t))
    assert set(variables(expand(t))) <= set(variables(t))


def test_index_digit_then_constant_needs_space():
    assert parse("a ==1 0") == Equivalence(1, a, Zero())
    assert parse("a ->1 0") == Implication(1, a, Zero())


@given(terms)
def test_expand_is_idempotent(t):
    once = expand(t)
    assert expand(once) == once


@given(terms, terms)
def test_expand_commutes_with_primitives(t, s):
    assert expand(Complement(t)) == Complement(expand(t))
    assert expand(Meet(t, s)) == Meet(expand(t), expand(s))
    assert expand(Join(t, s)) == Join(expand(t), expand(s))
