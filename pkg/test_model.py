import numpy as np
import pytest

from core.errors import FormatError, NotALattice, NotOrtholattice, UnknownName
from core.model import Model, load, load_file
from core.model_factory import ModelFactory, builtin

O6 = """\
model o6
elements 0 p q q' p' 1
bottom 0
top 1
cover 0 p
cover 0 q
cover p q'
cover q p'
cover q' 1
cover p' 1
ortho 0 1
ortho p p'
ortho q q'
end
"""


def test_shipped_models_load(o6, mo2, woml20):
    assert (o6.n, mo2.n, woml20.n) == (6, 6, 20)
    assert o6.atoms == ["p", "q"]
    assert sorted(mo2.atoms) == sorted(["x", "y", "y'", "x'"])
    assert sorted(woml20.atoms) == sorted(["w", "v'", "x'"])


def test_tables(o6):
    p, q = o6.element("p"), o6.element("q")
    assert o6.name_of(o6.meet(p, q)) == "0"
    assert o6.name_of(o6.join(p, q)) == "1"
    assert o6.name_of(o6.join(p, o6.element("q'"))) == "q'"
    assert o6.name_of(o6.complement(p)) == "p'"


@pytest.mark.parametrize("name", ["o6", "mo2", "woml20", "boolean_3", "free2"])
def test_de_morgan(name):
    m = builtin(name)
    p = np.arange(m.n)[:, None]
    q = np.arange(m.n)[None, :]
    assert (m.ortho[m.meet_table[p, q]] == m.join_table[m.ortho[p], m.ortho[q]]).all()


def test_load_matches_shipped(o6):
    m = load(O6 + "# trailing comment\n")
    assert m.elements == o6.elements
    assert (m.le == o6.le).all()


@pytest.mark.parametrize("source, line", [
    ("model x\nelements a\nfrobnicate a\nend\n", 3),
    ("model x\ncover 0 1\nend\n", 2),
    ("model x\nelements 0 1\ncover 0 2\nend\n", 3),
    ("model x\nelements 0 1\ntop 0 1\nend\n", 3),
    ("model x\nelements 0 0\nend\n", 2),
    ("model x\nelements 0 1\nelements 0 1\nend\n", 3),
    ("model x\nelements 0 1\nend\ncover 0 1\n", 4),
    ("model\nelements 0 1\nend\n", 1),
])
def test_format_errors(source, line):
    with pytest.raises(FormatError) as info:
        load(source)
    assert info.value.line == line


def test_missing_end_and_keys():
    with pytest.raises(FormatError):
        load(O6.replace("end\n", ""))
    with pytest.raises(FormatError):
        load(O6.replace("top 1\n", ""))


def test_cycle_is_not_a_lattice():
    source = O6.replace("cover p' 1\n", "cover p' 1\ncover q' p\n")
    with pytest.raises(NotALattice):
        load(source)


def test_missing_join():
    source = """\
model bowtie
elements 0 p q r s 1
bottom 0
top 1
cover 0 p
cover 0 q
cover p r
cover p s
cover q r
cover q s
cover r 1
cover s 1
ortho 0 1
ortho p r
ortho q s
end
"""
    with pytest.raises(NotALattice) as info:
        load(source)
    assert info.value.pair is not None


def test_declared_bounds_must_match():
    with pytest.raises(NotALattice):
        load(O6.replace("bottom 0", "bottom p"))


def test_ortho_must_complement():
    source = O6.replace("ortho p p'\northo q q'\n", "ortho p q'\northo q p'\n")
    with pytest.raises(NotOrtholattice) as info:
        load(source)
    assert info.value.law == "p ^ p' = 0"


def test_ortho_must_be_total_function():
    with pytest.raises(NotOrtholattice) as info:
        load(O6.replace("ortho q q'\n", ""))
    assert info.value.law == "ortho is total"
    with pytest.raises(NotOrtholattice) as info:
        load(O6.replace("ortho q q'\n", "ortho q q'\northo p q\n"))
    assert info.value.law == "ortho is a function"


def test_order_must_be_antisymmetric():
    le = np.ones((2, 2), dtype=bool)
    with pytest.raises(NotALattice):
        Model("bad", ["a", "b"], le, [1, 0])


def test_boolean_models():
    m = ModelFactory.boolean(3)
    assert m.n == 8
    assert m.name_of(m.bottom) == "000" and m.name_of(m.top) == "111"
    assert sorted(m.atoms) == ["001", "010", "100"]
    with pytest.raises(UnknownName):
        builtin("boolean_6")
    with pytest.raises(UnknownName):
        builtin("boolean_0")


def test_unknown_names(o6):
    with pytest.raises(UnknownName):
        builtin("no-such-model")
    with pytest.raises(UnknownName):
        o6.element("z")


def test_load_from_path(tmp_path):
    path = tmp_path / "ring.txt"
    path.write_text(O6, encoding="utf-8")
    assert load_file(str(path)).n == 6
    assert builtin(str(path)).name == "o6"
