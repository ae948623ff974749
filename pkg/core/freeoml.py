"""
FreeOML - the free orthomodular lattice on two generators, realized as MO2 x 2^4.
Evaluation, Beran numbering, the implication product table, canonical terms
and the closure engine behind the equivalence parity argument.
"""
import logging
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .algebra import Algebra
from .errors import RangeError, TooManyVariables
from .term import (
    Complement, Implication, Join, Meet, One, Term, Variable, Zero,
    compile_term, print_term, variables,
)

logger = logging.getLogger("FreeOML")

# MO2 part, indexed m = 1..6; complement is m -> 7 - m.
MO2_NAMES = ("zero", "x", "y", "y_comp", "x_comp", "one")

# Boolean part, indexed v = 1..16; bits read (a^b, a^b', a'^b, a'^b') left to right.
BOOL_ORDER = (
    0b0000,
    0b1000, 0b0100, 0b0010, 0b0001,
    0b1100, 0b1010, 0b1001, 0b0110, 0b0101, 0b0011,
    0b1110, 0b1101, 0b1011, 0b0111,
    0b1111,
)
BOOL_INDEX = {bits: v for v, bits in enumerate(BOOL_ORDER, start=1)}

SIZE = 96


def mo2_meet(m: int, n: int) -> int:
    if m == n or n == 6:
        return m
    if m == 6:
        return n
    return 1


def mo2_join(m: int, n: int) -> int:
    if m == n or n == 1:
        return m
    if m == 1:
        return n
    return 6


def mo2_le(m: int, n: int) -> bool:
    return m == n or m == 1 or n == 6


@dataclass(frozen=True)
class FreeElem:
    """An element (MO2 part, Boolean part) of MO2 x 2^4."""
    m: int
    bits: int

    @property
    def beran(self) -> int:
        return 16 * (self.m - 1) + BOOL_INDEX[self.bits]

    @property
    def weight(self) -> int:
        return bin(self.bits).count("1")

    def complement(self) -> "FreeElem":
        return FreeElem(7 - self.m, self.bits ^ 0b1111)

    def meet(self, other: "FreeElem") -> "FreeElem":
        return FreeElem(mo2_meet(self.m, other.m), self.bits & other.bits)

    def join(self, other: "FreeElem") -> "FreeElem":
        return FreeElem(mo2_join(self.m, other.m), self.bits | other.bits)

    def le(self, other: "FreeElem") -> bool:
        return mo2_le(self.m, other.m) and (self.bits & ~other.bits) == 0

    def describe(self) -> str:
        return f"({MO2_NAMES[self.m - 1]}, {self.bits:04b})"

    def __str__(self):
        return f"B{self.beran}"


ZERO = FreeElem(1, 0b0000)
ONE = FreeElem(6, 0b1111)
GEN_A = FreeElem(2, 0b1100)
GEN_B = FreeElem(3, 0b1010)


def beran_index(e: FreeElem) -> int:
    return e.beran


def from_beran(n: int) -> FreeElem:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= SIZE:
        raise RangeError(f"Beran index must be in 1..{SIZE}, got {n!r}")
    n = int(n)
    return FreeElem((n - 1) // 16 + 1, BOOL_ORDER[(n - 1) % 16])


ELEMENTS: Tuple[FreeElem, ...] = tuple(from_beran(n) for n in range(1, SIZE + 1))


class FreeAlgebra(Algebra):
    @property
    def name(self) -> str:
        return "MO2 x 2^4"

    def bottom(self):
        return ZERO

    def top(self):
        return ONE

    def complement(self, x):
        return x.complement()

    def meet(self, x, y):
        return x.meet(y)

    def join(self, x, y):
        return x.join(y)


FREE = FreeAlgebra()


def evaluate(t: Term, env: Dict[str, FreeElem]) -> FreeElem:
    """Evaluate t with each variable bound through env."""
    program = compile_term(t)
    try:
        values = [env[name] for name in program.variables]
    except KeyError as e:
        raise ValueError(f"variable {e.args[0]!r} has no value") from None
    return program.run(values, FREE)


def generator_binding(t: Term) -> Dict[str, FreeElem]:
    """First variable -> a = (x, 1100), second -> b = (y, 1010)."""
    names = variables(t)
    if len(names) > 2:
        raise TooManyVariables(
            f"the free OML here has two generators; term uses {len(names)} variables: {', '.join(names)}"
        )
    return dict(zip(names, (GEN_A, GEN_B)))


def eval2(t: Term) -> FreeElem:
    return evaluate(t, generator_binding(t))


def evaluate_ab(t: Term) -> FreeElem:
    """Evaluate a term over a and b with a, b bound to the generators by name."""
    return evaluate(t, {"a": GEN_A, "b": GEN_B})


# ===== CANONICAL TERMS =====

_canonical_lock = threading.Lock()
_canonical: Optional[Dict[FreeElem, Term]] = None

# tie-break rank among candidates of equal size
_RANK = {Complement: 0, Meet: 1, Join: 2}


def _build_canonical_terms() -> Dict[FreeElem, Term]:
    best: Dict[FreeElem, Term] = {}
    by_size: List[List[Tuple[FreeElem, Term]]] = []

    level = []
    for t, e in ((Zero(), ZERO), (One(), ONE), (Variable("a"), GEN_A), (Variable("b"), GEN_B)):
        best[e] = t
        level.append((e, t))
    by_size.append(level)

    while len(best) < SIZE:
        size = len(by_size)
        if size > 32:
            raise RuntimeError("canonical enumeration did not close")
        candidates: Dict[FreeElem, Tuple[int, str, Term]] = {}

        def offer(e: FreeElem, t: Term):
            if e in best:
                return
            key = (_RANK[type(t)], print_term(t))
            current = candidates.get(e)
            if current is None or key < current[:2]:
                candidates[e] = (key[0], key[1], t)

        for e, t in by_size[size - 1]:
            offer(e.complement(), Complement(t))
        for left_size in range(size):
            right_size = size - 1 - left_size
            for e1, t1 in by_size[left_size]:
                for e2, t2 in by_size[right_size]:
                    offer(e1.meet(e2), Meet(t1, t2))
                    offer(e1.join(e2), Join(t1, t2))

        level = sorted(((e, c[2]) for e, c in candidates.items()), key=lambda p: p[0].beran)
        for e, t in level:
            best[e] = t
        by_size.append(level)

    logger.info("canonical terms built (%d levels)", len(by_size))
    return best


def canonical_term(n: int) -> Term:
    """Smallest term over a, b evaluating to Beran element n."""
    global _canonical
    e = from_beran(n)
    with _canonical_lock:
        if _canonical is None:
            _canonical = _build_canonical_terms()
        return _canonical[e]


# ===== TABLES AND CLOSURE =====

def product_table() -> List[List[int]]:
    """Entry (i, j) is the Beran index of (a ->i b) ^ (b ->j a)."""
    a, b = Variable("a"), Variable("b")
    return [
        [eval2(Meet(Implication(i, a, b), Implication(j, b, a))).beran for j in range(6)]
        for i in range(6)
    ]


def closure(seeds: Iterable[FreeElem], ops: Sequence[Term]) -> Set[FreeElem]:
    """Least superset of seeds closed under each op, read as a binary function of a, b."""
    programs = []
    for op in ops:
        extra = [name for name in variables(op) if name not in ("a", "b")]
        if extra:
            raise ValueError(f"closure ops may only use a and b, got {', '.join(extra)}")
        programs.append(compile_term(op, ("a", "b")))

    reached = set(seeds)
    frontier = set(reached)
    rounds = 0
    while frontier and programs:
        rounds += 1
        current = list(reached)
        fresh = set()
        for program in programs:
            for p in current:
                for q in current:
                    if p not in frontier and q not in frontier:
                        continue
                    r = program.run((p, q), FREE)
                    if r not in reached:
                        fresh.add(r)
        reached |= fresh
        frontier = fresh
    logger.debug("closure reached %d elements in %d rounds", len(reached), rounds)
    return reached


def parity_summary(elements: Iterable[FreeElem]) -> Dict[str, int]:
    even = odd = 0
    for e in elements:
        if e.weight % 2:
            odd += 1
        else:
            even += 1
    return {"even": even, "odd": odd}


def odd_weight_indices() -> List[int]:
    return [e.beran for e in ELEMENTS if e.weight % 2]


def quantum_family(bits: int, classical: Optional[FreeElem] = None) -> List[int]:
    """Beran indices sharing a Boolean part, minus the classical representative."""
    return [e.beran for e in ELEMENTS if e.bits == bits and e != classical]


def anchor_suite() -> List[Tuple[str, object, object]]:
    """(label, computed, expected) rows for every Beran value quoted for two variables."""
    from .term import parse

    rows: List[Tuple[str, object, object]] = []

    def expr(label, text, expected):
        rows.append((label, evaluate_ab(parse(text)).beran, expected))

    expr("constant 0", "0", 1)
    expr("constant 1", "1", 96)
    expr("variable a", "a", 22)
    expr("variable b", "b", 39)
    expr("complement a'", "a'", 75)
    expr("complement b'", "b'", 58)
    rows.append(("quantum 0's", quantum_family(0b0000, ZERO), [17, 33, 49, 65, 81]))
    rows.append(("quantum 1's", quantum_family(0b1111, ONE), [16, 32, 48, 64, 80]))
    rows.append(("quantum a", quantum_family(0b1100, GEN_A), [6, 38, 54, 70, 86]))
    rows.append(("quantum b", quantum_family(0b1010, GEN_B), [7, 23, 55, 71, 87]))
    rows.append(("quantum a'", quantum_family(0b0011, GEN_A.complement()), [11, 27, 43, 59, 91]))
    rows.append(("quantum b'", quantum_family(0b0101, GEN_B.complement()), [10, 26, 42, 74, 90]))
    for i, expected in enumerate((88, 72, 40, 24, 56, 8)):
        expr(f"equivalence {i}", f"a =={i} b", expected)
    for i, expected in enumerate((94, 78, 46, 30, 62, 14)):
        expr(f"implication {i}", f"a ->{i} b", expected)
    for op, expected in (("nabla", 9), ("+l", 25), ("+r", 41), ("+lp", 73), ("+rp", 57), ("delta", 89)):
        expr(f"symmetric difference {op}", f"a {op} b", expected)
    return rows


@lru_cache(maxsize=None)
def as_model():
    """The 96 elements as a finite Model named free2; element names are Beran indices."""
    from .model import Model

    names = [str(e.beran) for e in ELEMENTS]
    m_parts = np.array([e.m for e in ELEMENTS])
    bits = np.array([e.bits for e in ELEMENTS])
    mo2 = (m_parts[:, None] == m_parts[None, :]) | (m_parts[:, None] == 1) | (m_parts[None, :] == 6)
    boolean = (bits[:, None] & ~bits[None, :]) == 0
    ortho = [SIZE - 1 - i for i in range(SIZE)]
    return Model.from_order("free2", names, mo2 & boolean, ortho)
