"""
Hilbert - Subspaces of Q^n with exact rational arithmetic.

A Subspace stores the reduced row-echelon form of a spanning set, so two
subspaces are equal exactly when their stored rows are. Orthocomplement is
taken with respect to the standard dot product; meet is computed through
orthocomplements, (U' v V')' = U ^ V.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import Algebra
from .checker import FAILS, HOLDS, RELATIONS, CheckResult, equation_variables
from .errors import DimensionMismatch, UnknownName
from . import equations
from .term import compile_term

logger = logging.getLogger("Hilbert")

Row = Tuple[Fraction, ...]


def swap_row(rows: List[List[Fraction]], i: int, j: int):
    rows[i], rows[j] = rows[j], rows[i]


def scale_row(rows: List[List[Fraction]], i: int, s: Fraction):
    rows[i] = [s * x for x in rows[i]]


def add_scaled_row(rows: List[List[Fraction]], i: int, j: int, s: Fraction):
    rows[i] = [x + s * y for x, y in zip(rows[i], rows[j])]


def get_reduced(vectors: Iterable[Sequence], n: int) -> Tuple[Row, ...]:
    """Reduced row-echelon form with zero rows removed."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    for v in rows:
        if len(v) != n:
            raise DimensionMismatch(f"vector of length {len(v)} in Q^{n}")
    pivot_row = 0
    for col in range(n):
        for i in range(pivot_row, len(rows)):
            if rows[i][col] != 0:
                if i != pivot_row:
                    swap_row(rows, pivot_row, i)
                break
        else:
            continue
        scale_row(rows, pivot_row, 1 / rows[pivot_row][col])
        for k in range(len(rows)):
            if k != pivot_row and rows[k][col] != 0:
                add_scaled_row(rows, k, pivot_row, -rows[k][col])
        pivot_row += 1
    return tuple(tuple(r) for r in rows[:pivot_row])


@dataclass(frozen=True)
class Subspace:
    n: int
    basis: Tuple[Row, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> List[int]:
        return [next(j for j, x in enumerate(row) if x != 0) for row in self.basis]

    def __str__(self):
        rows = ", ".join("(" + " ".join(str(x) for x in row) + ")" for row in self.basis)
        return f"span[{rows}]" if rows else f"zero({self.n})"


def from_vectors(n: int, vectors: Iterable[Sequence]) -> Subspace:
    if n < 1:
        raise DimensionMismatch(f"ambient dimension must be >= 1, got {n}")
    return Subspace(n, get_reduced(vectors, n))


def zero(n: int) -> Subspace:
    return from_vectors(n, [])


def full(n: int) -> Subspace:
    return from_vectors(n, [[int(i == j) for j in range(n)] for i in range(n)])


def _same_space(u: Subspace, v: Subspace):
    if u.n != v.n:
        raise DimensionMismatch(f"subspaces of Q^{u.n} and Q^{v.n}")


@lru_cache(maxsize=1 << 16)
def ortho(u: Subspace) -> Subspace:
    """Null space of the basis matrix."""
    pivots = u.pivots
    vectors = []
    for free in (j for j in range(u.n) if j not in pivots):
        v = [Fraction(0)] * u.n
        v[free] = Fraction(1)
        for row, p in zip(u.basis, pivots):
            v[p] = -row[free]
        vectors.append(v)
    return from_vectors(u.n, vectors)


@lru_cache(maxsize=1 << 16)
def join(u: Subspace, v: Subspace) -> Subspace:
    _same_space(u, v)
    return from_vectors(u.n, u.basis + v.basis)


@lru_cache(maxsize=1 << 16)
def meet(u: Subspace, v: Subspace) -> Subspace:
    _same_space(u, v)
    return ortho(join(ortho(u), ortho(v)))


def le(u: Subspace, v: Subspace) -> bool:
    return join(u, v) == v


class HilbertAlgebra(Algebra):
    def __init__(self, n: int):
        self.n = n

    @property
    def name(self) -> str:
        return f"C(Q^{self.n})"

    def bottom(self):
        return zero(self.n)

    def top(self):
        return full(self.n)

    def complement(self, x):
        return ortho(x)

    def meet(self, x, y):
        return meet(x, y)

    def join(self, x, y):
        return join(x, y)


def random_subspace(n: int, seed=None, entry_range: int = 3) -> Subspace:
    """Row space of a random integer matrix, entries in [-entry_range, entry_range],
    with a random row count in [0, n]. `seed` may be an int, SeedSequence or Generator."""
    if n < 1:
        raise DimensionMismatch(f"ambient dimension must be >= 1, got {n}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    rows = int(rng.integers(0, n + 1))
    matrix = rng.integers(-entry_range, entry_range + 1, size=(rows, n))
    return from_vectors(n, matrix.tolist())


def _run_trials(trials: int, seed: int, workers: int, trial) -> Optional[Tuple[int, object]]:
    """First (index, detail) for which trial(rng) reports a violation, in trial order."""
    children = np.random.SeedSequence(seed).spawn(trials)

    def one(index: int):
        detail = trial(np.random.default_rng(children[index]))
        return None if detail is None else (index, detail)

    if workers <= 1:
        for index in range(trials):
            hit = one(index)
            if hit is not None:
                return hit
        return None
    executor = ThreadPoolExecutor(max_workers=workers)
    try:
        for hit in executor.map(one, range(trials)):
            if hit is not None:
                return hit
    finally:
        executor.shutdown(wait=True, cancel_futures=True)
    return None


def check_equation_random(n: int, lhs, rel: str, rhs, trials: int = 1000, seed: int = 0,
                          entry_range: int = 3, workers: int = 1, law: str = "") -> CheckResult:
    """Evaluate lhs rel rhs on random subspace assignments; trial i draws from the i-th
    child of SeedSequence(seed)."""
    if rel not in RELATIONS:
        raise ValueError(f"relation must be one of {RELATIONS}, got {rel!r}")
    names = equation_variables(lhs, rhs)
    lhs_prog = compile_term(lhs, names)
    rhs_prog = compile_term(rhs, names)
    algebra = HilbertAlgebra(n)

    def trial(rng):
        env = [random_subspace(n, rng, entry_range) for _ in names]
        left = lhs_prog.run(env, algebra)
        right = rhs_prog.run(env, algebra)
        ok = left == right if rel == "=" else le(left, right)
        return None if ok else (env, left, right)

    hit = _run_trials(trials, seed, workers, trial)
    if hit is None:
        logger.info("%s holds on %d random assignments in Q^%d", law or "equation", trials, n)
        return CheckResult(HOLDS, None, trials, None, law)
    index, (env, left, right) = hit
    witness = {name: str(u) for name, u in zip(names, env)}
    return CheckResult(FAILS, witness, index + 1, {"lhs": str(left), "rhs": str(right)}, law)


def check_text_random(n: int, text: str, **kwargs) -> CheckResult:
    eq = equations.resolve(text)
    return check_equation_random(n, eq.lhs, eq.rel, eq.rhs, law=eq.label, **kwargs)


HILBERT_LAWS = ("ortholattice", "oml")


def check_law_random(n: int, law: str, trials: int = 1000, seed: int = 0,
                     entry_range: int = 3, workers: int = 1) -> CheckResult:
    """
    ortholattice: involution, U ^ U' = 0, U v U' = 1, De Morgan on random pairs.
    oml: V = U v (U' ^ V) for U <= V, with V drawn as U v W.
    """
    if law not in HILBERT_LAWS:
        raise UnknownName(f"unknown law {law!r}; expected one of {', '.join(HILBERT_LAWS)}")
    bottom, top = zero(n), full(n)

    def trial(rng):
        u = random_subspace(n, rng, entry_range)
        w = random_subspace(n, rng, entry_range)
        if law == "oml":
            v = join(u, w)
            return None if join(u, meet(ortho(u), v)) == v else (u, v)
        checks = (
            ortho(ortho(u)) == u,
            meet(u, ortho(u)) == bottom,
            join(u, ortho(u)) == top,
            ortho(meet(u, w)) == join(ortho(u), ortho(w)),
            meet(u, w).dim + join(u, w).dim == u.dim + w.dim,
        )
        return None if all(checks) else (u, w)

    hit = _run_trials(trials, seed, workers, trial)
    if hit is None:
        return CheckResult(HOLDS, None, trials, None, law)
    index, (u, v) = hit
    return CheckResult(FAILS, {"a": str(u), "b": str(v)}, index + 1, None, law)
