"""
Checker - Equation, law and relation checks over finite models.

Exhaustive runs walk assignments in lexicographic order, one vectorized chunk
at a time, optionally spread over worker threads. Chunks are consumed in
order, so the reported witness is the lexicographically least violation for
any worker count.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from . import equations
from .errors import UnknownName
from .model import Model
from .term import Equivalence, Term, Variable, compile_term, parse_equation, variables

logger = logging.getLogger("Checker")

HOLDS = "holds"
FAILS = "fails"
RELATIONS = ("=", "<=")
DEFAULT_CHUNK = 1 << 18

ORTHOLATTICE_LAWS = (
    "a'' = a",
    "a ^ a' = 0",
    "a v a' = 1",
    "(a ^ b)' = a' v b'",
    "(a v b)' = a' ^ b'",
)
WOML_LAW = "(a' ^ (a v b)) v b' v (a ^ b) = 1"
LAWS = ("ortholattice", "oml", "woml")


@dataclass
class CheckResult:
    status: str
    witness: Optional[Dict[str, str]] = None
    assignments_checked: int = 0
    values: Optional[Dict[str, str]] = None
    law: str = ""

    @property
    def holds(self) -> bool:
        return self.status == HOLDS


@dataclass
class ThetaReport:
    """The relation {(p, q) : p ==i q = 1} and which properties it has."""
    index: int
    relation: np.ndarray
    reflexive: bool
    symmetric: bool
    transitive: bool
    compatible: bool
    identity: bool
    counterexamples: Dict[str, Dict[str, str]] = field(default_factory=dict)

    @property
    def equivalence(self) -> bool:
        return self.reflexive and self.symmetric and self.transitive

    @property
    def congruence(self) -> bool:
        return self.equivalence and self.compatible

    def pairs(self, m: Model) -> List[Tuple[str, str]]:
        return [(m.name_of(p), m.name_of(q)) for p, q in np.argwhere(self.relation)]


# ===== EVALUATION =====

def equation_variables(lhs: Term, rhs: Term) -> List[str]:
    names = variables(lhs)
    names += [v for v in variables(rhs) if v not in names]
    return names


def evaluate(m: Model, t: Term, assignment: Dict[str, str]) -> str:
    """Value of t (element name) with variables bound to element names."""
    program = compile_term(t)
    try:
        env = [m.element(assignment[name]) for name in program.variables]
    except KeyError as e:
        raise ValueError(f"variable {e.args[0]!r} has no value") from None
    return m.name_of(program.run(env, m.algebra()))


def _violated(m: Model, rel: str, left: str, right: str) -> bool:
    l, r = m.element(left), m.element(right)
    if rel == "=":
        return l != r
    return m.meet(l, r) != l


def verify_witness(m: Model, lhs: Term, rel: str, rhs: Term, result: CheckResult) -> bool:
    """True when the result's witness really violates lhs rel rhs."""
    if result.witness is None:
        return False
    return _violated(m, rel, evaluate(m, lhs, result.witness), evaluate(m, rhs, result.witness))


def _block(program, algebra, columns, size) -> np.ndarray:
    out = program.run(columns, algebra)
    return np.broadcast_to(np.asarray(out, dtype=np.int64), (size,))


def _bad_mask(m: Model, algebra, lhs_prog, rel: str, rhs_prog, columns, size) -> np.ndarray:
    left = _block(lhs_prog, algebra, columns, size)
    right = _block(rhs_prog, algebra, columns, size)
    if rel == "=":
        return left != right
    return m.meet_flat[left * m.n + right] != left


def _decode(rank: int, n: int, k: int) -> List[int]:
    return [(rank // n ** (k - 1 - j)) % n for j in range(k)]


def _columns(start: int, stop: int, n: int, k: int) -> List[np.ndarray]:
    ranks = np.arange(start, stop, dtype=np.int64)
    return [(ranks // n ** (k - 1 - j)) % n for j in range(k)]


def _failure(m: Model, names, values, lhs, rel, rhs, checked: int, law: str) -> CheckResult:
    witness = {name: m.name_of(v) for name, v in zip(names, values)}
    shown = {"lhs": evaluate(m, lhs, witness), "rhs": evaluate(m, rhs, witness)}
    return CheckResult(FAILS, witness, checked, shown, law)


# ===== EQUATIONS =====

def check_equation(m: Model, lhs: Term, rel: str, rhs: Term, mode: str = "exhaustive",
                   trials: int = 1000, seed: int = 0, workers: int = 1,
                   chunk_size: int = DEFAULT_CHUNK, law: str = "") -> CheckResult:
    """
    Check lhs rel rhs over m.

    exhaustive: all |m|^k assignments in lexicographic order.
    random: `trials` assignments drawn from numpy's default_rng(seed).
    """
    if rel not in RELATIONS:
        raise ValueError(f"relation must be one of {RELATIONS}, got {rel!r}")
    names = equation_variables(lhs, rhs)
    k = len(names)
    lhs_prog = compile_term(lhs, names)
    rhs_prog = compile_term(rhs, names)
    algebra = m.algebra()
    n = m.n

    if mode == "random":
        rng = np.random.default_rng(seed)
        samples = rng.integers(0, n, size=(trials, k))
        for start in range(0, trials, chunk_size):
            block = samples[start:start + chunk_size]
            columns = [block[:, j] for j in range(k)]
            bad = _bad_mask(m, algebra, lhs_prog, rel, rhs_prog, columns, len(block))
            if bad.any():
                row = int(np.argmax(bad))
                logger.debug("%s: violation at trial %d", m.name, start + row + 1)
                return _failure(m, names, block[row].tolist(), lhs, rel, rhs, start + row + 1, law)
        return CheckResult(HOLDS, None, trials, None, law)

    if mode != "exhaustive":
        raise ValueError(f"mode must be exhaustive or random, got {mode!r}")

    total = n ** k

    def scan(start: int) -> Optional[int]:
        stop = min(start + chunk_size, total)
        bad = _bad_mask(m, algebra, lhs_prog, rel, rhs_prog, _columns(start, stop, n, k), stop - start)
        return start + int(np.argmax(bad)) if bad.any() else None

    starts = range(0, total, chunk_size)
    found = None
    if workers <= 1 or len(starts) == 1:
        for start in starts:
            found = scan(start)
            if found is not None:
                break
    else:
        executor = ThreadPoolExecutor(max_workers=workers)
        try:
            for hit in executor.map(scan, starts):
                if hit is not None:
                    found = hit
                    break
        finally:
            executor.shutdown(wait=True, cancel_futures=True)

    logger.info("%s: %d-variable check over %d assignments, %s", m.name, k, total,
                "violated" if found is not None else "holds")
    if found is None:
        return CheckResult(HOLDS, None, total, None, law)
    return _failure(m, names, _decode(found, n, k), lhs, rel, rhs, found + 1, law)


def check_text(m: Model, text: str, **kwargs) -> CheckResult:
    """check_equation for an alias or equation text."""
    eq = equations.resolve(text)
    return check_equation(m, eq.lhs, eq.rel, eq.rhs, law=eq.label, **kwargs)


# ===== LAWS =====

def _oml_law(m: Model) -> CheckResult:
    n = m.n
    p, q = np.divmod(np.arange(n * n), n)
    rebuilt = m.join_table[p, m.meet_table[m.ortho[p], q]]
    bad = m.le[p, q] & (rebuilt != q)
    label = "a <= b implies b = a v (a' ^ b)"
    if not bad.any():
        return CheckResult(HOLDS, None, n * n, None, label)
    rank = int(np.argmax(bad))
    a, b = int(p[rank]), int(q[rank])
    shown = {"a v (a' ^ b)": m.name_of(rebuilt[rank]), "b": m.name_of(b)}
    return CheckResult(FAILS, {"a": m.name_of(a), "b": m.name_of(b)}, rank + 1, shown, label)


def check_law(m: Model, law: str, workers: int = 1) -> CheckResult:
    if law == "oml":
        return _oml_law(m)
    if law == "woml":
        lhs, rel, rhs = parse_equation(WOML_LAW)
        return check_equation(m, lhs, rel, rhs, workers=workers, law=WOML_LAW)
    if law == "ortholattice":
        checked = 0
        for text in ORTHOLATTICE_LAWS:
            lhs, rel, rhs = parse_equation(text)
            result = check_equation(m, lhs, rel, rhs, workers=workers, law=text)
            if not result.holds:
                return result
            checked += result.assignments_checked
        return CheckResult(HOLDS, None, checked, None, "ortholattice")
    raise UnknownName(f"unknown law {law!r}; expected one of {', '.join(LAWS)}")


# ===== TWO-VARIABLE TABLES =====

def pair_table(m: Model, t: Term) -> np.ndarray:
    """n x n table of t with a bound to the row element and b to the column element."""
    n = m.n
    p, q = np.divmod(np.arange(n * n), n)
    out = compile_term(t, ("a", "b")).run([p, q], m.algebra())
    return np.broadcast_to(np.asarray(out, dtype=np.int64), (n * n,)).reshape(n, n)


def theta_matrix(m: Model, i: int) -> np.ndarray:
    return pair_table(m, Equivalence(i, Variable("a"), Variable("b"))) == m.top


def iff_characterization(m: Model, i: int) -> CheckResult:
    """Does p ==i q = 1 hold exactly when p = q?"""
    theta = theta_matrix(m, i)
    bad = theta != np.eye(m.n, dtype=bool)
    label = f"a =={i} b = 1 iff a = b"
    if not bad.any():
        return CheckResult(HOLDS, None, m.n * m.n, None, label)
    rank = int(np.argmax(bad.ravel()))
    p, q = divmod(rank, m.n)
    verdict = "1" if theta[p, q] else "not 1"
    return CheckResult(FAILS, {"a": m.name_of(p), "b": m.name_of(q)}, rank + 1,
                       {f"a =={i} b": verdict}, label)


def _position(m: Model, x: Union[str, int]) -> int:
    return m.element(x) if isinstance(x, str) else int(x)


def commutes(m: Model, p: Union[str, int], q: Union[str, int]) -> bool:
    """p C q iff p = (p ^ q) v (p ^ q')."""
    p, q = _position(m, p), _position(m, q)
    return m.join(m.meet(p, q), m.meet(p, m.complement(q))) == p


def commuting_pairs(m: Model) -> np.ndarray:
    """Boolean matrix C with C[p, q] iff p C q."""
    p = np.arange(m.n)[:, None]
    q = np.arange(m.n)[None, :]
    return m.join_table[m.meet_table[p, q], m.meet_table[p, m.ortho[q]]] == p


def foulis_holland_check(m: Model) -> CheckResult:
    """p ^ (q v r) = (p ^ q) v (p ^ r) on every triple whose members pairwise commute both ways."""
    mutual = commuting_pairs(m)
    mutual = mutual & mutual.T
    p = np.arange(m.n)[:, None, None]
    q = np.arange(m.n)[None, :, None]
    r = np.arange(m.n)[None, None, :]
    triples = mutual[p, q] & mutual[p, r] & mutual[q, r]
    lhs = m.meet_table[p, m.join_table[q, r]]
    rhs = m.join_table[m.meet_table[p, q], m.meet_table[p, r]]
    bad = (triples & (lhs != rhs)).ravel()
    label = "p ^ (q v r) = (p ^ q) v (p ^ r) for commuting p, q, r"
    flat = triples.ravel()
    if not bad.any():
        return CheckResult(HOLDS, None, int(flat.sum()), None, label)
    rank = int(np.argmax(bad))
    a, rest = divmod(rank, m.n * m.n)
    b, c = divmod(rest, m.n)
    witness = {"p": m.name_of(a), "q": m.name_of(b), "r": m.name_of(c)}
    shown = {"lhs": m.name_of(lhs.ravel()[rank]), "rhs": m.name_of(rhs.ravel()[rank])}
    return CheckResult(FAILS, witness, int(flat[:rank + 1].sum()), shown, label)


def theta_relation(m: Model, i: int) -> ThetaReport:
    theta = theta_matrix(m, i)
    names = m.name_of
    found: Dict[str, Dict[str, str]] = {}

    diagonal = theta.diagonal()
    reflexive = bool(diagonal.all())
    if not reflexive:
        found["reflexive"] = {"a": names(np.argmin(diagonal))}

    asym = theta & ~theta.T
    symmetric = not asym.any()
    if not symmetric:
        a, b = np.argwhere(asym)[0]
        found["symmetric"] = {"a": names(a), "b": names(b)}

    as_int = theta.astype(np.int64)
    gap = ((as_int @ as_int) > 0) & ~theta
    transitive = not gap.any()
    if not transitive:
        a, c = np.argwhere(gap)[0]
        b = int(np.argmax(theta[a] & theta[:, c]))
        found["transitive"] = {"a": names(a), "b": names(b), "c": names(c)}

    pairs = np.argwhere(theta)
    left, right = pairs[:, 0], pairs[:, 1]
    compatible = True
    ortho_bad = ~theta[m.ortho[left], m.ortho[right]]
    if ortho_bad.any():
        compatible = False
        j = int(np.argmax(ortho_bad))
        found["ortho"] = {"a": names(left[j]), "b": names(right[j])}
    for op, table in (("meet", m.meet_table), ("join", m.join_table)):
        op_bad = ~theta[table[left], table[right]]
        if op_bad.any():
            compatible = False
            j, c = np.argwhere(op_bad)[0]
            found[op] = {"a": names(left[j]), "b": names(right[j]), "c": names(c)}

    identity = bool((theta == np.eye(m.n, dtype=bool)).all())
    report = ThetaReport(i, theta, reflexive, symmetric, transitive, compatible, identity, found)
    logger.info("%s: theta%d has %d pairs, congruence=%s", m.name, i, len(pairs), report.congruence)
    return report


# ===== PROFILES =====

LABELED_PAIRS = ("x", "y", "z", "w", "r", "s", "t", "u", "v")


def profile_gates(m: Model, profile: str = "woml", workers: int = 1) -> List[Tuple[str, str, bool, str]]:
    """(id, title, passed, detail) for each gate of the named profile."""
    if profile != "woml":
        raise UnknownName(f"unknown profile {profile!r}; expected woml")

    gates = []
    unlabeled = [p for p in LABELED_PAIRS
                 if p not in m.index or p + "'" not in m.index
                 or m.name_of(m.ortho[m.index[p]]) != p + "'"]
    lattice = check_law(m, "ortholattice", workers)
    shape_ok = m.n == 20 and not unlabeled and lattice.holds
    detail = f"{m.n} elements"
    if unlabeled:
        detail += f"; unlabeled pairs: {', '.join(unlabeled)}"
    if not lattice.holds:
        detail += f"; violates {lattice.law} at {lattice.witness}"
    gates.append(("ortholattice", "20-element ortholattice with labeled pairs", shape_ok, detail))

    woml = check_law(m, "woml", workers)
    gates.append(("woml", "WOML law holds", woml.holds, _describe(woml)))

    oml = check_law(m, "oml", workers)
    gates.append(("oml", "OML law fails", not oml.holds, _describe(oml)))

    eq4 = check_text(m, "EQ4", workers=workers)
    gates.append(("eq4", "EQ4 fails", not eq4.holds, _describe(eq4)))

    eq6 = check_text(m, "EQ6", workers=workers)
    gates.append(("eq6", "EQ6 holds", eq6.holds, _describe(eq6)))
    return gates


def validate_profile(m: Model, profile: str = "woml", workers: int = 1):
    """Returns (ok, errors) in the self-check error shape."""
    errors = [
        {"id": gate_id, "title": title, "message": detail, "fixable": False}
        for gate_id, title, passed, detail in profile_gates(m, profile, workers)
        if not passed
    ]
    if errors:
        logger.warning("%s fails %d %s gate(s)", m.name, len(errors), profile)
    return not errors, errors


def _describe(result: CheckResult) -> str:
    if result.holds:
        return f"holds over {result.assignments_checked}"
    pairs = " ".join(f"{k}={v}" for k, v in result.witness.items())
    return f"fails at {pairs}"
