"""
Acceptance - The full verification suite behind `app.py accept`.
Each criterion yields (name, passed, detail) rows; the report is deterministic for a given seed.
"""
import json
import logging
import os
from typing import Callable, Dict, List, Tuple

from . import checker, equations, freeoml, hilbert
from .model_factory import builtin
from .term import Complement, Equivalence, Join, Meet, Variable

logger = logging.getLogger("Accept")

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "data")
REQUIRED_ERRATA = ("equiv5-formula", "delta-index", "classical-complement-order")

Row = Tuple[str, bool, str]


def load_errata() -> List[Dict[str, str]]:
    with open(os.path.join(DATA_DIR, "errata.json"), "r", encoding="utf-8") as f:
        return json.load(f)


def load_table(path: str = None) -> List[List[int]]:
    path = path or os.path.join(DATA_DIR, "table1.json")
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)["rows"]


def table_diff(computed: List[List[int]], expected: List[List[int]]) -> List[Tuple[int, int, int, int]]:
    """(i, j, computed, expected) for every mismatching entry."""
    return [(i, j, computed[i][j], expected[i][j])
            for i in range(6) for j in range(6) if computed[i][j] != expected[i][j]]


def _verdict(result: checker.CheckResult) -> str:
    if result.holds:
        return f"holds ({result.assignments_checked})"
    witness = " ".join(f"{k}={v}" for k, v in result.witness.items())
    return f"fails at {witness}"


class Suite:
    """Runs the acceptance criteria with one config and seed."""

    def __init__(self, config: dict, seed: int, quick: bool = False, workers: int = 1):
        self.config = config
        self.seed = seed
        self.quick = quick
        self.workers = workers
        self.hilbert_trials = 100 if quick else config["hilbert"]["trials"]

    def criteria(self) -> List[Tuple[int, str, Callable[[], List[Row]]]]:
        return [
            (1, "Beran anchors", self.anchors),
            (2, "product table", self.product_table),
            (3, "complement symmetry", self.complement_symmetry),
            (4, "equivalence parity", self.parity),
            (5, "iff characterizations", self.iff),
            (6, "OML identities", self.identities),
            (7, "woml20 profile", self.woml_profile),
            (8, "lemmas", self.lemmas),
            (9, "theta congruences", self.congruences),
            (10, "determinism", self.determinism),
        ]

    def run(self):
        """Yields (number, title, rows) per criterion."""
        for number, title, fn in self.criteria():
            logger.info("criterion %d: %s", number, title)
            yield number, title, fn()

    # ===== CRITERIA =====

    def anchors(self) -> List[Row]:
        rows = [(label, computed == expected, f"{computed}") for label, computed, expected in freeoml.anchor_suite()]
        ids = {e["id"] for e in load_errata()}
        missing = [i for i in REQUIRED_ERRATA if i not in ids]
        rows.append(("errata recorded", not missing, "missing " + ", ".join(missing) if missing else "ok"))
        return rows

    def product_table(self) -> List[Row]:
        diff = table_diff(freeoml.product_table(), load_table())
        detail = "; ".join(f"({i},{j}) {c} != {e}" for i, j, c, e in diff) or "36 entries match"
        return [("table", not diff, detail)]

    def complement_symmetry(self) -> List[Row]:
        bad = []
        for n in range(1, freeoml.SIZE + 1):
            t = freeoml.canonical_term(n)
            if freeoml.evaluate_ab(Complement(t)).beran != 97 - freeoml.evaluate_ab(t).beran:
                bad.append(n)
        return [("97 - n", not bad, f"violations {bad}" if bad else "96 elements")]

    def parity(self) -> List[Row]:
        a, b = Variable("a"), Variable("b")
        seeds = [freeoml.GEN_A, freeoml.GEN_B, freeoml.GEN_A.complement(), freeoml.GEN_B.complement(),
                 freeoml.ZERO, freeoml.ONE]
        reached = freeoml.closure(seeds, [Equivalence(i, a, b) for i in range(6)])
        odd = set(freeoml.odd_weight_indices())
        hit = sorted(e.beran for e in reached if e.beran in odd)
        generated = freeoml.closure(seeds[:4], [Meet(a, b), Join(a, b)])
        return [
            ("equivalence closure stays even", not hit and len(odd) == 48,
             f"{len(reached)} reached, odd {hit}"),
            ("meet/join closure is everything", len(generated) == freeoml.SIZE, f"{len(generated)} reached"),
        ]

    def iff(self) -> List[Row]:
        free2, mo2, o6, b4 = (builtin(n) for n in ("free2", "mo2", "o6", "boolean_4"))
        rows = [(f"free2 i={i}", checker.iff_characterization(free2, i).holds, "")
                for i in range(1, 6)]
        rows.append(("boolean_4 i=0", checker.iff_characterization(b4, 0).holds, ""))
        mo2_result = checker.iff_characterization(mo2, 0)
        rows.append(("mo2 i=0 fails", not mo2_result.holds, _verdict(mo2_result)))
        o6_fails = [i for i in range(1, 6) if not checker.iff_characterization(o6, i).holds]
        rows.append(("o6 fails for some i", bool(o6_fails), f"i in {o6_fails}"))
        return [(name, ok, detail or ("holds" if ok else "fails")) for name, ok, detail in rows]

    def identities(self) -> List[Row]:
        rows = []
        mo2, free2 = builtin("mo2"), builtin("free2")
        chunk = self.config["checker"]["chunk_size"]
        for alias in ("EQ1", "EQ2", "EQ3", "EQ4", "EQ5", "EQ6"):
            result = checker.check_text(mo2, alias, workers=self.workers, chunk_size=chunk)
            rows.append((f"mo2 {alias}", result.holds, _verdict(result)))
        four = ("EQ1", "EQ2") if self.config["accept"]["four_variable_free2"] and not self.quick else ()
        for alias in ("EQ3", "EQ4", "EQ5", "EQ6") + four:
            result = checker.check_text(free2, alias, workers=self.workers, chunk_size=chunk)
            rows.append((f"free2 {alias}", result.holds, _verdict(result)))
        for dim in self.config["hilbert"]["dims"]:
            for alias in ("EQ1", "EQ2", "EQ3", "EQ4", "EQ5", "EQ6"):
                result = hilbert.check_text_random(
                    dim, alias, trials=self.hilbert_trials, seed=self.seed,
                    entry_range=self.config["hilbert"]["entry_range"], workers=self.workers)
                rows.append((f"Q^{dim} {alias}", result.holds, _verdict(result)))
        return rows

    def woml_profile(self) -> List[Row]:
        m = builtin("woml20")
        return [(f"gate {gate_id}", passed, detail)
                for gate_id, _, passed, detail in checker.profile_gates(m, "woml", self.workers)]

    def lemmas(self) -> List[Row]:
        free2, o6 = builtin("free2"), builtin("o6")
        rows = []
        result = checker.check_text(free2, "TRANS", workers=self.workers)
        rows.append(("free2 transitivity", result.holds, _verdict(result)))
        for m in (free2, o6):
            result = checker.foulis_holland_check(m)
            rows.append((f"{m.name} Foulis-Holland", result.holds, _verdict(result)))
        for i in range(6):
            result = checker.check_text(free2, f"COMPL_{i}")
            rows.append((f"free2 a =={i} 0 = a'", result.holds, _verdict(result)))
        return rows

    def congruences(self) -> List[Row]:
        rows = []
        for name in ("o6", "woml20"):
            m = builtin(name)
            for i in range(6):
                report = checker.theta_relation(m, i)
                detail = f"{int(report.relation.sum())} pairs, congruence={report.congruence}"
                # theta0 is reported, not gated
                rows.append((f"{name} theta{i}", report.congruence or i == 0, detail))
        free2 = builtin("free2")
        for i in range(1, 6):
            rows.append((f"free2 theta{i} is identity", checker.theta_relation(free2, i).identity, ""))
        rows.append(("boolean_4 theta0 is identity",
                     checker.theta_relation(builtin("boolean_4"), 0).identity, ""))
        return [(n, ok, d or ("yes" if ok else "no")) for n, ok, d in rows]

    def determinism(self) -> List[Row]:
        free2 = builtin("free2")
        eq = equations.get("DISTRIB")
        first = checker.check_equation(free2, eq.lhs, eq.rel, eq.rhs, mode="random", trials=1000, seed=self.seed)
        second = checker.check_equation(free2, eq.lhs, eq.rel, eq.rhs, mode="random", trials=1000, seed=self.seed)
        h1 = hilbert.check_equation_random(3, eq.lhs, eq.rel, eq.rhs, trials=50, seed=self.seed)
        h2 = hilbert.check_equation_random(3, eq.lhs, eq.rel, eq.rhs, trials=50, seed=self.seed, workers=2)
        return [
            ("seeded model sampling", first == second, _verdict(first)),
            ("seeded subspace sampling", h1 == h2, _verdict(h1)),
        ]


def errata_lines() -> List[Tuple[str, str]]:
    return [(e["id"], e["decision"]) for e in load_errata()]
