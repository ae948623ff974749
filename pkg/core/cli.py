"""
CLI - Command-line front end.
Every command writes `key<TAB>value` records to stdout; logging goes to stderr.
Exit codes: 0 holds / as expected, 1 violation found, 2 usage or format error.
"""
import argparse
import logging
import sys
import time
from typing import List, Optional, Sequence

from . import acceptance, checker, equations, freeoml, hilbert
from .config import load_config, resolve_workers
from .errors import LatticeError
from .model_factory import builtin
from .self_check import self_check
from .term import parse, print_term

logger = logging.getLogger("CLI")

EXIT_OK, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2

CLOSURE_PRESETS = {
    "equiv": [f"a =={i} b" for i in range(6)],
    "meetjoin": ["a ^ b", "a v b"],
    "ortho": ["a ^ b", "a v b", "(a ^ b)'"],
}


class Report:
    """Ordered key/value records; the timing record is always written last."""

    def __init__(self, command: str, out=None):
        self.out = out or sys.stdout
        self.started = time.perf_counter()
        self.records: List[tuple] = []
        self.exit_code = EXIT_OK
        self.add("command", command)

    def add(self, key: str, *values):
        self.records.append((key,) + tuple(str(v) for v in values))

    def verdict(self, result: checker.CheckResult):
        if result.law:
            self.add("law", result.law)
        self.add("status", result.status)
        self.add("assignments", result.assignments_checked)
        if result.witness is not None:
            self.add("witness", " ".join(f"{k}={v}" for k, v in result.witness.items()))
            for k, v in (result.values or {}).items():
                self.add("value", f"{k}={v}")
            self.exit_code = max(self.exit_code, EXIT_VIOLATION)

    def body(self) -> str:
        return "".join("\t".join(r) + "\n" for r in self.records)

    def emit(self) -> int:
        self.out.write(self.body())
        self.out.write(f"time\t{time.perf_counter() - self.started:.3f}s\n")
        self.out.flush()
        return self.exit_code


# ===== COMMANDS =====

def cmd_beran(args, config, report: Report):
    t = parse(args.expr)
    n = freeoml.eval2(t).beran
    report.add("beran", f"{n}  {print_term(freeoml.canonical_term(n))}")


def cmd_table(args, config, report: Report):
    computed = freeoml.product_table()
    expected = acceptance.load_table(args.expected)
    for i in range(6):
        for j in range(6):
            report.add("entry", f"{i} {j} {computed[i][j]}")
    diff = acceptance.table_diff(computed, expected)
    for i, j, c, e in diff:
        report.add("diff", f"{i} {j} computed={c} expected={e}")
    report.add("verdict", "mismatch" if diff else "match")
    if diff:
        report.exit_code = EXIT_VIOLATION


def _guard(m, lhs, rhs, args, config):
    if args.mode != "exhaustive" or args.force:
        return
    k = len(checker.equation_variables(lhs, rhs))
    limit = config["checker"]["exhaustive_limit"]
    if m.n ** k > limit:
        raise LatticeError(f"{m.n}^{k} assignments exceed the exhaustive limit {limit}; pass --force")


def cmd_check(args, config, report: Report):
    m = builtin(args.model)
    workers = resolve_workers(args.workers or config["checker"]["workers"])
    report.add("model", m.name)

    if args.eq:
        eq = equations.resolve(args.eq)
        _guard(m, eq.lhs, eq.rhs, args, config)
        report.add("equation", f"{print_term(eq.lhs)} {eq.rel} {print_term(eq.rhs)}")
        report.add("mode", args.mode)
        result = checker.check_equation(
            m, eq.lhs, eq.rel, eq.rhs, mode=args.mode,
            trials=args.trials or config["random"]["trials"],
            seed=config["random"]["seed"] if args.seed is None else args.seed,
            workers=workers, chunk_size=config["checker"]["chunk_size"], law=eq.label)
        report.verdict(result)
        if not result.holds:
            verified = checker.verify_witness(m, eq.lhs, eq.rel, eq.rhs, result)
            report.add("verified", "yes" if verified else "no")
    elif args.law:
        report.verdict(checker.check_law(m, args.law, workers))
    elif args.iff is not None:
        report.verdict(checker.iff_characterization(m, args.iff))
    elif args.theta is not None:
        theta = checker.theta_relation(m, args.theta)
        report.add("pairs", " ".join(f"{p},{q}" for p, q in theta.pairs(m) if p != q) or "-")
        for prop in ("reflexive", "symmetric", "transitive", "compatible", "congruence", "identity"):
            report.add(prop, "yes" if getattr(theta, prop) else "no")
        for prop, witness in theta.counterexamples.items():
            report.add("counterexample", prop, " ".join(f"{k}={v}" for k, v in witness.items()))
        if not theta.congruence:
            report.exit_code = EXIT_VIOLATION
    elif args.foulis_holland:
        report.verdict(checker.foulis_holland_check(m))
    elif args.commutes:
        p, q = args.commutes
        ok = checker.commutes(m, p, q)
        report.add("commutes", f"{p} {q}", "yes" if ok else "no")
        if not ok:
            report.exit_code = EXIT_VIOLATION
    else:
        matrix = checker.commuting_pairs(m)
        for p in range(m.n):
            partners = [m.name_of(q) for q in range(m.n) if matrix[p, q]]
            report.add("commutes_with", m.name_of(p), " ".join(partners))


def _closure_seeds(tokens: Sequence[str]):
    seeds = []
    for token in tokens:
        if token[:1] == "B" and token[1:].isdigit():
            seeds.append(freeoml.from_beran(int(token[1:])))
        else:
            seeds.append(freeoml.evaluate_ab(parse(token)))
    return seeds


def cmd_closure(args, config, report: Report):
    seeds = _closure_seeds(args.seeds.split(","))
    op_texts = list(args.op or [])
    if args.preset:
        op_texts = CLOSURE_PRESETS[args.preset] + op_texts
    ops = [parse(text) for text in op_texts]
    reached = freeoml.closure(seeds, ops)
    indices = sorted(e.beran for e in reached)
    summary = freeoml.parity_summary(reached)
    report.add("seeds", " ".join(str(e.beran) for e in seeds))
    report.add("ops", "; ".join(print_term(t) for t in ops) or "-")
    report.add("reached", len(indices))
    report.add("elements", " ".join(map(str, indices)))
    report.add("even", summary["even"])
    report.add("odd", summary["odd"])


def cmd_validate(args, config, report: Report):
    m = builtin(args.model)
    workers = resolve_workers(args.workers or config["checker"]["workers"])
    report.add("model", m.name)
    report.add("elements", m.n)
    report.add("atoms", " ".join(m.atoms))
    for law in checker.LAWS:
        result = checker.check_law(m, law, workers)
        report.add(f"law_{law}", result.status)
    if args.profile:
        gates = checker.profile_gates(m, args.profile, workers)
        for gate_id, title, passed, detail in gates:
            report.add("gate", gate_id, "pass" if passed else "FAIL", detail)
        ok = all(passed for _, _, passed, _ in gates)
        report.add("profile", args.profile, "ok" if ok else "failed")
        if not ok:
            report.exit_code = EXIT_VIOLATION


def cmd_hilbert(args, config, report: Report):
    dims = [args.dim] if args.dim else config["hilbert"]["dims"]
    trials = args.trials or config["hilbert"]["trials"]
    seed = config["random"]["seed"] if args.seed is None else args.seed
    workers = resolve_workers(args.workers or config["checker"]["workers"])
    entry_range = config["hilbert"]["entry_range"]
    for dim in dims:
        report.add("dim", dim)
        if args.law:
            result = hilbert.check_law_random(dim, args.law, trials, seed, entry_range, workers)
        else:
            result = hilbert.check_text_random(dim, args.eq, trials=trials, seed=seed,
                                               entry_range=entry_range, workers=workers)
        report.verdict(result)


def cmd_accept(args, config, report: Report):
    seed = config["random"]["seed"] if args.seed is None else args.seed
    workers = resolve_workers(args.workers or config["checker"]["workers"])
    suite = acceptance.Suite(config, seed, quick=args.quick, workers=workers)
    report.add("seed", seed)
    failed = 0
    for number, title, rows in suite.run():
        ok = all(passed for _, passed, _ in rows)
        failed += not ok
        report.add("criterion", number, title, "PASS" if ok else "FAIL")
        for name, passed, detail in rows:
            report.add("check", number, name, "pass" if passed else "FAIL", detail)
    for erratum_id, decision in acceptance.errata_lines():
        report.add("erratum", erratum_id, decision)
    report.add("summary", f"{10 - failed}/10 criteria pass")
    if failed:
        report.exit_code = EXIT_VIOLATION


COMMANDS = {
    "beran": cmd_beran,
    "table": cmd_table,
    "check": cmd_check,
    "closure": cmd_closure,
    "validate": cmd_validate,
    "hilbert": cmd_hilbert,
    "accept": cmd_accept,
}


# ===== ARGUMENTS =====

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="app.py", description="Orthomodular lattice toolkit")
    parser.add_argument("--config", help="path to config.json")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    parser.add_argument("--workers", help="worker threads, or 'auto'")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("beran", help="Beran index and canonical term of a two-variable term")
    p.add_argument("expr")

    p = sub.add_parser("table", help="product table of implications")
    p.add_argument("--expected", help="JSON file with the expected rows")

    p = sub.add_parser("check", help="check an equation, law or relation in a model")
    p.add_argument("model", help="built-in name or model file")
    what = p.add_mutually_exclusive_group()
    what.add_argument("--eq", help="equation text or alias (EQ1..EQ7, TRANS, OML, ...)")
    what.add_argument("--law", choices=checker.LAWS)
    what.add_argument("--iff", type=int, choices=range(6), metavar="I")
    what.add_argument("--theta", type=int, choices=range(6), metavar="I")
    what.add_argument("--foulis-holland", action="store_true")
    what.add_argument("--commutes", nargs=2, metavar=("P", "Q"))
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--force", action="store_true", help="lift the exhaustive-size guard")

    p = sub.add_parser("closure", help="closure of seeds under two-variable operations")
    p.add_argument("--seeds", default="a,b", help="comma-separated terms over a, b or Bn indices")
    p.add_argument("--op", action="append", help="operation term over a, b (repeatable)")
    p.add_argument("--preset", choices=sorted(CLOSURE_PRESETS))

    p = sub.add_parser("validate", help="validate a model")
    p.add_argument("model")
    p.add_argument("--profile", choices=("woml",))

    p = sub.add_parser("hilbert", help="random checks in subspace lattices of Q^n")
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--eq")
    what.add_argument("--law", choices=hilbert.HILBERT_LAWS)
    p.add_argument("--dim", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("accept", help="run the acceptance suite")
    p.add_argument("--seed", type=int)
    p.add_argument("--quick", action="store_true", help="fewer subspace trials, no 4-variable free2 runs")
    return parser


def configure_logging(config: dict, verbosity: int):
    level = logging.getLevelName(str(config.get("logging", {}).get("level", "WARNING")).upper())
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(level if isinstance(level, int) else logging.WARNING)


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK

    configure_logging({}, args.verbose)
    config = load_config(args.config)
    configure_logging(config, args.verbose)

    argv_list = list(sys.argv[1:] if argv is None else argv)
    report = Report(" ".join(argv_list), out)

    ok, errors = self_check()
    if not ok:
        for e in errors:
            report.add("error", e["id"], e["message"])
        report.exit_code = EXIT_ERROR
        return report.emit()

    try:
        COMMANDS[args.command](args, config, report)
    except (LatticeError, ValueError, OSError) as e:
        logger.debug("%s failed", args.command, exc_info=True)
        report.add("error", e)
        report.exit_code = EXIT_ERROR
    return report.emit()
