"""
Term - syntax trees for ortholattice expressions.
Lexing, parsing, printing, expansion into {meet, join, complement, 0, 1},
and compilation into shared-subterm programs that any Algebra can run.
"""
import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import AmbiguityError, TermSyntaxError

logger = logging.getLogger("Term")

INDICES = range(6)


class SymDiffKind(Enum):
    """Symmetric differences; the value is the ASCII spelling."""
    NABLA = "nabla"
    DELTA = "delta"
    PLUS_L = "+l"
    PLUS_R = "+r"
    PLUS_LP = "+lp"
    PLUS_RP = "+rp"


# Each symmetric difference is the complement of one equivalence.
SYMDIFF_EQUIVALENCE = {
    SymDiffKind.NABLA: 0,
    SymDiffKind.DELTA: 5,
    SymDiffKind.PLUS_L: 1,
    SymDiffKind.PLUS_R: 4,
    SymDiffKind.PLUS_LP: 3,
    SymDiffKind.PLUS_RP: 2,
}


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Complement:
    child: "Term"


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Implication:
    index: int
    left: "Term"
    right: "Term"

    def __post_init__(self):
        if self.index not in INDICES:
            raise ValueError(f"implication index must be 0..5, got {self.index}")


@dataclass(frozen=True)
class Equivalence:
    index: int
    left: "Term"
    right: "Term"

    def __post_init__(self):
        if self.index not in INDICES:
            raise ValueError(f"equivalence index must be 0..5, got {self.index}")


@dataclass(frozen=True)
class SymDiff:
    kind: SymDiffKind
    left: "Term"
    right: "Term"


Term = Union[Variable, Zero, One, Complement, Meet, Join, Implication, Equivalence, SymDiff]

PRIMITIVE_TYPES = (Variable, Zero, One, Complement, Meet, Join)


# ===== LEXER =====

class Token(NamedTuple):
    kind: str
    value: object
    position: int


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INDEX = re.compile(r"_?([0-9])")
_PLUS = re.compile(r"\+(lp|rp|l|r)(?![A-Za-z0-9_])")

_SINGLE = {
    "(": ("LPAREN", None),
    ")": ("RPAREN", None),
    "'": ("PRIME", None),
    "′": ("PRIME", None),
    "⊥": ("PRIME", None),
    "-": ("NOT", None),
    "¬": ("NOT", None),
    "^": ("MEET", None),
    "∩": ("MEET", None),
    "∨": ("JOIN", None),
    "∧": ("MEET", None),
    "∪": ("JOIN", None),
    "∇": ("SYMDIFF", SymDiffKind.NABLA),
    "△": ("SYMDIFF", SymDiffKind.DELTA),
    "Δ": ("SYMDIFF", SymDiffKind.DELTA),
    "≤": ("REL", "<="),
}

_KEYWORDS = {
    "v": ("JOIN", None),
    "nabla": ("SYMDIFF", SymDiffKind.NABLA),
    "delta": ("SYMDIFF", SymDiffKind.DELTA),
}


def _read_index(text: str, pos: int, required: bool, start: int) -> Tuple[Optional[int], int]:
    m = _INDEX.match(text, pos)
    if not m:
        if required:
            raise TermSyntaxError("implication needs an index 0..5", start)
        return None, pos
    digit = int(m.group(1))
    if digit not in INDICES:
        raise TermSyntaxError(f"connective index must be 0..5, got {digit}", pos)
    if text[m.end():m.end() + 1].isdigit():
        raise TermSyntaxError("connective index is a single digit 0..5", pos)
    return digit, m.end()


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        start = pos

        if text.startswith("->", pos) or ch == "→":
            pos += 2 if ch == "-" else 1
            index, pos = _read_index(text, pos, True, start)
            tokens.append(Token("IMP", index, start))
            continue
        if text.startswith("==", pos) or ch == "≡":
            pos += 2 if ch == "=" else 1
            index, pos = _read_index(text, pos, False, start)
            tokens.append(Token("EQV", 5 if index is None else index, start))
            continue
        if text.startswith("<=", pos):
            tokens.append(Token("REL", "<=", start))
            pos += 2
            continue
        if ch == "=":
            tokens.append(Token("REL", "=", start))
            pos += 1
            continue
        if ch == "+":
            m = _PLUS.match(text, pos)
            if not m:
                raise TermSyntaxError("expected one of +l, +r, +lp, +rp", start)
            tokens.append(Token("SYMDIFF", SymDiffKind("+" + m.group(1)), start))
            pos = m.end()
            continue
        if ch in _SINGLE:
            kind, value = _SINGLE[ch]
            tokens.append(Token(kind, value, start))
            pos += 1
            continue
        if ch.isdigit():
            follow = text[pos + 1] if pos + 1 < n else ""
            if ch in "01" and not (follow.isalnum() or follow == "_"):
                tokens.append(Token("ZERO" if ch == "0" else "ONE", None, start))
                pos += 1
                continue
            raise TermSyntaxError("only the constants 0 and 1 are allowed", start)
        m = _IDENT.match(text, pos)
        if m:
            word = m.group(0)
            kind, value = _KEYWORDS.get(word, ("IDENT", word))
            tokens.append(Token(kind, value, start))
            pos = m.end()
            continue
        raise TermSyntaxError(f"unexpected character {ch!r}", start)

    tokens.append(Token("EOF", None, n))
    return tokens


# ===== PARSER =====

_TOP_LEVEL = ("IMP", "EQV", "SYMDIFF")


class Parser:
    """Recursive descent over the token list.

    Precedence, loosest first: implication/equivalence/symdiff (non-associative),
    join, meet, prefix complement, postfix complement.
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def token(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        if tok.kind != "EOF":
            self.index += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        if self.token.kind != kind:
            raise TermSyntaxError(f"expected {what}", self.token.position)
        return self.advance()

    def expect_end(self):
        if self.token.kind != "EOF":
            raise TermSyntaxError(f"unexpected {self._describe(self.token)}", self.token.position)

    def parse_term(self) -> Term:
        t = self.binary()
        self.expect_end()
        return t

    def parse_equation(self) -> Tuple[Term, str, Term]:
        lhs = self.binary()
        if self.token.kind != "REL":
            self.expect_end()
            return lhs, "=", One()
        rel = self.advance().value
        rhs = self.binary()
        self.expect_end()
        return lhs, rel, rhs

    def binary(self) -> Term:
        left = self.join()
        if self.token.kind not in _TOP_LEVEL:
            return left
        op = self.advance()
        right = self.join()
        if self.token.kind in _TOP_LEVEL:
            raise AmbiguityError(
                "implications, equivalences and symmetric differences do not associate; "
                "add parentheses",
                self.token.position,
            )
        if op.kind == "IMP":
            return Implication(op.value, left, right)
        if op.kind == "EQV":
            return Equivalence(op.value, left, right)
        return SymDiff(op.value, left, right)

    def join(self) -> Term:
        left = self.meet()
        while self.token.kind == "JOIN":
            self.advance()
            left = Join(left, self.meet())
        return left

    def meet(self) -> Term:
        left = self.unary()
        while self.token.kind == "MEET":
            self.advance()
            left = Meet(left, self.unary())
        return left

    def unary(self) -> Term:
        if self.token.kind == "NOT":
            self.advance()
            return Complement(self.unary())
        t = self.atom()
        while self.token.kind == "PRIME":
            self.advance()
            t = Complement(t)
        return t

    def atom(self) -> Term:
        tok = self.token
        if tok.kind == "IDENT":
            self.advance()
            return Variable(tok.value)
        if tok.kind == "ZERO":
            self.advance()
            return Zero()
        if tok.kind == "ONE":
            self.advance()
            return One()
        if tok.kind == "LPAREN":
            self.advance()
            inner = self.binary()
            self.expect("RPAREN", "')'")
            return inner
        raise TermSyntaxError(f"expected a term, found {self._describe(tok)}", tok.position)

    @staticmethod
    def _describe(tok: Token) -> str:
        if tok.kind == "EOF":
            return "end of input"
        if tok.kind == "IDENT":
            return f"variable {tok.value!r}"
        return tok.kind.lower()


def parse(text: str) -> Term:
    return Parser(text).parse_term()


def parse_equation(text: str) -> Tuple[Term, str, Term]:
    """`lhs = rhs` or `lhs <= rhs`; a bare term t means t = 1."""
    return Parser(text).parse_equation()


# ===== PRINTER =====

def _operator(t: Term) -> str:
    if isinstance(t, Meet):
        return "^"
    if isinstance(t, Join):
        return "v"
    if isinstance(t, Implication):
        return f"->{t.index}"
    if isinstance(t, Equivalence):
        return f"=={t.index}"
    return t.kind.value


def print_term(t: Term) -> str:
    """Fully parenthesized ASCII rendering; parse(print_term(t)) == t."""
    if isinstance(t, Variable):
        return t.name
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Complement):
        return print_term(t.child) + "'"
    return f"({print_term(t.left)} {_operator(t)} {print_term(t.right)})"


def variables(t: Term) -> List[str]:
    """Distinct variable names in order of first (left-to-right) occurrence."""
    seen: Dict[str, None] = {}
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Variable):
            seen.setdefault(node.name, None)
        elif isinstance(node, Complement):
            stack.append(node.child)
        elif not isinstance(node, (Zero, One)):
            stack.append(node.right)
            stack.append(node.left)
    return list(seen)


def connective_count(t: Term) -> int:
    if isinstance(t, (Variable, Zero, One)):
        return 0
    if isinstance(t, Complement):
        return 1 + connective_count(t.child)
    return 1 + connective_count(t.left) + connective_count(t.right)


# ===== EXPANSION =====

def equivalence_template(index: int, a: Term, b: Term) -> Term:
    na, nb = Complement(a), Complement(b)
    if index == 0:
        return Meet(Join(na, b), Join(a, nb))
    if index == 1:
        return Meet(Join(a, nb), Join(na, Meet(a, b)))
    if index == 2:
        return Meet(Join(a, nb), Join(b, Meet(na, nb)))
    if index == 3:
        return Meet(Join(na, b), Join(a, Meet(na, nb)))
    if index == 4:
        return Meet(Join(na, b), Join(nb, Meet(a, b)))
    # the printed (a v b) ^ (b' v a') is the complement of this one
    return Join(Meet(a, b), Meet(na, nb))


def implication_template(index: int, a: Term, b: Term) -> Term:
    na, nb = Complement(a), Complement(b)
    if index == 0:
        return Join(na, b)
    if index == 1:
        return Join(na, Meet(a, b))
    if index == 2:
        return Join(b, Meet(na, nb))
    if index == 3:
        return Join(Join(Meet(na, b), Meet(na, nb)), Meet(a, Join(na, b)))
    if index == 4:
        return Join(Join(Meet(a, b), Meet(na, b)), Meet(Join(na, b), nb))
    return Join(Join(Meet(a, b), Meet(na, b)), Meet(na, nb))


def expand(t: Term) -> Term:
    """Rewrite every derived connective into meet, join and complement.

    Substituted operands are shared, so the result is a DAG; unchanged
    primitive nodes are returned as-is.
    """
    memo: Dict[int, Term] = {}

    def walk(node: Term) -> Term:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, (Variable, Zero, One)):
            out = node
        elif isinstance(node, Complement):
            child = walk(node.child)
            out = node if child is node.child else Complement(child)
        else:
            left, right = walk(node.left), walk(node.right)
            if isinstance(node, Meet):
                out = node if (left is node.left and right is node.right) else Meet(left, right)
            elif isinstance(node, Join):
                out = node if (left is node.left and right is node.right) else Join(left, right)
            elif isinstance(node, Implication):
                out = implication_template(node.index, left, right)
            elif isinstance(node, Equivalence):
                out = equivalence_template(node.index, left, right)
            else:
                out = Complement(equivalence_template(SYMDIFF_EQUIVALENCE[node.kind], left, right))
        memo[key] = out
        return out

    return walk(t)


def is_primitive(t: Term) -> bool:
    stack = [t]
    while stack:
        node = stack.pop()
        if not isinstance(node, PRIMITIVE_TYPES):
            return False
        if isinstance(node, Complement):
            stack.append(node.child)
        elif isinstance(node, (Meet, Join)):
            stack.extend((node.left, node.right))
    return True


# ===== COMPILATION =====

VAR, ZERO, ONE, COMP, MEET, JOIN = "var", "zero", "one", "comp", "meet", "join"


@dataclass
class Program:
    """Straight-line code for an expanded term; every distinct subterm is one slot."""
    variables: Tuple[str, ...]
    instructions: List[Tuple[str, int, int]]
    output: int

    def run(self, env: Sequence, algebra):
        """Evaluate with env[i] bound to variables[i] over the given Algebra."""
        slots = []
        for op, x, y in self.instructions:
            if op == VAR:
                slots.append(env[x])
            elif op == COMP:
                slots.append(algebra.complement(slots[x]))
            elif op == MEET:
                slots.append(algebra.meet(slots[x], slots[y]))
            elif op == JOIN:
                slots.append(algebra.join(slots[x], slots[y]))
            elif op == ZERO:
                slots.append(algebra.bottom())
            else:
                slots.append(algebra.top())
        return slots[self.output]

    def __len__(self):
        return len(self.instructions)


def compile_term(t: Term, names: Optional[Sequence[str]] = None) -> Program:
    """Expand t and hash-cons it into a Program over the given variable order."""
    names = tuple(variables(t) if names is None else names)
    position = {name: i for i, name in enumerate(names)}
    instructions: List[Tuple[str, int, int]] = []
    interned: Dict[Tuple[str, int, int], int] = {}
    memo: Dict[int, int] = {}

    def emit(op: str, x: int = -1, y: int = -1) -> int:
        key = (op, x, y)
        slot = interned.get(key)
        if slot is None:
            slot = len(instructions)
            instructions.append(key)
            interned[key] = slot
        return slot

    def walk(node: Term) -> int:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Variable):
            if node.name not in position:
                raise ValueError(f"variable {node.name!r} is not bound")
            slot = emit(VAR, position[node.name])
        elif isinstance(node, Zero):
            slot = emit(ZERO)
        elif isinstance(node, One):
            slot = emit(ONE)
        elif isinstance(node, Complement):
            slot = emit(COMP, walk(node.child))
        elif isinstance(node, Meet):
            slot = emit(MEET, walk(node.left), walk(node.right))
        else:
            slot = emit(JOIN, walk(node.left), walk(node.right))
        memo[key] = slot
        return slot

    output = walk(expand(t))
    logger.debug("compiled %d instructions over %s", len(instructions), names)
    return Program(names, instructions, output)
