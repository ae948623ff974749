"""
Equations - Named equations shipped in data/equations.json.
Anywhere an equation is accepted, an alias such as EQ4 or TRANS may stand in for its text.
"""
import json
import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional

from .errors import UnknownName
from .term import Term, parse_equation

logger = logging.getLogger("Equations")

EQUATIONS_PATH = os.path.join(os.path.dirname(os.path.dirname(__file__)), "data", "equations.json")


@dataclass(frozen=True)
class Equation:
    label: str
    text: str
    lhs: Term
    rel: str
    rhs: Term
    about: str = ""


@lru_cache(maxsize=None)
def load_equations(path: str = EQUATIONS_PATH) -> Dict[str, Equation]:
    with open(path, "r", encoding="utf-8") as f:
        raw = json.load(f)
    table = {}
    for alias, entry in raw.items():
        lhs, rel, rhs = parse_equation(entry["text"])
        table[alias.upper()] = Equation(alias.upper(), entry["text"], lhs, rel, rhs, entry.get("about", ""))
    logger.debug("loaded %d equation aliases", len(table))
    return table


def get(alias: str) -> Equation:
    table = load_equations()
    try:
        return table[alias.upper()]
    except KeyError:
        raise UnknownName(f"no equation alias {alias!r}; known: {', '.join(table)}") from None


def resolve(text: str, label: Optional[str] = None) -> Equation:
    """An alias name, or equation text (`lhs = rhs`, `lhs <= rhs`, or a bare term meaning `= 1`)."""
    stripped = text.strip()
    if stripped.upper() in load_equations():
        return get(stripped)
    lhs, rel, rhs = parse_equation(stripped)
    return Equation(label or stripped, stripped, lhs, rel, rhs)
