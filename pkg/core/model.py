"""
Model - Finite ortholattices loaded from cover-edge text.
The order is the reflexive-transitive closure of the cover edges; meet and join
tables are derived from it and every ortholattice law is checked on load.
"""
import logging
import os
from typing import Dict, List, Sequence, Tuple

import networkx as nx
import numpy as np

from .algebra import Algebra
from .errors import FormatError, NotALattice, NotOrtholattice, UnknownName

logger = logging.getLogger("Model")

DIRECTIVES = ("model", "elements", "bottom", "top", "cover", "ortho", "end")


class Model:
    """
    A validated finite ortholattice.

    Elements are addressed by integer position; `elements` holds their names.
    `le[p, q]` is p <= q, `ortho[p]` is the orthocomplement, and
    `meet_table` / `join_table` are n x n integer tables.
    """

    def __init__(self, name: str, elements: Sequence[str], le: np.ndarray, ortho: Sequence[int]):
        self.name = name
        self.elements = list(elements)
        self.index: Dict[str, int] = {e: i for i, e in enumerate(self.elements)}
        self.n = len(self.elements)
        self.le = np.asarray(le, dtype=bool)
        self.ortho = np.asarray(ortho, dtype=np.int64)

        self._check_partial_order()
        self.bottom, self.top = self._bounds()
        self.meet_table = self._bound_table(lower=True)
        self.join_table = self._bound_table(lower=False)
        self._check_ortho()

        self.meet_flat = self.meet_table.ravel()
        self.join_flat = self.join_table.ravel()
        logger.info("%s: %d elements validated", name, self.n)

    # ===== CONSTRUCTION =====

    @classmethod
    def from_order(cls, name: str, elements: Sequence[str], le, ortho: Sequence[int]) -> "Model":
        return cls(name, elements, le, ortho)

    @classmethod
    def from_covers(cls, name: str, elements: Sequence[str], covers: Sequence[Tuple[str, str]],
                    ortho_pairs: Sequence[Tuple[str, str]]) -> "Model":
        index = {e: i for i, e in enumerate(elements)}
        graph = nx.DiGraph()
        graph.add_nodes_from(elements)
        graph.add_edges_from(covers)
        if not nx.is_directed_acyclic_graph(graph):
            cycle = nx.find_cycle(graph)
            raise NotALattice(f"cover edges are not a partial order (cycle through {cycle[0][0]})",
                              pair=(cycle[0][0], cycle[0][1]))

        reach = nx.transitive_closure_dag(graph)
        le = np.eye(len(elements), dtype=bool)
        for p, q in reach.edges():
            le[index[p], index[q]] = True

        ortho = [-1] * len(elements)
        for p, q in ortho_pairs:
            for x, y in ((p, q), (q, p)):
                if ortho[index[x]] not in (-1, index[y]):
                    raise NotOrtholattice("ortho is a function", witness={"p": x})
                ortho[index[x]] = index[y]
        missing = [elements[i] for i, o in enumerate(ortho) if o < 0]
        if missing:
            raise NotOrtholattice("ortho is total", witness={"p": missing[0]})
        return cls(name, elements, le, ortho)

    # ===== VALIDATION =====

    def _check_partial_order(self):
        le = self.le
        if le.shape != (self.n, self.n):
            raise NotALattice(f"order matrix has shape {le.shape}, expected ({self.n}, {self.n})")
        if not le.diagonal().all():
            p = int(np.argmin(le.diagonal()))
            raise NotALattice("order is not reflexive", pair=(self.elements[p], self.elements[p]))
        both = le & le.T & ~np.eye(self.n, dtype=bool)
        if both.any():
            p, q = np.argwhere(both)[0]
            raise NotALattice("order is not antisymmetric", pair=self._names(p, q))
        through = (le.astype(np.int64) @ le.astype(np.int64)) > 0
        if (through & ~le).any():
            p, q = np.argwhere(through & ~le)[0]
            raise NotALattice("order is not transitive", pair=self._names(p, q))

    def _bounds(self) -> Tuple[int, int]:
        bottoms = np.flatnonzero(self.le.all(axis=1))
        tops = np.flatnonzero(self.le.all(axis=0))
        if len(bottoms) != 1 or len(tops) != 1:
            raise NotALattice("order has no global bottom and top")
        return int(bottoms[0]), int(tops[0])

    def _bound_table(self, lower: bool) -> np.ndarray:
        """glb (lower=True) or lub table; NotALattice on the first pair without one."""
        le = self.le if lower else self.le.T
        not_le = (~le).astype(np.int64)
        table = np.empty((self.n, self.n), dtype=np.int64)
        for x in range(self.n):
            # bounds[y, z]: z is a lower (upper) bound of x and y
            bounds = le[:, x][None, :] & le.T
            beaten = bounds.astype(np.int64) @ not_le
            best = bounds & (beaten == 0)
            counts = best.sum(axis=1)
            if (counts != 1).any():
                y = int(np.argmax(counts != 1))
                kind = "greatest lower bound" if lower else "least upper bound"
                raise NotALattice(f"no {kind} for {self.elements[x]}, {self.elements[y]}",
                                  pair=self._names(x, y))
            table[x] = best.argmax(axis=1)
        return table

    def _check_ortho(self):
        o = self.ortho
        if o.shape != (self.n,) or o.min() < 0 or o.max() >= self.n:
            raise NotOrtholattice("ortho maps elements to elements")
        bad = np.flatnonzero(o[o] != np.arange(self.n))
        if len(bad):
            raise NotOrtholattice("ortho is an involution", witness={"p": self.elements[bad[0]]})
        reversed_le = self.le & ~self.le[np.ix_(o, o)].T
        if reversed_le.any():
            p, q = np.argwhere(reversed_le)[0]
            raise NotOrtholattice("p <= q implies q' <= p'", witness=dict(zip("pq", self._names(p, q))))
        idx = np.arange(self.n)
        bad = np.flatnonzero(self.meet_table[idx, o] != self.bottom)
        if len(bad):
            raise NotOrtholattice("p ^ p' = 0", witness={"p": self.elements[bad[0]]})
        bad = np.flatnonzero(self.join_table[idx, o] != self.top)
        if len(bad):
            raise NotOrtholattice("p v p' = 1", witness={"p": self.elements[bad[0]]})

    # ===== ACCESS =====

    def _names(self, *positions) -> Tuple[str, ...]:
        return tuple(self.elements[int(p)] for p in positions)

    def element(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownName(f"{self.name} has no element {name!r}") from None

    def name_of(self, p: int) -> str:
        return self.elements[int(p)]

    def meet(self, p: int, q: int) -> int:
        return int(self.meet_table[p, q])

    def join(self, p: int, q: int) -> int:
        return int(self.join_table[p, q])

    def complement(self, p: int) -> int:
        return int(self.ortho[p])

    @property
    def atoms(self) -> List[str]:
        above_bottom = self.le[self.bottom].copy()
        above_bottom[self.bottom] = False
        strictly = self.le & ~np.eye(self.n, dtype=bool)
        # q is an atom when no other non-bottom element sits below it
        return [self.elements[q] for q in np.flatnonzero(above_bottom)
                if not (above_bottom & strictly[:, q]).any()]

    def algebra(self) -> "ModelAlgebra":
        return ModelAlgebra(self)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Model({self.name!r}, {self.n} elements)"


class ModelAlgebra(Algebra):
    """Table lookups over numpy index arrays, so one Program.run evaluates a whole block."""

    def __init__(self, model: Model):
        self.model = model
        self._n = model.n

    @property
    def name(self) -> str:
        return self.model.name

    def bottom(self):
        return self.model.bottom

    def top(self):
        return self.model.top

    def complement(self, x):
        return self.model.ortho[x]

    def meet(self, x, y):
        return self.model.meet_flat[np.asarray(x) * self._n + y]

    def join(self, x, y):
        return self.model.join_flat[np.asarray(x) * self._n + y]

    def equal(self, x, y):
        return np.equal(x, y)


# ===== TEXT FORMAT =====

def _parse(source: str) -> dict:
    parsed = {"name": None, "elements": None, "bottom": None, "top": None,
            "covers": [], "ortho": [], "ended": False}
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if parsed["ended"]:
            raise FormatError("content after 'end'", lineno)
        directive, *args = line.split()
        if directive not in DIRECTIVES:
            raise FormatError(f"unknown directive {directive!r}", lineno)

        if directive == "end":
            if args:
                raise FormatError("'end' takes no arguments", lineno)
            parsed["ended"] = True
            continue
        if directive == "elements":
            if parsed["elements"] is not None:
                raise FormatError("elements given twice", lineno)
            if not args or len(set(args)) != len(args):
                raise FormatError("elements must be a non-empty list of distinct names", lineno)
            parsed["elements"] = args
            continue
        if directive == "model":
            if len(args) != 1:
                raise FormatError("'model' takes one name", lineno)
            parsed["name"] = args[0]
            continue

        known = set(parsed["elements"] or ())
        if parsed["elements"] is None:
            raise FormatError(f"'{directive}' before 'elements'", lineno)
        expected = 1 if directive in ("bottom", "top") else 2
        if len(args) != expected:
            raise FormatError(f"'{directive}' takes {expected} argument(s)", lineno)
        for a in args:
            if a not in known:
                raise FormatError(f"unknown element {a!r}", lineno)
        if directive in ("bottom", "top"):
            parsed[directive] = args[0]
        elif directive == "cover":
            parsed["covers"].append(tuple(args))
        else:
            parsed["ortho"].append(tuple(args))

    if not parsed["ended"]:
        raise FormatError("missing 'end'")
    for key in ("name", "elements", "bottom", "top"):
        if parsed[key] is None:
            raise FormatError(f"missing '{key if key != 'name' else 'model'}'")
    return parsed


def load(source: str) -> Model:
    """Parse and fully validate a model text."""
    parsed = _parse(source)
    m = Model.from_covers(parsed["name"], parsed["elements"], parsed["covers"], parsed["ortho"])
    if m.name_of(m.bottom) != parsed["bottom"] or m.name_of(m.top) != parsed["top"]:
        raise NotALattice(
            f"declared bounds {parsed['bottom']}/{parsed['top']} differ from the order's "
            f"{m.name_of(m.bottom)}/{m.name_of(m.top)}"
        )
    return m


def load_file(path: str) -> Model:
    with open(path, "r", encoding="utf-8") as f:
        source = f.read()
    logger.debug("loading %s", path)
    return load(source)


def data_path(*parts: str) -> str:
    return os.path.join(os.path.dirname(os.path.dirname(__file__)), "data", *parts)
