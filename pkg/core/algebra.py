"""
Algebra - Abstract base class for the structures a compiled term runs on.
Free OML elements, finite model tables and exact subspaces all plug in here.
"""
from abc import ABC, abstractmethod


class Algebra(ABC):
    """Bounded lattice with an orthocomplement, as seen by Program.run()."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Human-readable name of the structure."""
        pass

    @abstractmethod
    def bottom(self):
        pass

    @abstractmethod
    def top(self):
        pass

    @abstractmethod
    def complement(self, x):
        pass

    @abstractmethod
    def meet(self, x, y):
        pass

    @abstractmethod
    def join(self, x, y):
        pass

    def equal(self, x, y):
        """Equality of values; vectorized algebras return arrays."""
        return x == y

    def le(self, x, y):
        """x <= y, derived from the meet."""
        return self.equal(self.meet(x, y), x)
