"""
Error types shared by all OpenLattice modules.
The CLI maps every LatticeError to exit code 2.
"""


class LatticeError(Exception):
    """Base class for all library errors."""


class TermSyntaxError(LatticeError):
    """Malformed term text. `position` is the 0-based character offset."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class AmbiguityError(TermSyntaxError):
    """Non-associative connectives chained without parentheses."""


class TooManyVariables(LatticeError):
    pass


class RangeError(LatticeError):
    pass


class FormatError(LatticeError):
    """Malformed model text. `line` is 1-based."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotALattice(LatticeError):
    def __init__(self, message, pair=None):
        self.pair = pair
        super().__init__(message)


class NotOrtholattice(LatticeError):
    def __init__(self, law, witness=None):
        self.law = law
        self.witness = witness
        super().__init__(f"ortholattice law violated: {law} (witness {witness})")


class UnknownName(LatticeError):
    pass


class DimensionMismatch(LatticeError):
    pass
