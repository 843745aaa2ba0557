"""Exception types raised across the package."""

from __future__ import annotations


class MRCError(Exception):
    """Base class for all package errors."""


# field / linear algebra
class InvalidField(MRCError, ValueError):
    pass


class NoSolution(MRCError):
    """Linear system is inconsistent.

    ``row`` is the index (into the original system) of an equation that
    contradicts the others.
    """

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


class Underdetermined(MRCError):
    pass


# patterns
class EmptyPattern(MRCError, ValueError):
    pass


class NotIrreducible(MRCError, ValueError):
    pass


class NotRegular(MRCError, ValueError):
    pass


class ReplicationBound(MRCError, ValueError):
    pass


class PreconditionFailed(MRCError, ValueError):
    pass


class PatternFormatError(MRCError, ValueError):
    """Malformed pattern / received / code file. Carries a 1-based position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column


# graphs
class BadPartition(MRCError, ValueError):
    pass


class BadRow(MRCError, ValueError):
    pass


class NotSquare(MRCError, ValueError):
    pass


class TooManySubsets(MRCError, ValueError):
    pass


# code construction
class BadDimension(MRCError, ValueError):
    pass


class UnluckyField(MRCError):
    pass


class DecompositionFailure(MRCError):
    def __init__(self, block: str, detail: str = ""):
        super().__init__(f"decomposition check failed for {block}" + (f": {detail}" if detail else ""))
        self.block = block


# recovery
class ShapeError(MRCError, ValueError):
    pass


class NotRecoverable(MRCError):
    pass


class NotACodeword(MRCError):
    def __init__(self, message: str, cell: tuple[int, int] | None = None):
        super().__init__(message)
        self.cell = cell


class DegenerateCode(MRCError, ValueError):
    pass


# oracle
class TooLarge(MRCError, ValueError):
    pass


class TheoremViolation(MRCError):
    def __init__(self, message: str, pattern=None):
        super().__init__(message)
        self.pattern = pattern


class MdsViolation(MRCError):
    pass
