"""Exception types shared by every module.

The CLI maps these onto exit codes: ParseError -> 1, PreconditionError -> 2,
CapExceeded -> 3.
"""

from __future__ import annotations


class LpalgError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(LpalgError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class PreconditionError(LpalgError, ValueError):
    """An operation was called outside its domain (cycle where acyclic is needed, ...)."""


class CapExceeded(LpalgError, RuntimeError):
    """A brute-force enumeration would exceed its configured size cap."""
