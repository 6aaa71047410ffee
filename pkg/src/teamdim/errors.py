"""Exception types shared by every module."""

from __future__ import annotations


class TeamDimError(Exception):
    """Base class for all errors raised by the library."""


class BaseMismatchError(TeamDimError):
    pass


class NotAMemberError(TeamDimError):
    pass


class NotASubfamilyError(TeamDimError):
    pass


class EmptyFamilyError(TeamDimError):
    pass


class CapExceededError(TeamDimError):
    """An enumeration would exceed the size cap of the operation."""


class BudgetExceededError(TeamDimError):
    """A search ran out of its node or wall-clock budget."""


class ParseError(TeamDimError):
    """Malformed textual input. Carries an optional 1-based position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class ArityError(TeamDimError):
    pass


class UnsupportedError(TeamDimError):
    pass
