"""Exception hierarchy shared by every module."""

from __future__ import annotations


class MalformedInput(ValueError):
    """Input that does not describe a well-formed object.

    Parse errors carry a 1-based ``line`` and ``column`` when known.
    """

    def __init__(
        self,
        message: str,
        line: int | None = None,
        column: int | None = None,
        source: str | None = None,
    ):
        self.line = line
        self.column = column
        self.source = source
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        if source is not None:
            message = f"{source}: {message}"
        super().__init__(message)


class InconsistencyError(RuntimeError):
    """A result that a theorem rules out was observed (a bug or a bad presentation)."""


class BoundsExceeded(ValueError):
    """A configured size limit was exceeded."""
