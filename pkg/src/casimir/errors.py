"""Exception types shared across the package."""

from __future__ import annotations


class CasimirError(Exception):
    """Base class for all package errors."""


class ParseError(CasimirError, ValueError):
    """Syntax or semantic error in an input file or string.

    ``source`` and ``line`` are optional and, when set, are prefixed to the
    message in ``path:line: message`` form.
    """

    token: int | None = None  # offending token index, set by the expression parser

    def __init__(self, message: str, source: str | None = None, line: int | None = None):
        self.message = message
        self.source = source
        self.line = line
        super().__init__(str(self))

    def __str__(self) -> str:
        where = ""
        if self.source is not None:
            where = f"{self.source}:"
            if self.line is not None:
                where += f"{self.line}:"
            where += " "
        elif self.line is not None:
            where = f"line {self.line}: "
        return where + self.message

    def located(self, source: str | None = None, line: int | None = None) -> "ParseError":
        return ParseError(
            self.message,
            source if source is not None else self.source,
            line if line is not None else self.line,
        )


class DegreeLimitError(CasimirError, ValueError):
    """An enveloping-algebra element exceeded the configured degree cap."""
