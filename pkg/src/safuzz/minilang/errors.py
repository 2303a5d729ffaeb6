"""Error types shared by the MiniLang front end."""

from __future__ import annotations


class ParseError(Exception):
    """A single syntax or name-resolution error with source position."""

    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class ParseFailure(Exception):
    """Raised by parse(); carries every ParseError found before giving up."""

    def __init__(self, errors: list[ParseError]):
        super().__init__("; ".join(str(e) for e in errors))
        self.errors = errors
