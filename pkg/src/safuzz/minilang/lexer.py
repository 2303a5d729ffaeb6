"""Tokenizer for MiniLang source text."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

KEYWORDS = {
    "fn", "let", "if", "else", "while", "for", "in", "return",
    "print", "read", "trunc32", "true", "false",
}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>//[^\n]*)
  | (?P<nl>\n)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\.\.|==|!=|<=|>=|&&|\|\||[-+*/%<>=!(){}\[\];,])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", keyword text, or operator text
    text: str
    line: int
    col: int


def tokenize(source: str) -> list[Token]:
    """Token stream for `source`; raises ParseError on an illegal character."""
    tokens: list[Token] = []
    line, line_start = 1, 0
    pos = 0
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ParseError(line, pos - line_start + 1,
                             f"unexpected character {source[pos]!r}")
        pos = m.end()
        kind = m.lastgroup
        if kind == "ws" or kind == "comment":
            continue
        if kind == "nl":
            line += 1
            line_start = pos
            continue
        text = m.group()
        col = m.start() - line_start + 1
        if kind == "ident" and text in KEYWORDS:
            kind = text
        elif kind == "op":
            kind = text
        tokens.append(Token(kind, text, line, col))
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens
