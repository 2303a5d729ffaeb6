"""MiniLang: the deterministic imperative substrate under test.

Sources use extension `.ml0`; the grammar and semantics are documented in
docs/minilang.md.
"""

from .ast_nodes import Program, FuncDef
from .cfg import decode_edge, static_edges
from .errors import ParseError, ParseFailure
from .interp import (
    ArithEvent,
    CRASH_KINDS,
    ExecutionOutcome,
    Limits,
    compile_program,
    execute,
    in_deep_stack,
    run_in_deep_stack,
)
from .parser import parse
from .printer import print_program

__all__ = [
    "ArithEvent",
    "CRASH_KINDS",
    "ExecutionOutcome",
    "FuncDef",
    "Limits",
    "ParseError",
    "ParseFailure",
    "Program",
    "compile_program",
    "decode_edge",
    "execute",
    "in_deep_stack",
    "parse",
    "print_program",
    "run_in_deep_stack",
    "static_edges",
]
