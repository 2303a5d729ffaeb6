"""AST node definitions for MiniLang.

Every node carries a `nid` (unique integer per parse, assigned by the
parser). Function definitions additionally carry synthetic `entry_id` /
`exit_id` pseudo-nodes used by control-flow edge accounting.

Nodes are plain mutable dataclasses with identity equality (`eq=False`)
so they can be cheaply cloned and rewritten by the corpus transforms and
held in identity-keyed caches by the interpreter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union


@dataclass(eq=False)
class Node:
    nid: int = field(default=-1, kw_only=True)


# --- expressions -----------------------------------------------------------


@dataclass(eq=False)
class IntLit(Node):
    value: int = 0


@dataclass(eq=False)
class BoolLit(Node):
    value: bool = False


@dataclass(eq=False)
class Var(Node):
    name: str = ""
    slot: int = -1  # assigned by the resolver


@dataclass(eq=False)
class Unary(Node):
    op: str = ""  # "-" or "!"
    operand: "Expr" = None


@dataclass(eq=False)
class Binary(Node):
    op: str = ""  # + - * / % == != < <= > >= && ||
    left: "Expr" = None
    right: "Expr" = None


@dataclass(eq=False)
class Index(Node):
    name: str = ""
    index: "Expr" = None
    slot: int = -1


@dataclass(eq=False)
class ArrayFill(Node):
    """`[value; length]` — array of `length` copies of `value`."""

    value: "Expr" = None
    length: "Expr" = None


@dataclass(eq=False)
class Call(Node):
    name: str = ""
    args: list = field(default_factory=list)


@dataclass(eq=False)
class Read(Node):
    """`read()` — consume the next input value (0 once exhausted)."""


@dataclass(eq=False)
class Trunc32(Node):
    """`trunc32(x)` — two's-complement truncation to 32 bits.

    Reports a wrap event whenever truncation changes the value; this is
    how narrow-integer arithmetic is expressed in a 64-bit language.
    """

    operand: "Expr" = None


Expr = Union[IntLit, BoolLit, Var, Unary, Binary, Index, ArrayFill, Call, Read, Trunc32]


# --- statements ------------------------------------------------------------


@dataclass(eq=False)
class Let(Node):
    name: str = ""
    expr: Expr = None
    slot: int = -1


@dataclass(eq=False)
class Assign(Node):
    name: str = ""
    expr: Expr = None
    slot: int = -1


@dataclass(eq=False)
class IndexAssign(Node):
    name: str = ""
    index: Expr = None
    expr: Expr = None
    slot: int = -1


@dataclass(eq=False)
class If(Node):
    cond: Expr = None
    then_body: list = field(default_factory=list)
    else_body: Optional[list] = None  # None means no else branch


@dataclass(eq=False)
class While(Node):
    cond: Expr = None
    body: list = field(default_factory=list)


@dataclass(eq=False)
class For(Node):
    """`for v in lo..hi { ... }` — half-open range, bounds evaluated once."""

    var: str = ""
    lo: Expr = None
    hi: Expr = None
    body: list = field(default_factory=list)
    slot: int = -1


@dataclass(eq=False)
class Return(Node):
    expr: Optional[Expr] = None


@dataclass(eq=False)
class Print(Node):
    expr: Expr = None


@dataclass(eq=False)
class ExprStmt(Node):
    expr: Expr = None


Stmt = Union[Let, Assign, IndexAssign, If, While, For, Return, Print, ExprStmt]


# --- top level --------------------------------------------------------------


@dataclass(eq=False)
class FuncDef(Node):
    name: str = ""
    params: list = field(default_factory=list)
    body: list = field(default_factory=list)
    entry_id: int = -1
    exit_id: int = -1
    n_slots: int = 0


@dataclass(eq=False)
class Program(Node):
    functions: list = field(default_factory=list)

    def function(self, name: str) -> Optional[FuncDef]:
        for f in self.functions:
            if f.name == name:
                return f
        return None

    @property
    def entry(self) -> FuncDef:
        f = self.function("solve")
        if f is None:
            raise ValueError("program has no solve() entry function")
        return f


LOOP_NODES = (While, For)
BRANCH_NODES = (If, While, For)
