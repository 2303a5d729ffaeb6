"""Canonical pretty-printer for MiniLang ASTs.

Printing then re-parsing yields a structurally identical AST (the
round-trip property); printing is also the normal form used when corpus
transforms emit rewritten program text.
"""

from __future__ import annotations

from . import ast_nodes as A

_PRECEDENCE = {
    "||": 1, "&&": 2,
    "==": 3, "!=": 3, "<": 3, "<=": 3, ">": 3, ">=": 3,
    "+": 4, "-": 4,
    "*": 5, "/": 5, "%": 5,
}
_UNARY_PREC = 6


def _expr(e: A.Expr, parent_prec: int = 0) -> str:
    if isinstance(e, A.IntLit):
        return str(e.value)
    if isinstance(e, A.BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, A.Var):
        return e.name
    if isinstance(e, A.Read):
        return "read()"
    if isinstance(e, A.Trunc32):
        return f"trunc32({_expr(e.operand)})"
    if isinstance(e, A.Index):
        return f"{e.name}[{_expr(e.index)}]"
    if isinstance(e, A.ArrayFill):
        return f"[{_expr(e.value)}; {_expr(e.length)}]"
    if isinstance(e, A.Call):
        args = ", ".join(_expr(a) for a in e.args)
        return f"{e.name}({args})"
    if isinstance(e, A.Unary):
        inner = _expr(e.operand, _UNARY_PREC)
        text = f"{e.op}{inner}"
        return f"({text})" if parent_prec > _UNARY_PREC else text
    if isinstance(e, A.Binary):
        prec = _PRECEDENCE[e.op]
        # comparisons are non-associative: parenthesize a comparison operand
        left_prec = prec + 1 if prec == 3 else prec
        left = _expr(e.left, left_prec)
        # left-associative chain: right side needs strictly higher precedence
        right = _expr(e.right, prec + 1)
        text = f"{left} {e.op} {right}"
        return f"({text})" if parent_prec > prec else text
    raise TypeError(f"unknown expression node {type(e).__name__}")


def _stmt(s: A.Stmt, indent: int, out: list[str]) -> None:
    pad = "    " * indent
    if isinstance(s, A.Let):
        out.append(f"{pad}let {s.name} = {_expr(s.expr)};")
    elif isinstance(s, A.Assign):
        out.append(f"{pad}{s.name} = {_expr(s.expr)};")
    elif isinstance(s, A.IndexAssign):
        out.append(f"{pad}{s.name}[{_expr(s.index)}] = {_expr(s.expr)};")
    elif isinstance(s, A.If):
        out.append(f"{pad}if {_expr(s.cond)} {{")
        _body(s.then_body, indent + 1, out)
        if s.else_body is None:
            out.append(f"{pad}}}")
        elif len(s.else_body) == 1 and isinstance(s.else_body[0], A.If):
            out.append(f"{pad}}} else " + _chain_if(s.else_body[0], indent))
        else:
            out.append(f"{pad}}} else {{")
            _body(s.else_body, indent + 1, out)
            out.append(f"{pad}}}")
    elif isinstance(s, A.While):
        out.append(f"{pad}while {_expr(s.cond)} {{")
        _body(s.body, indent + 1, out)
        out.append(f"{pad}}}")
    elif isinstance(s, A.For):
        out.append(f"{pad}for {s.var} in {_expr(s.lo)}..{_expr(s.hi)} {{")
        _body(s.body, indent + 1, out)
        out.append(f"{pad}}}")
    elif isinstance(s, A.Return):
        if s.expr is None:
            out.append(f"{pad}return;")
        else:
            out.append(f"{pad}return {_expr(s.expr)};")
    elif isinstance(s, A.Print):
        out.append(f"{pad}print({_expr(s.expr)});")
    elif isinstance(s, A.ExprStmt):
        out.append(f"{pad}{_expr(s.expr)};")
    else:
        raise TypeError(f"unknown statement node {type(s).__name__}")


def _chain_if(s: A.If, indent: int) -> str:
    # renders `else if` chains without extra nesting; returns the text from
    # "if" onward, appending body lines through the shared buffer trick
    buf: list[str] = []
    _stmt(s, indent, buf)
    head = buf[0].lstrip()
    rest = buf[1:]
    if rest:
        return head + "\n" + "\n".join(rest)
    return head


def _body(stmts: list, indent: int, out: list[str]) -> None:
    for s in stmts:
        _stmt(s, indent, out)


def print_program(program: A.Program) -> str:
    out: list[str] = []
    for i, fn in enumerate(program.functions):
        if i:
            out.append("")
        params = ", ".join(fn.params)
        out.append(f"fn {fn.name}({params}) {{")
        _body(fn.body, 1, out)
        out.append("}")
    return "\n".join(out) + "\n"
