"""Recursive-descent parser and name resolver for MiniLang.

parse() returns a resolved Program or raises ParseFailure carrying one or
more ParseErrors (line/column/expected-token). Resolution assigns a flat
per-function slot index to every variable; variables are function-scoped
(a `let` anywhere in a function declares the name for the whole function,
re-`let` of the same name reuses the slot).
"""

from __future__ import annotations

from . import ast_nodes as A
from .errors import ParseError, ParseFailure
from .lexer import Token, tokenize

_CMP_OPS = ("==", "!=", "<", "<=", ">", ">=")
_BUILTIN_NAMES = frozenset({"read", "print", "trunc32"})


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self._next_id = 0

    # -- token helpers -------------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def check(self, kind: str) -> bool:
        return self.peek().kind == kind

    def match(self, kind: str) -> Token | None:
        if self.check(kind):
            return self.advance()
        return None

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            want = what or f"'{kind}'"
            raise ParseError(tok.line, tok.col,
                             f"expected {want}, found {tok.text or 'end of input'!r}")
        return self.advance()

    def nid(self) -> int:
        self._next_id += 1
        return self._next_id

    # -- grammar -------------------------------------------------------------

    def program(self) -> A.Program:
        functions = []
        while not self.check("eof"):
            functions.append(self.func_def())
        prog = A.Program(functions=functions, nid=0)
        return prog

    def func_def(self) -> A.FuncDef:
        self.expect("fn", "'fn'")
        name = self.expect("ident", "function name").text
        self.expect("(")
        params = []
        if not self.check(")"):
            params.append(self.expect("ident", "parameter name").text)
            while self.match(","):
                params.append(self.expect("ident", "parameter name").text)
        self.expect(")")
        fid = self.nid()
        body = self.block()
        return A.FuncDef(name=name, params=params, body=body, nid=fid,
                         entry_id=self.nid(), exit_id=self.nid())

    def block(self) -> list:
        self.expect("{")
        stmts = []
        while not self.check("}"):
            if self.check("eof"):
                tok = self.peek()
                raise ParseError(tok.line, tok.col, "expected '}', found end of input")
            stmts.append(self.statement())
        self.expect("}")
        return stmts

    def statement(self) -> A.Stmt:
        tok = self.peek()
        if tok.kind == "let":
            self.advance()
            name = self.expect("ident", "variable name").text
            self.expect("=")
            expr = self.expression()
            self.expect(";")
            return A.Let(name=name, expr=expr, nid=self.nid())
        if tok.kind == "if":
            return self.if_statement()
        if tok.kind == "while":
            self.advance()
            nid = self.nid()
            cond = self.expression()
            body = self.block()
            return A.While(cond=cond, body=body, nid=nid)
        if tok.kind == "for":
            self.advance()
            nid = self.nid()
            var = self.expect("ident", "loop variable").text
            self.expect("in", "'in'")
            lo = self.expression()
            self.expect("..", "'..'")
            hi = self.expression()
            body = self.block()
            return A.For(var=var, lo=lo, hi=hi, body=body, nid=nid)
        if tok.kind == "return":
            self.advance()
            nid = self.nid()
            expr = None
            if not self.check(";"):
                expr = self.expression()
            self.expect(";")
            return A.Return(expr=expr, nid=nid)
        if tok.kind == "print":
            self.advance()
            nid = self.nid()
            self.expect("(")
            expr = self.expression()
            self.expect(")")
            self.expect(";")
            return A.Print(expr=expr, nid=nid)
        if tok.kind == "ident":
            # assignment, index assignment, or expression statement (call)
            nxt = self.tokens[self.pos + 1]
            if nxt.kind == "=":
                name = self.advance().text
                self.advance()
                expr = self.expression()
                self.expect(";")
                return A.Assign(name=name, expr=expr, nid=self.nid())
            if nxt.kind == "[":
                save = self.pos
                name = self.advance().text
                self.advance()
                index = self.expression()
                self.expect("]")
                if self.match("="):
                    expr = self.expression()
                    self.expect(";")
                    return A.IndexAssign(name=name, index=index, expr=expr,
                                         nid=self.nid())
                self.pos = save  # plain index expression statement
        expr = self.expression()
        self.expect(";")
        return A.ExprStmt(expr=expr, nid=self.nid())

    def if_statement(self) -> A.If:
        self.expect("if")
        nid = self.nid()
        cond = self.expression()
        then_body = self.block()
        else_body = None
        if self.match("else"):
            if self.check("if"):
                else_body = [self.if_statement()]
            else:
                else_body = self.block()
        return A.If(cond=cond, then_body=then_body, else_body=else_body, nid=nid)

    # precedence: || < && < comparison < add < mul < unary < postfix
    def expression(self) -> A.Expr:
        return self.or_expr()

    def or_expr(self) -> A.Expr:
        left = self.and_expr()
        while self.check("||"):
            self.advance()
            right = self.and_expr()
            left = A.Binary(op="||", left=left, right=right, nid=self.nid())
        return left

    def and_expr(self) -> A.Expr:
        left = self.cmp_expr()
        while self.check("&&"):
            self.advance()
            right = self.cmp_expr()
            left = A.Binary(op="&&", left=left, right=right, nid=self.nid())
        return left

    def cmp_expr(self) -> A.Expr:
        left = self.add_expr()
        if self.peek().kind in _CMP_OPS:
            op = self.advance().kind
            right = self.add_expr()
            return A.Binary(op=op, left=left, right=right, nid=self.nid())
        return left

    def add_expr(self) -> A.Expr:
        left = self.mul_expr()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            right = self.mul_expr()
            left = A.Binary(op=op, left=left, right=right, nid=self.nid())
        return left

    def mul_expr(self) -> A.Expr:
        left = self.unary_expr()
        while self.peek().kind in ("*", "/", "%"):
            op = self.advance().kind
            right = self.unary_expr()
            left = A.Binary(op=op, left=left, right=right, nid=self.nid())
        return left

    def unary_expr(self) -> A.Expr:
        if self.peek().kind in ("-", "!"):
            op = self.advance().kind
            operand = self.unary_expr()
            return A.Unary(op=op, operand=operand, nid=self.nid())
        return self.postfix_expr()

    def postfix_expr(self) -> A.Expr:
        expr = self.primary()
        while self.check("["):
            if not isinstance(expr, A.Var):
                tok = self.peek()
                raise ParseError(tok.line, tok.col,
                                 "expected an array name before '['")
            self.advance()
            index = self.expression()
            self.expect("]")
            expr = A.Index(name=expr.name, index=index, nid=self.nid())
        return expr

    def primary(self) -> A.Expr:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return A.IntLit(value=int(tok.text), nid=self.nid())
        if tok.kind in ("true", "false"):
            self.advance()
            return A.BoolLit(value=tok.kind == "true", nid=self.nid())
        if tok.kind == "read":
            self.advance()
            self.expect("(")
            self.expect(")")
            return A.Read(nid=self.nid())
        if tok.kind == "trunc32":
            self.advance()
            self.expect("(")
            operand = self.expression()
            self.expect(")")
            return A.Trunc32(operand=operand, nid=self.nid())
        if tok.kind == "ident":
            name = self.advance().text
            if self.match("("):
                args = []
                if not self.check(")"):
                    args.append(self.expression())
                    while self.match(","):
                        args.append(self.expression())
                self.expect(")")
                return A.Call(name=name, args=args, nid=self.nid())
            return A.Var(name=name, nid=self.nid())
        if tok.kind == "(":
            self.advance()
            expr = self.expression()
            self.expect(")")
            return expr
        if tok.kind == "[":
            self.advance()
            value = self.expression()
            self.expect(";")
            length = self.expression()
            self.expect("]")
            return A.ArrayFill(value=value, length=length, nid=self.nid())
        raise ParseError(tok.line, tok.col,
                         f"expected an expression, found {tok.text or 'end of input'!r}")


# -- resolution --------------------------------------------------------------


def _resolve_function(fn: A.FuncDef, functions: dict[str, A.FuncDef],
                      errors: list[ParseError]) -> None:
    slots: dict[str, int] = {}
    for p in fn.params:
        if p not in slots:
            slots[p] = len(slots)

    def slot_for(name: str, declare: bool) -> int:
        if name in slots:
            return slots[name]
        if declare:
            slots[name] = len(slots)
            return slots[name]
        errors.append(ParseError(0, 0, f"undefined variable '{name}' in fn {fn.name}"))
        slots[name] = len(slots)  # keep going with a fresh slot
        return slots[name]

    def walk_expr(e: A.Expr) -> None:
        if isinstance(e, A.Var):
            e.slot = slot_for(e.name, declare=False)
        elif isinstance(e, A.Index):
            e.slot = slot_for(e.name, declare=False)
            walk_expr(e.index)
        elif isinstance(e, A.Unary):
            walk_expr(e.operand)
        elif isinstance(e, A.Trunc32):
            walk_expr(e.operand)
        elif isinstance(e, A.Binary):
            walk_expr(e.left)
            walk_expr(e.right)
        elif isinstance(e, A.ArrayFill):
            walk_expr(e.value)
            walk_expr(e.length)
        elif isinstance(e, A.Call):
            target = functions.get(e.name)
            if target is None:
                errors.append(ParseError(0, 0, f"call to undefined function '{e.name}'"))
            elif len(target.params) != len(e.args):
                errors.append(ParseError(
                    0, 0, f"'{e.name}' takes {len(target.params)} args, got {len(e.args)}"))
            for a in e.args:
                walk_expr(a)

    def walk_stmts(stmts: list) -> None:
        for s in stmts:
            if isinstance(s, A.Let):
                walk_expr(s.expr)
                s.slot = slot_for(s.name, declare=True)
            elif isinstance(s, A.Assign):
                walk_expr(s.expr)
                s.slot = slot_for(s.name, declare=False)
            elif isinstance(s, A.IndexAssign):
                s.slot = slot_for(s.name, declare=False)
                walk_expr(s.index)
                walk_expr(s.expr)
            elif isinstance(s, A.If):
                walk_expr(s.cond)
                walk_stmts(s.then_body)
                if s.else_body is not None:
                    walk_stmts(s.else_body)
            elif isinstance(s, A.While):
                walk_expr(s.cond)
                walk_stmts(s.body)
            elif isinstance(s, A.For):
                walk_expr(s.lo)
                walk_expr(s.hi)
                s.slot = slot_for(s.var, declare=True)
                walk_stmts(s.body)
            elif isinstance(s, A.Return):
                if s.expr is not None:
                    walk_expr(s.expr)
            elif isinstance(s, (A.Print, A.ExprStmt)):
                walk_expr(s.expr)

    walk_stmts(fn.body)
    fn.n_slots = len(slots)


def resolve(program: A.Program) -> list[ParseError]:
    """Assign variable slots and check that every referenced name exists."""
    errors: list[ParseError] = []
    functions: dict[str, A.FuncDef] = {}
    for fn in program.functions:
        if fn.name in functions:
            errors.append(ParseError(0, 0, f"duplicate function '{fn.name}'"))
        if fn.name in _BUILTIN_NAMES:
            errors.append(ParseError(0, 0, f"'{fn.name}' is a reserved builtin name"))
        functions[fn.name] = fn
    if "solve" not in functions:
        errors.append(ParseError(0, 0, "program must define a solve() entry function"))
    elif functions["solve"].params:
        errors.append(ParseError(0, 0, "solve() must take no parameters"))
    for fn in program.functions:
        _resolve_function(fn, functions, errors)
    return errors


def parse(source: str) -> A.Program:
    """Parse and resolve MiniLang source; raises ParseFailure on any error."""
    if not source.strip():
        raise ParseFailure([ParseError(1, 1, "empty source")])
    try:
        tokens = tokenize(source)
        program = _Parser(tokens).program()
    except ParseError as err:
        raise ParseFailure([err]) from None
    errors = resolve(program)
    if errors:
        raise ParseFailure(errors)
    return program
