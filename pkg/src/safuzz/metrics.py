"""Static complexity features extracted from MiniLang programs.

Six features feed the vulnerability predictor: raw size (loc), decision
density (cyclomatic), nesting-weighted readability cost (cognitive), and
the three Halstead measures (volume, difficulty, effort) derived from
operator/operand tallies.

Classification used for the Halstead tallies (pinned in docs/minilang.md
so fixtures stay stable):

  operators  keywords (fn, let, if, else, while, for, in, return, print,
             read, trunc32), assignment `=`, arithmetic / comparison /
             boolean symbols, `..`, index brackets `[]`, array fill
             `[;]`, and call parentheses `()`
  operands   identifiers (including definition names, parameters, and
             assignment targets) and literals (integers, true/false)

Cyclomatic complexity is `decision points + 1` per function, summed over
functions; decision points are if/while/for plus `&&`/`||`. Cognitive
complexity charges `1 + nesting depth` for each if/while/for (an
`else if` chain link charges a flat 1), plus 1 per recursion cycle in
the call graph.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .minilang import ast_nodes as A


@dataclass(frozen=True)
class StaticFeatures:
    loc: int
    cyclomatic: int
    cognitive: int
    halstead_volume: float
    halstead_difficulty: float
    halstead_effort: float

    COLUMNS = ("loc", "cyclomatic", "cognitive",
               "halstead_volume", "halstead_difficulty", "halstead_effort")

    def as_tuple(self) -> tuple:
        return (self.loc, self.cyclomatic, self.cognitive,
                self.halstead_volume, self.halstead_difficulty,
                self.halstead_effort)


def count_loc(source: str) -> int:
    """Non-blank, non-comment source lines."""
    n = 0
    for line in source.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("//"):
            n += 1
    return n


# --- tallies -------------------------------------------------------------------


class _Tally:
    def __init__(self):
        self.operators: Counter = Counter()
        self.operands: Counter = Counter()
        self.decisions = 0

    def op(self, symbol: str) -> None:
        self.operators[symbol] += 1

    def operand(self, text: str) -> None:
        self.operands[text] += 1

    def expr(self, e) -> None:
        if isinstance(e, A.IntLit):
            self.operand(str(e.value))
        elif isinstance(e, A.BoolLit):
            self.operand("true" if e.value else "false")
        elif isinstance(e, A.Var):
            self.operand(e.name)
        elif isinstance(e, A.Read):
            self.op("read")
            self.op("()")
        elif isinstance(e, A.Trunc32):
            self.op("trunc32")
            self.op("()")
            self.expr(e.operand)
        elif isinstance(e, A.Index):
            self.op("[]")
            self.operand(e.name)
            self.expr(e.index)
        elif isinstance(e, A.ArrayFill):
            self.op("[;]")
            self.expr(e.value)
            self.expr(e.length)
        elif isinstance(e, A.Unary):
            self.op(e.op)
            self.expr(e.operand)
        elif isinstance(e, A.Binary):
            self.op(e.op)
            if e.op in ("&&", "||"):
                self.decisions += 1
            self.expr(e.left)
            self.expr(e.right)
        elif isinstance(e, A.Call):
            self.op("()")
            self.operand(e.name)
            for a in e.args:
                self.expr(a)
        else:
            raise TypeError(f"unknown expression node {type(e).__name__}")

    def stmts(self, body: list) -> None:
        for s in body:
            if isinstance(s, A.Let):
                self.op("let")
                self.op("=")
                self.operand(s.name)
                self.expr(s.expr)
            elif isinstance(s, A.Assign):
                self.op("=")
                self.operand(s.name)
                self.expr(s.expr)
            elif isinstance(s, A.IndexAssign):
                self.op("=")
                self.op("[]")
                self.operand(s.name)
                self.expr(s.index)
                self.expr(s.expr)
            elif isinstance(s, A.If):
                self.op("if")
                self.decisions += 1
                self.expr(s.cond)
                self.stmts(s.then_body)
                if s.else_body is not None:
                    self.op("else")
                    self.stmts(s.else_body)
            elif isinstance(s, A.While):
                self.op("while")
                self.decisions += 1
                self.expr(s.cond)
                self.stmts(s.body)
            elif isinstance(s, A.For):
                self.op("for")
                self.op("in")
                self.op("..")
                self.decisions += 1
                self.operand(s.var)
                self.expr(s.lo)
                self.expr(s.hi)
                self.stmts(s.body)
            elif isinstance(s, A.Return):
                self.op("return")
                if s.expr is not None:
                    self.expr(s.expr)
            elif isinstance(s, A.Print):
                self.op("print")
                self.op("()")
                self.expr(s.expr)
            elif isinstance(s, A.ExprStmt):
                self.expr(s.expr)
            else:
                raise TypeError(f"unknown statement node {type(s).__name__}")


def cyclomatic_complexity(program: A.Program) -> int:
    total = 0
    for fn in program.functions:
        t = _Tally()
        t.stmts(fn.body)
        total += t.decisions + 1
    return total


def _cognitive_stmts(body: list, depth: int) -> int:
    score = 0
    for s in body:
        if isinstance(s, A.If):
            score += 1 + depth
            score += _cognitive_stmts(s.then_body, depth + 1)
            chain = s.else_body
            while chain is not None:
                if len(chain) == 1 and isinstance(chain[0], A.If):
                    # `else if` link: flat +1, no extra nesting for its body
                    score += 1
                    score += _cognitive_stmts(chain[0].then_body, depth + 1)
                    chain = chain[0].else_body
                else:
                    score += _cognitive_stmts(chain, depth + 1)
                    chain = None
        elif isinstance(s, (A.While, A.For)):
            score += 1 + depth
            score += _cognitive_stmts(s.body, depth + 1)
    return score


def _call_targets(body: list, acc: set) -> None:
    def from_expr(e):
        if isinstance(e, A.Call):
            acc.add(e.name)
            for a in e.args:
                from_expr(a)
        elif isinstance(e, (A.Unary, A.Trunc32)):
            from_expr(e.operand)
        elif isinstance(e, A.Binary):
            from_expr(e.left)
            from_expr(e.right)
        elif isinstance(e, A.Index):
            from_expr(e.index)
        elif isinstance(e, A.ArrayFill):
            from_expr(e.value)
            from_expr(e.length)

    for s in body:
        if isinstance(s, (A.Let, A.Assign, A.Print, A.ExprStmt)):
            from_expr(s.expr)
        elif isinstance(s, A.IndexAssign):
            from_expr(s.index)
            from_expr(s.expr)
        elif isinstance(s, A.If):
            from_expr(s.cond)
            _call_targets(s.then_body, acc)
            if s.else_body is not None:
                _call_targets(s.else_body, acc)
        elif isinstance(s, A.While):
            from_expr(s.cond)
            _call_targets(s.body, acc)
        elif isinstance(s, A.For):
            from_expr(s.lo)
            from_expr(s.hi)
            _call_targets(s.body, acc)
        elif isinstance(s, A.Return) and s.expr is not None:
            from_expr(s.expr)


def recursion_cycles(program: A.Program) -> int:
    """Number of call-graph cycles (strongly connected components with a
    cycle, including self-loops)."""
    graph: dict[str, set] = {}
    for fn in program.functions:
        targets: set = set()
        _call_targets(fn.body, targets)
        graph[fn.name] = {t for t in targets if t != fn.name}
        graph.setdefault(fn.name, set())
        if fn.name in targets:
            graph[fn.name].add(fn.name)  # keep self-loop

    # Tarjan SCC, iterative
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set = set()
    stack: list[str] = []
    counter = [0]
    cycles = 0

    def strongconnect(root: str):
        nonlocal cycles
        work = [(root, iter(sorted(graph.get(root, ()))))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in graph:
                    continue
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(graph.get(w, ())))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                if len(comp) > 1 or v in graph.get(v, ()):
                    cycles += 1

    for name in sorted(graph):
        if name not in index:
            strongconnect(name)
    return cycles


def cognitive_complexity(program: A.Program) -> int:
    total = sum(_cognitive_stmts(fn.body, 0) for fn in program.functions)
    return total + recursion_cycles(program)


def halstead(program: A.Program) -> tuple[float, float, float]:
    """(volume, difficulty, effort) from program-wide tallies."""
    t = _Tally()
    for fn in program.functions:
        t.op("fn")
        t.operand(fn.name)
        for p in fn.params:
            t.operand(p)
        t.stmts(fn.body)
    eta1 = len(t.operators)
    eta2 = len(t.operands)
    n1 = sum(t.operators.values())
    n2 = sum(t.operands.values())
    eta = eta1 + eta2
    n = n1 + n2
    volume = n * math.log2(eta) if eta > 0 else 0.0
    difficulty = (eta1 / 2.0) * (n2 / eta2) if eta2 > 0 else 0.0
    effort = difficulty * volume
    return volume, difficulty, effort


def extract_static(ast: A.Program, source: str) -> StaticFeatures:
    volume, difficulty, effort = halstead(ast)
    return StaticFeatures(
        loc=count_loc(source),
        cyclomatic=cyclomatic_complexity(ast),
        cognitive=cognitive_complexity(ast),
        halstead_volume=volume,
        halstead_difficulty=difficulty,
        halstead_effort=effort,
    )
