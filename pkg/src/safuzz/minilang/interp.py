"""Instrumented tree-walking interpreter for MiniLang.

Programs are compiled once into Python closures and can then be executed
many times cheaply. Every execution reports:

  * edge coverage  — control-flow edges actually traversed, encoded as
    `(pred_node_id << EDGE_SHIFT) | node_id` integers,
  * comparison signals — `(cmp_node_id * 3 + outcome_class)` integers,
    the novelty feed that complements edge coverage,
  * arithmetic wrap events — one event per operation whose mathematical
    result left the 64-bit (or, for trunc32, 32-bit) range.

Semantics that matter for reproducibility:
  * integers are 64-bit two's complement; arithmetic wraps and reports,
  * `/` and `%` truncate toward zero; dividing by zero is a crash,
  * `read()` returns 0 once input is exhausted,
  * each executed statement costs one step; loop headers cost one step
    per evaluation; a step budget hit ends the run with `step-limit`,
  * call depth beyond the stack limit is a crash.

Executions are deterministic: identical (program, input, limits) yield
identical outcomes. Instances may be used from different threads but a
single Context is not shared.
"""

from __future__ import annotations

import sys
import threading
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

from . import ast_nodes as A

I64_MIN = -(1 << 63)
I64_MAX = (1 << 63) - 1
U64_MASK = (1 << 64) - 1
I32_MIN = -(1 << 31)
U32_MASK = (1 << 32) - 1

EDGE_SHIFT = 20  # node ids stay below 2**20

MAX_ARRAY_LEN = 1 << 22  # allocation guard; larger fills crash as out-of-bounds
WRAP_EVENT_CAP = 1024  # wrap events recorded per execution (wrap_count is exact)

# Runs that may recurse deeply are routed through a worker thread with a
# large C stack; CPython 3.10 consumes native stack per interpreter frame.
_INLINE_SAFE_DEPTH = 1500
_DEEP_STACK_BYTES = 512 * 1024 * 1024
_PY_FRAMES_PER_CALL = 8

_local = threading.local()


class ArithEvent(NamedTuple):
    node: int
    op: str
    operands: tuple
    wrapped: bool


@dataclass(frozen=True)
class Limits:
    max_steps: int
    max_stack_depth: int = 10_000

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if self.max_stack_depth < 1:
            raise ValueError("max_stack_depth must be >= 1")


@dataclass(frozen=True)
class ExecutionOutcome:
    status: str  # "ok" | "crash" | "step-limit"
    output: tuple
    steps_used: int
    edges_hit: frozenset
    cmp_hits: frozenset
    arith_events: tuple
    wrap_count: int
    crash_kind: Optional[str] = None  # see CRASH_KINDS
    crash_node: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    @property
    def wrapped(self) -> bool:
        return self.wrap_count > 0


CRASH_KINDS = ("array-index-out-of-bounds", "division-by-zero", "stack-depth-exceeded")


class _Signal(Exception):
    pass


class _StepLimit(_Signal):
    pass


class _Return(_Signal):
    pass


class _Crash(_Signal):
    def __init__(self, kind: str, node: int):
        self.kind = kind
        self.node = node


class _Ctx:
    __slots__ = ("steps", "limit", "inp", "pos", "out", "edges", "cmps",
                 "events", "wraps", "depth", "max_depth",
                 "step_limit_exc", "return_exc", "retval")

    def __init__(self, inp, limits: Limits):
        self.steps = 0
        self.limit = limits.max_steps
        self.inp = inp
        self.pos = 0
        self.out = []
        self.edges = set()
        self.cmps = set()
        self.events = []
        self.wraps = 0
        self.depth = 0
        self.max_depth = limits.max_stack_depth
        self.step_limit_exc = _StepLimit()
        self.return_exc = _Return()
        self.retval = 0


class Frame:
    __slots__ = ("slots", "prev")

    def __init__(self, slots, prev):
        self.slots = slots
        self.prev = prev


def _wrap64(v: int) -> int:
    v &= U64_MASK
    return v - (1 << 64) if v > I64_MAX else v


def _record_wrap(ctx: _Ctx, nid: int, op: str, operands: tuple) -> None:
    ctx.wraps += 1
    if len(ctx.events) < WRAP_EVENT_CAP:
        ctx.events.append(ArithEvent(nid, op, operands, True))


# --- expression compilation --------------------------------------------------


def _compile_expr(e: A.Expr, link) -> Callable:
    if isinstance(e, A.IntLit):
        v = e.value
        if v < I64_MIN or v > I64_MAX:
            v = _wrap64(v)
        return lambda frame, ctx, _v=v: _v
    if isinstance(e, A.BoolLit):
        v = 1 if e.value else 0
        return lambda frame, ctx, _v=v: _v
    if isinstance(e, A.Var):
        slot = e.slot
        return lambda frame, ctx, _s=slot: frame.slots[_s]
    if isinstance(e, A.Read):
        def run_read(frame, ctx):
            p = ctx.pos
            if p >= len(ctx.inp):
                return 0
            ctx.pos = p + 1
            return ctx.inp[p]
        return run_read
    if isinstance(e, A.Trunc32):
        inner = _compile_expr(e.operand, link)
        nid = e.nid
        def run_trunc(frame, ctx):
            v = inner(frame, ctx)
            t = v & U32_MASK
            if t >= 1 << 31:
                t -= 1 << 32
            if t != v:
                _record_wrap(ctx, nid, "trunc32", (v,))
            return t
        return run_trunc
    if isinstance(e, A.Index):
        slot, nid = e.slot, e.nid
        idx = _compile_expr(e.index, link)
        def run_index(frame, ctx):
            arr = frame.slots[slot]
            i = idx(frame, ctx)
            if type(arr) is not list or i < 0 or i >= len(arr):
                raise _Crash("array-index-out-of-bounds", nid)
            return arr[i]
        return run_index
    if isinstance(e, A.ArrayFill):
        val = _compile_expr(e.value, link)
        length = _compile_expr(e.length, link)
        nid = e.nid
        def run_fill(frame, ctx):
            n = length(frame, ctx)
            if n < 0 or n > MAX_ARRAY_LEN:
                raise _Crash("array-index-out-of-bounds", nid)
            return [val(frame, ctx)] * n
        return run_fill
    if isinstance(e, A.Unary):
        inner = _compile_expr(e.operand, link)
        nid = e.nid
        if e.op == "!":
            return lambda frame, ctx: 0 if inner(frame, ctx) else 1
        def run_neg(frame, ctx):
            a = inner(frame, ctx)
            v = -a
            if v > I64_MAX:
                w = _wrap64(v)
                _record_wrap(ctx, nid, "neg", (a,))
                return w
            return v
        return run_neg
    if isinstance(e, A.Binary):
        return _compile_binary(e, link)
    if isinstance(e, A.Call):
        arg_fns = tuple(_compile_expr(a, link) for a in e.args)
        nid = e.nid
        cell = link.callable_cell(e.name)
        def run_call(frame, ctx):
            fn = cell[0]
            args = [f(frame, ctx) for f in arg_fns]
            return fn(args, ctx, nid)
        return run_call
    raise TypeError(f"cannot compile expression {type(e).__name__}")


def _compile_binary(e: A.Binary, link) -> Callable:
    lf = _compile_expr(e.left, link)
    op, nid = e.op, e.nid

    if op == "&&":
        rf = _compile_expr(e.right, link)
        return lambda frame, ctx: 1 if lf(frame, ctx) and rf(frame, ctx) else 0
    if op == "||":
        rf = _compile_expr(e.right, link)
        return lambda frame, ctx: 1 if lf(frame, ctx) or rf(frame, ctx) else 0

    rf = _compile_expr(e.right, link)

    if op in ("==", "!=", "<", "<=", ">", ">="):
        base = nid * 3
        test = {
            "==": lambda a, b: a == b, "!=": lambda a, b: a != b,
            "<": lambda a, b: a < b, "<=": lambda a, b: a <= b,
            ">": lambda a, b: a > b, ">=": lambda a, b: a >= b,
        }[op]
        def run_cmp(frame, ctx):
            a = lf(frame, ctx)
            b = rf(frame, ctx)
            if a < b:
                ctx.cmps.add(base)
            elif a == b:
                ctx.cmps.add(base + 1)
            else:
                ctx.cmps.add(base + 2)
            return 1 if test(a, b) else 0
        return run_cmp

    if op == "+":
        def run_add(frame, ctx):
            a = lf(frame, ctx)
            b = rf(frame, ctx)
            v = a + b
            if I64_MIN <= v <= I64_MAX:
                return v
            w = _wrap64(v)
            _record_wrap(ctx, nid, "+", (a, b))
            return w
        return run_add
    if op == "-":
        def run_sub(frame, ctx):
            a = lf(frame, ctx)
            b = rf(frame, ctx)
            v = a - b
            if I64_MIN <= v <= I64_MAX:
                return v
            w = _wrap64(v)
            _record_wrap(ctx, nid, "-", (a, b))
            return w
        return run_sub
    if op == "*":
        def run_mul(frame, ctx):
            a = lf(frame, ctx)
            b = rf(frame, ctx)
            v = a * b
            if I64_MIN <= v <= I64_MAX:
                return v
            w = _wrap64(v)
            _record_wrap(ctx, nid, "*", (a, b))
            return w
        return run_mul
    if op == "/":
        def run_div(frame, ctx):
            a = lf(frame, ctx)
            b = rf(frame, ctx)
            if b == 0:
                raise _Crash("division-by-zero", nid)
            q = a // b
            if q < 0 and q * b != a:
                q += 1  # truncate toward zero
            if q > I64_MAX:  # only INT64_MIN / -1
                w = _wrap64(q)
                _record_wrap(ctx, nid, "/", (a, b))
                return w
            return q
        return run_div
    if op == "%":
        def run_mod(frame, ctx):
            a = lf(frame, ctx)
            b = rf(frame, ctx)
            if b == 0:
                raise _Crash("division-by-zero", nid)
            r = a % b
            if r != 0 and (a < 0) != (b < 0):
                r -= b  # remainder takes the dividend's sign
            return r
        return run_mod
    raise ValueError(f"unknown binary operator {op!r}")


# --- statement compilation ----------------------------------------------------


def _compile_stmt(s: A.Stmt, link) -> Callable:
    nid = s.nid
    if isinstance(s, A.Let) or isinstance(s, A.Assign):
        val = _compile_expr(s.expr, link)
        slot = s.slot
        def run_assign(frame, ctx):
            if ctx.steps >= ctx.limit:
                raise ctx.step_limit_exc
            ctx.steps += 1
            ctx.edges.add((frame.prev << EDGE_SHIFT) | nid)
            frame.prev = nid
            frame.slots[slot] = val(frame, ctx)
        return run_assign
    if isinstance(s, A.IndexAssign):
        idx = _compile_expr(s.index, link)
        val = _compile_expr(s.expr, link)
        slot = s.slot
        def run_idx_assign(frame, ctx):
            if ctx.steps >= ctx.limit:
                raise ctx.step_limit_exc
            ctx.steps += 1
            ctx.edges.add((frame.prev << EDGE_SHIFT) | nid)
            frame.prev = nid
            arr = frame.slots[slot]
            i = idx(frame, ctx)
            if type(arr) is not list or i < 0 or i >= len(arr):
                raise _Crash("array-index-out-of-bounds", nid)
            arr[i] = val(frame, ctx)
        return run_idx_assign
    if isinstance(s, A.If):
        cond = _compile_expr(s.cond, link)
        then_seq = _compile_seq(s.then_body, link)
        else_seq = _compile_seq(s.else_body, link) if s.else_body is not None else None
        def run_if(frame, ctx):
            if ctx.steps >= ctx.limit:
                raise ctx.step_limit_exc
            ctx.steps += 1
            ctx.edges.add((frame.prev << EDGE_SHIFT) | nid)
            frame.prev = nid
            if cond(frame, ctx):
                then_seq(frame, ctx)
            elif else_seq is not None:
                else_seq(frame, ctx)
        return run_if
    if isinstance(s, A.While):
        cond = _compile_expr(s.cond, link)
        body = _compile_seq(s.body, link)
        def run_while(frame, ctx):
            edges = ctx.edges
            while True:
                if ctx.steps >= ctx.limit:
                    raise ctx.step_limit_exc
                ctx.steps += 1
                edges.add((frame.prev << EDGE_SHIFT) | nid)
                frame.prev = nid
                if not cond(frame, ctx):
                    return
                body(frame, ctx)
        return run_while
    if isinstance(s, A.For):
        lo = _compile_expr(s.lo, link)
        hi = _compile_expr(s.hi, link)
        body = _compile_seq(s.body, link)
        slot = s.slot
        def run_for(frame, ctx):
            i = lo(frame, ctx)
            stop = hi(frame, ctx)
            edges = ctx.edges
            slots = frame.slots
            while True:
                if ctx.steps >= ctx.limit:
                    raise ctx.step_limit_exc
                ctx.steps += 1
                edges.add((frame.prev << EDGE_SHIFT) | nid)
                frame.prev = nid
                if i >= stop:
                    return
                slots[slot] = i
                body(frame, ctx)
                i += 1
        return run_for
    if isinstance(s, A.Return):
        val = _compile_expr(s.expr, link) if s.expr is not None else None
        def run_return(frame, ctx):
            if ctx.steps >= ctx.limit:
                raise ctx.step_limit_exc
            ctx.steps += 1
            ctx.edges.add((frame.prev << EDGE_SHIFT) | nid)
            frame.prev = nid
            ctx.retval = val(frame, ctx) if val is not None else 0
            raise ctx.return_exc
        return run_return
    if isinstance(s, A.Print):
        val = _compile_expr(s.expr, link)
        def run_print(frame, ctx):
            if ctx.steps >= ctx.limit:
                raise ctx.step_limit_exc
            ctx.steps += 1
            ctx.edges.add((frame.prev << EDGE_SHIFT) | nid)
            frame.prev = nid
            ctx.out.append(val(frame, ctx))
        return run_print
    if isinstance(s, A.ExprStmt):
        val = _compile_expr(s.expr, link)
        def run_expr(frame, ctx):
            if ctx.steps >= ctx.limit:
                raise ctx.step_limit_exc
            ctx.steps += 1
            ctx.edges.add((frame.prev << EDGE_SHIFT) | nid)
            frame.prev = nid
            val(frame, ctx)
        return run_expr
    raise TypeError(f"cannot compile statement {type(s).__name__}")


def _compile_seq(stmts: list, link) -> Callable:
    fns = tuple(_compile_stmt(s, link) for s in stmts)
    if len(fns) == 0:
        return lambda frame, ctx: None
    if len(fns) == 1:
        return fns[0]
    def run_seq(frame, ctx):
        for f in fns:
            f(frame, ctx)
    return run_seq


class _Linker:
    """Two-phase link so mutually recursive functions can resolve."""

    def __init__(self):
        self.cells: dict[str, list] = {}

    def callable_cell(self, name: str) -> list:
        return self.cells.setdefault(name, [None])


class CompiledProgram:
    def __init__(self, program: A.Program):
        self.program = program
        link = _Linker()
        self._functions: dict[str, Callable] = {}
        for fn in program.functions:
            body = _compile_seq(fn.body, link)
            entry_id, exit_id = fn.entry_id, fn.exit_id
            n_slots, n_params = fn.n_slots, len(fn.params)

            def call(args, ctx, call_nid, _body=body, _entry=entry_id,
                     _exit=exit_id, _n=n_slots, _np=n_params):
                ctx.depth += 1
                if ctx.depth > ctx.max_depth:
                    raise _Crash("stack-depth-exceeded", call_nid)
                slots = [0] * _n
                slots[:_np] = args
                frame = Frame(slots, _entry)
                try:
                    _body(frame, ctx)
                    ctx.edges.add((frame.prev << EDGE_SHIFT) | _exit)
                    rv = 0
                except _Return:
                    ctx.edges.add((frame.prev << EDGE_SHIFT) | _exit)
                    rv = ctx.retval
                ctx.depth -= 1
                return rv

            self._functions[fn.name] = call
            link.callable_cell(fn.name)[0] = call
        self._entry = self._functions["solve"]

    def run(self, inputs, limits: Limits) -> ExecutionOutcome:
        ctx = _Ctx(inputs, limits)
        status, kind, node = "ok", None, None
        try:
            self._entry([], ctx, 0)
        except _StepLimit:
            status = "step-limit"
            ctx.steps = limits.max_steps
        except _Crash as c:
            status, kind, node = "crash", c.kind, c.node
        except RecursionError:
            # host stack exhausted before the language limit: report the
            # language-level crash anyway (only reachable with limits far
            # above the supported default)
            status, kind, node = "crash", "stack-depth-exceeded", 0
        return ExecutionOutcome(
            status=status,
            output=tuple(ctx.out),
            steps_used=ctx.steps,
            edges_hit=frozenset(ctx.edges),
            cmp_hits=frozenset(ctx.cmps),
            arith_events=tuple(ctx.events),
            wrap_count=ctx.wraps,
            crash_kind=kind,
            crash_node=node,
        )


# --- deep-stack execution ----------------------------------------------------


def in_deep_stack() -> bool:
    return getattr(_local, "deep", False)


def run_in_deep_stack(fn: Callable, *args, **kwargs):
    """Run fn in a worker thread with a large native stack.

    Needed for program stack limits in the thousands: each language frame
    costs several CPython frames of native stack on 3.10.
    """
    if in_deep_stack():
        return fn(*args, **kwargs)
    result: dict = {}

    def worker():
        _local.deep = True
        try:
            result["value"] = fn(*args, **kwargs)
        except BaseException as exc:  # propagate to caller
            result["error"] = exc

    old_limit = sys.getrecursionlimit()
    needed = 400_000
    if old_limit < needed:
        sys.setrecursionlimit(needed)
    old_size = threading.stack_size(_DEEP_STACK_BYTES)
    try:
        t = threading.Thread(target=worker, name="deep-stack-exec")
        t.start()
        t.join()
    finally:
        threading.stack_size(old_size)
    if "error" in result:
        raise result["error"]
    return result["value"]


_compiled_cache: dict[int, tuple] = {}


def compile_program(ast: A.Program) -> CompiledProgram:
    """Compile with a small identity-keyed cache (re-executing is the hot path)."""
    key = id(ast)
    hit = _compiled_cache.get(key)
    if hit is not None and hit[0] is ast:
        return hit[1]
    compiled = CompiledProgram(ast)
    if len(_compiled_cache) > 256:
        _compiled_cache.clear()
    _compiled_cache[key] = (ast, compiled)
    return compiled


def execute(ast: A.Program, inputs, limits: Limits) -> ExecutionOutcome:
    """Run `solve()` on `inputs` under `limits`; never raises for program
    behavior — crashes and limit hits are encoded in the outcome."""
    compiled = compile_program(ast)
    if limits.max_stack_depth > _INLINE_SAFE_DEPTH and not in_deep_stack():
        return run_in_deep_stack(compiled.run, list(inputs), limits)
    return compiled.run(list(inputs), limits)
