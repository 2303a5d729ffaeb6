"""Static control-flow edges for MiniLang programs.

Edges use the same integer encoding the interpreter emits at runtime
(`(pred << EDGE_SHIFT) | succ`), so `outcome.edges_hit` is always a
subset of `static_edges(ast)` for any input. The flow model is
statement-granular: each statement is one flow node; loop headers are
re-entered on every iteration; every function contributes synthetic
entry and exit nodes.
"""

from __future__ import annotations

from . import ast_nodes as A
from .interp import EDGE_SHIFT


def _encode(u: int, v: int) -> int:
    return (u << EDGE_SHIFT) | v


def _walk_seq(stmts: list, preds: set, exit_id: int, edges: set) -> set:
    """Add edges for a statement list entered from `preds`; returns the set
    of nodes that flow out of the list."""
    current = set(preds)
    for s in stmts:
        for p in current:
            edges.add(_encode(p, s.nid))
        if isinstance(s, (A.Let, A.Assign, A.IndexAssign, A.Print, A.ExprStmt)):
            current = {s.nid}
        elif isinstance(s, A.Return):
            edges.add(_encode(s.nid, exit_id))
            current = set()
        elif isinstance(s, A.If):
            then_out = _walk_seq(s.then_body, {s.nid}, exit_id, edges)
            if s.else_body is None:
                current = then_out | {s.nid}
            else:
                else_out = _walk_seq(s.else_body, {s.nid}, exit_id, edges)
                current = then_out | else_out
        elif isinstance(s, (A.While, A.For)):
            body = s.body
            body_out = _walk_seq(body, {s.nid}, exit_id, edges)
            for b in body_out:
                edges.add(_encode(b, s.nid))  # back edge
            current = {s.nid}
        else:
            raise TypeError(f"unknown statement node {type(s).__name__}")
    return current


def static_edges(program: A.Program) -> frozenset:
    """Every control-flow edge any execution could traverse."""
    edges: set = set()
    for fn in program.functions:
        out = _walk_seq(fn.body, {fn.entry_id}, fn.exit_id, edges)
        for p in out:
            edges.add(_encode(p, fn.exit_id))
    return frozenset(edges)


def decode_edge(edge: int) -> tuple[int, int]:
    return edge >> EDGE_SHIFT, edge & ((1 << EDGE_SHIFT) - 1)
