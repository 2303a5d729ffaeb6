"""Seeded random MiniLang program generator for property tests.

Generates programs that always parse and resolve. Termination is not
guaranteed (callers execute under step limits); loops are usually bounded
counter patterns so most programs do terminate.
"""

from __future__ import annotations

import random

_BINOPS = ["+", "-", "*", "/", "%", "==", "!=", "<", "<=", ">", ">="]
_LITERALS = [0, 1, 2, 3, 7, 100, 10**9, 2**31 - 1, 2**62, -5]


class _Gen:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.scalars: list[str] = []
        self.arrays: list[str] = []
        self.helpers: list[tuple[str, int]] = []  # (name, arity)
        self.var_counter = 0

    def fresh(self, prefix: str) -> str:
        self.var_counter += 1
        return f"{prefix}{self.var_counter}"

    def expr(self, depth: int) -> str:
        r = self.rng
        if depth <= 0 or r.random() < 0.4:
            choices = ["lit", "lit"]
            if self.scalars:
                choices += ["var", "var", "var"]
            if self.arrays:
                choices.append("index")
            choices.append("read")
            kind = r.choice(choices)
            if kind == "lit":
                return str(r.choice(_LITERALS))
            if kind == "var":
                return r.choice(self.scalars)
            if kind == "index":
                return f"{r.choice(self.arrays)}[{self.expr(0)}]"
            return "read()"
        kind = r.random()
        if kind < 0.65:
            op = r.choice(_BINOPS)
            return f"({self.expr(depth - 1)} {op} {self.expr(depth - 1)})"
        if kind < 0.75:
            return f"(-{self.expr(depth - 1)})"
        if kind < 0.82:
            return f"(!{self.expr(depth - 1)})"
        if kind < 0.9:
            return f"trunc32({self.expr(depth - 1)})"
        if self.helpers and kind < 0.97:
            name, arity = r.choice(self.helpers)
            args = ", ".join(self.expr(0) for _ in range(arity))
            return f"{name}({args})"
        op = r.choice(["&&", "||"])
        return f"({self.expr(depth - 1)} {op} {self.expr(depth - 1)})"

    def stmt(self, depth: int, lines: list[str], indent: str) -> None:
        r = self.rng
        roll = r.random()
        if roll < 0.28 or not self.scalars:
            name = self.fresh("v")
            lines.append(f"{indent}let {name} = {self.expr(2)};")
            self.scalars.append(name)
        elif roll < 0.42:
            lines.append(f"{indent}{r.choice(self.scalars)} = {self.expr(2)};")
        elif roll < 0.5 and depth > 0:
            lines.append(f"{indent}if {self.expr(1)} {{")
            self.block(depth - 1, r.randint(1, 2), lines, indent + "    ")
            if r.random() < 0.5:
                lines.append(f"{indent}}} else {{")
                self.block(depth - 1, r.randint(1, 2), lines, indent + "    ")
            lines.append(f"{indent}}}")
        elif roll < 0.58 and depth > 0:
            var = self.fresh("i")
            self.scalars.append(var)
            lines.append(f"{indent}for {var} in 0..{r.randint(1, 6)} {{")
            self.block(depth - 1, r.randint(1, 2), lines, indent + "    ")
            lines.append(f"{indent}}}")
        elif roll < 0.64 and depth > 0:
            # bounded while: counter pattern
            var = self.fresh("w")
            self.scalars.append(var)
            lines.append(f"{indent}let {var} = 0;")
            lines.append(f"{indent}while {var} < {r.randint(1, 5)} {{")
            body: list[str] = []
            self.block(depth - 1, 1, body, indent + "    ")
            lines.extend(body)
            lines.append(f"{indent}    {var} = {var} + 1;")
            lines.append(f"{indent}}}")
        elif roll < 0.72:
            name = self.fresh("a")
            lines.append(f"{indent}let {name} = [{self.expr(0)}; {r.randint(1, 8)}];")
            self.arrays.append(name)
        elif roll < 0.78 and self.arrays:
            arr = r.choice(self.arrays)
            lines.append(f"{indent}{arr}[{self.expr(0)}] = {self.expr(1)};")
        else:
            lines.append(f"{indent}print({self.expr(2)});")

    def block(self, depth: int, count: int, lines: list[str], indent: str) -> None:
        for _ in range(count):
            self.stmt(depth, lines, indent)


def gen_program(rng: random.Random) -> str:
    """One random MiniLang source; parses and resolves by construction."""
    g = _Gen(rng)
    lines: list[str] = []
    if rng.random() < 0.4:
        arity = rng.randint(1, 3)
        params = ", ".join(f"p{j}" for j in range(arity))
        lines.append(f"fn helper({params}) {{")
        inner = _Gen(rng)
        inner.scalars = [f"p{j}" for j in range(arity)]
        inner.var_counter = g.var_counter + 100
        inner.block(1, rng.randint(1, 3), lines, "    ")
        lines.append(f"    return {inner.expr(1)};")
        lines.append("}")
        lines.append("")
        g.helpers.append(("helper", arity))
    lines.append("fn solve() {")
    g.block(2, rng.randint(2, 7), lines, "    ")
    lines.append("}")
    return "\n".join(lines) + "\n"
