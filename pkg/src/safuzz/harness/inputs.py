"""Weighted input generation for harness specs.

Values are drawn per schema variable from a three-way strategy mixture:

    uniform     anywhere in the effective bounds
    boundary    one of {lower, upper, upper-1}
    max_stress  pinned at the effective upper bound

Effective bounds fold in structural relations (variable upper bounds,
pair bounds); array lengths always equal their length variable's sampled
value. Sampling is driven by a single PCG64 stream per (spec, seed), so
inputs are reproducible across platforms. Arrays are held as numpy
vectors internally; `flat()` materializes the plain int list consumed by
the interpreter via read().
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constraints import ConstraintSet, LengthEquals, PairBound, VarUpperIsVar

STRATEGIES = ("uniform", "boundary", "max_stress")


@dataclass
class Sample:
    """One generated input: scalar values plus numpy arrays in schema order."""

    values: dict

    def flat(self, schema) -> list:
        out: list = []
        for f in schema:
            v = self.values[f.name]
            if f.kind == "array":
                out.extend(int(x) for x in v.tolist())
            else:
                out.append(int(v))
        return out


def _effective_bounds(name: str, constraints: ConstraintSet, sampled: dict):
    b = constraints.bound(name)
    lo, hi = b.lower, b.upper
    for rel in constraints.structural:
        if isinstance(rel, VarUpperIsVar) and rel.target == name:
            if rel.upper_var in sampled:
                hi = min(hi, int(sampled[rel.upper_var]))
        elif isinstance(rel, PairBound) and rel.target == name:
            if rel.n_var in sampled:
                n = int(sampled[rel.n_var])
                hi = min(hi, n * (n - 1) // 2)
    return lo, max(lo, hi)


def _pick_strategy(weights, r: float) -> str:
    acc = 0.0
    for name in STRATEGIES:
        acc += weights[name]
        if r < acc:
            return name
    return "max_stress"


def generate_sample(spec, seed: int) -> Sample:
    """Deterministic weighted sample for a harness spec."""
    rng = np.random.Generator(np.random.PCG64(seed))
    sampled: dict = {}
    for f in spec.schema:
        lo, hi = _effective_bounds(f.name, spec.constraints, sampled)
        weights = spec.weights[f.name]
        if f.kind == "scalar":
            strategy = _pick_strategy(weights, rng.random())
            if strategy == "uniform":
                v = int(rng.integers(lo, hi + 1))
            elif strategy == "boundary":
                opts = [lo, hi] + ([hi - 1] if hi - 1 >= lo else [])
                v = int(opts[int(rng.integers(0, len(opts)))])
            else:
                v = hi
            sampled[f.name] = v
        else:
            length = int(sampled[f.length_var])
            strategy = _pick_strategy(weights, rng.random())
            if strategy == "uniform":
                arr = rng.integers(lo, hi + 1, size=length, dtype=np.int64)
            elif strategy == "boundary":
                opts = np.array([lo, hi] + ([hi - 1] if hi - 1 >= lo else []),
                                dtype=np.int64)
                arr = opts[rng.integers(0, len(opts), size=length)]
            else:
                arr = np.full(length, hi, dtype=np.int64)
            sampled[f.name] = arr
    return Sample(values=sampled)


def generate_input(spec, seed: int) -> list:
    """Flat int64 value list in schema order (what the program read()s)."""
    return generate_sample(spec, seed).flat(spec.schema)


def check_sample(spec, sample: Sample) -> list:
    """Constraint violations in `sample`; empty when it satisfies the spec."""
    problems: list = []
    sampled = sample.values
    for f in spec.schema:
        lo, hi = _effective_bounds(f.name, spec.constraints, sampled)
        v = sampled.get(f.name)
        if v is None:
            problems.append(f"missing variable {f.name}")
            continue
        if f.kind == "scalar":
            if not (lo <= int(v) <= hi):
                problems.append(f"{f.name}={int(v)} outside [{lo}, {hi}]")
        else:
            expected = int(sampled[f.length_var])
            if len(v) != expected:
                problems.append(
                    f"array {f.name} length {len(v)} != {f.length_var}={expected}")
            if len(v) and (int(v.min()) < lo or int(v.max()) > hi):
                problems.append(f"array {f.name} values outside [{lo}, {hi}]")
    for rel in spec.constraints.structural:
        if isinstance(rel, LengthEquals):
            arr = sampled.get(rel.array)
            n = sampled.get(rel.var)
            if arr is not None and n is not None and len(arr) != int(n):
                problems.append(f"len({rel.array}) != {rel.var}")
    return problems


def decode(flat: list, schema) -> dict:
    """Split a flat value list back into named scalars and arrays.

    Array lengths come from the current values of their length variables,
    so mutation of a length scalar implies re-encoding the arrays."""
    values: dict = {}
    pos = 0
    for f in schema:
        if f.kind == "scalar":
            values[f.name] = flat[pos] if pos < len(flat) else 0
            pos += 1
        else:
            length = max(0, int(values.get(f.length_var, 0)))
            chunk = flat[pos:pos + length]
            if len(chunk) < length:
                chunk = chunk + [0] * (length - len(chunk))
            values[f.name] = np.asarray(chunk, dtype=np.int64)
            pos += length
    return values


def encode(values: dict, schema) -> list:
    return Sample(values=values).flat(schema)


def input_class(flat: list, spec) -> str:
    """Canonical boundary class string, one token per schema variable.

    Scalars map to min/max/int by comparing against effective bounds;
    arrays map to max/min when all elements sit at a bound."""
    values = decode(flat, spec.schema)
    tokens: list = []
    for f in spec.schema:
        lo, hi = _effective_bounds(f.name, spec.constraints, values)
        v = values[f.name]
        if f.kind == "scalar":
            token = "min" if v == lo else ("max" if v >= hi else "int")
        else:
            if len(v) == 0:
                token = "int"
            elif int(v.min()) >= hi:
                token = "max"
            elif int(v.max()) <= lo:
                token = "min"
            else:
                token = "int"
        tokens.append(token)
    return "-".join(tokens)
