"""Numeric bound and structural-relation extraction from problem text.

Recognized bound forms (ASCII `<=` or the `≤` glyph, numbers as plain
integers, `10^k`, or `c*10^k`):

    1 <= n <= 10^5          two-sided bound
    1 <= u, v <= n          multiple variables, variable upper bound
    m <= n*(n-1)/2          pair-count upper bound
    k <= 16                 one-sided (lower defaults to 1)

A variable upper bound produces both a numeric bound (resolved through
the named variable's own upper) and a structural relation enforced at
generation time. Schema variables that never match get [1, 10^9] with a
warning.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

log = logging.getLogger(__name__)

DEFAULT_LOWER = 1
DEFAULT_UPPER = 10**9


class ConstraintError(ValueError):
    pass


@dataclass(frozen=True)
class VarBound:
    name: str
    lower: int
    upper: int


@dataclass(frozen=True)
class LengthEquals:
    """Array `array` has exactly `var` elements."""

    array: str
    var: str


@dataclass(frozen=True)
class VarUpperIsVar:
    """`target`'s value(s) are bounded above by the sampled value of `upper_var`."""

    target: str
    upper_var: str


@dataclass(frozen=True)
class PairBound:
    """`target` <= n*(n-1)/2 for the sampled value of `n_var`."""

    target: str
    n_var: str


@dataclass
class ConstraintSet:
    bounds: list = field(default_factory=list)
    structural: list = field(default_factory=list)

    def bound(self, name: str) -> VarBound:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(f"no bound for variable {name!r}")

    def has_bound(self, name: str) -> bool:
        return any(b.name == name for b in self.bounds)


_NUM = r"-?\d+(?:\s*\*\s*10\^\d+)?|-?10\^\d+"
_IDENT = r"[A-Za-z_][A-Za-z_0-9]*"
_PAIR = rf"({_IDENT})\s*\*\s*\(\s*\1\s*-\s*1\s*\)\s*/\s*2"

_TWO_SIDED = re.compile(
    rf"(?P<lo>{_NUM})\s*(?:<=|≤)\s*(?P<vars>{_IDENT}(?:\s*,\s*{_IDENT})*)\s*(?:<=|≤)\s*"
    rf"(?P<hi>{_PAIR}|{_NUM}|{_IDENT})"
)
_ONE_SIDED = re.compile(
    rf"(?P<var>{_IDENT})\s*(?:<=|≤)\s*(?P<hi>{_PAIR}|{_NUM}|{_IDENT})"
)
_PAIR_RE = re.compile(_PAIR)


def _parse_number(text: str) -> int:
    text = text.replace(" ", "")
    if "10^" in text:
        sign = -1 if text.startswith("-") else 1
        text = text.lstrip("-")
        if "*" in text:
            coeff, power = text.split("*")
            return sign * int(coeff) * 10 ** int(power.split("^")[1])
        return sign * 10 ** int(text.split("^")[1])
    return int(text)


def extract_constraints(statement: str, schema: list) -> ConstraintSet:
    """Bounds for every schema variable plus structural relations.

    `schema` is the ordered list of input fields (see corpus.InputField);
    array length relations come from the schema itself.
    """
    if not statement.strip():
        raise ConstraintError("empty problem statement")

    found: dict[str, tuple[int, int]] = {}
    relations: list = []
    pending_upper: list[tuple[str, str]] = []  # (target, upper var) to resolve

    consumed_spans: list[tuple[int, int]] = []

    def overlaps(span):
        return any(s < span[1] and span[0] < e for s, e in consumed_spans)

    for m in _TWO_SIDED.finditer(statement):
        consumed_spans.append(m.span())
        lo = _parse_number(m.group("lo"))
        hi_text = m.group("hi").strip()
        names = [v.strip() for v in m.group("vars").split(",")]
        for name in names:
            pair = _PAIR_RE.fullmatch(hi_text)
            if pair:
                relations.append(PairBound(name, pair.group(1)))
                pending_upper.append((name, f"__pair__{pair.group(1)}"))
                found[name] = (lo, None)
            elif re.fullmatch(_NUM, hi_text):
                hi = _parse_number(hi_text)
                if lo > hi:
                    raise ConstraintError(
                        f"contradictory bound for {name}: {lo} > {hi}")
                found[name] = (lo, hi)
            else:
                relations.append(VarUpperIsVar(name, hi_text))
                pending_upper.append((name, hi_text))
                found[name] = (lo, None)

    for m in _ONE_SIDED.finditer(statement):
        if overlaps(m.span()):
            continue
        name = m.group("var")
        if name in found:
            continue
        hi_text = m.group("hi").strip()
        if re.fullmatch(_NUM, hi_text):
            hi = _parse_number(hi_text)
            if DEFAULT_LOWER > hi:
                raise ConstraintError(
                    f"contradictory bound for {name}: {DEFAULT_LOWER} > {hi}")
            found[name] = (DEFAULT_LOWER, hi)
        else:
            pair = _PAIR_RE.fullmatch(hi_text)
            if pair:
                relations.append(PairBound(name, pair.group(1)))
                pending_upper.append((name, f"__pair__{pair.group(1)}"))
            else:
                relations.append(VarUpperIsVar(name, hi_text))
                pending_upper.append((name, hi_text))
            found[name] = (DEFAULT_LOWER, None)

    # resolve variable upper bounds to numbers for static estimation
    def resolve_upper(name: str, seen: frozenset) -> int:
        if name in seen:
            raise ConstraintError(f"circular bound through {name}")
        if name.startswith("__pair__"):
            n_up = resolve_upper(name[len("__pair__"):], seen)
            return n_up * (n_up - 1) // 2
        entry = found.get(name)
        if entry is None:
            return DEFAULT_UPPER
        lo, hi = entry
        if hi is not None:
            return hi
        for target, upper in pending_upper:
            if target == name:
                return resolve_upper(upper, seen | {name})
        return DEFAULT_UPPER

    bounds = []
    for f in schema:
        if f.name in found:
            lo, hi = found[f.name]
            if hi is None:
                hi = resolve_upper(f.name, frozenset())
            if lo > hi:
                raise ConstraintError(f"contradictory bound for {f.name}: {lo} > {hi}")
            bounds.append(VarBound(f.name, lo, hi))
        else:
            log.warning("no bound found for %r; defaulting to [%d, %d]",
                        f.name, DEFAULT_LOWER, DEFAULT_UPPER)
            bounds.append(VarBound(f.name, DEFAULT_LOWER, DEFAULT_UPPER))
        if f.kind == "array":
            relations.append(LengthEquals(f.name, f.length_var))

    declared = {f.name for f in schema}
    structural = []
    for rel in relations:
        if isinstance(rel, LengthEquals):
            if rel.var not in declared:
                raise ConstraintError(
                    f"length variable {rel.var!r} of array {rel.array!r} not in schema")
            structural.append(rel)
        elif isinstance(rel, VarUpperIsVar):
            if rel.target in declared and rel.upper_var in declared:
                structural.append(rel)
        elif isinstance(rel, PairBound):
            if rel.target in declared and rel.n_var in declared:
                structural.append(rel)

    return ConstraintSet(bounds=bounds, structural=structural)
