"""Core corpus data types: problems, program units, and the variant taxonomy."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..harness.constraints import VarBound

# The fixed 12-name variant taxonomy: the original phrasing, five semantic
# re-phrasings, and six deliberately vulnerability-inducing phrasings.
SEMANTIC_VARIANTS = (
    "Original",
    "Overflow Emphasis",
    "Reordered Presentation",
    "Examples Only",
    "Iterative Approach",
    "Edge Case Focus",
)
BUGGY_VARIANTS = (
    "Integer Overflow",
    "Timeout/Inefficient",
    "Heavy Recursion",
    "Array Indexing",
    "Greedy Implementation",
    "Incorrect Logic",
)
ALL_VARIANTS = SEMANTIC_VARIANTS + BUGGY_VARIANTS

BUG_CATEGORIES = ("overflow", "timeout", "recursion", "indexing", "greedy", "logic")

VARIANT_CATEGORY = {
    "Integer Overflow": "overflow",
    "Timeout/Inefficient": "timeout",
    "Heavy Recursion": "recursion",
    "Array Indexing": "indexing",
    "Greedy Implementation": "greedy",
    "Incorrect Logic": "logic",
}
CATEGORY_VARIANT = {v: k for k, v in VARIANT_CATEGORY.items()}


def variant_slug(variant: str) -> str:
    return variant.lower().replace("/", "_").replace(" ", "_")


@dataclass(frozen=True)
class SourceUnit:
    text: str
    origin: str

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("source text must be non-empty")


@dataclass(frozen=True)
class InputField:
    name: str
    kind: str  # "scalar" | "array"
    length_var: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ("scalar", "array"):
            raise ValueError(f"bad input field kind {self.kind!r}")
        if self.kind == "array" and not self.length_var:
            raise ValueError(f"array field {self.name!r} needs a length_var")


@dataclass(frozen=True)
class ProblemSpec:
    id: str
    statement: str
    constraints: tuple  # of VarBound, authoritative values
    schema: tuple  # of InputField, ordered as read() consumes them
    reference: SourceUnit
    # hand-curated wrong-but-plausible rewrites (the mutation table for the
    # greedy / logic categories)
    greedy_source: str = ""
    logic_source: str = ""

    def bound(self, name: str) -> VarBound:
        for b in self.constraints:
            if b.name == name:
                return b
        raise KeyError(f"{self.id}: no constraint for {name!r}")


@dataclass(frozen=True)
class ProgramUnit:
    problem_id: str
    variant_name: str
    source: SourceUnit
    label: str  # "buggy" | "clean"
    bug_category: Optional[str] = None

    def __post_init__(self):
        if self.variant_name not in ALL_VARIANTS:
            raise ValueError(f"unknown variant {self.variant_name!r}")
        if self.label not in ("buggy", "clean"):
            raise ValueError(f"bad label {self.label!r}")
        if (self.label == "buggy") != (self.bug_category is not None):
            raise ValueError("label=buggy iff bug_category present")
        if self.bug_category is not None and self.bug_category not in BUG_CATEGORIES:
            raise ValueError(f"unknown bug category {self.bug_category!r}")

    @property
    def unit_id(self) -> str:
        return f"{self.problem_id}__{variant_slug(self.variant_name)}"
