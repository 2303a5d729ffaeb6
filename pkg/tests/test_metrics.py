"""Static feature extraction: pinned hand-computed fixtures plus properties."""

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from safuzz.metrics import extract_static
from safuzz.minilang import parse

from genprog import gen_program

BRANCHY = """\
fn solve() {
    let n = read();
    let s = 0;
    while s < n {
        if s % 2 == 0 {
            s = s + 3;
        } else {
            s = s + 1;
        }
    }
    print(s);
}
"""

HALSTEAD_FIXTURE = """\
fn solve() {
    let x = read();
    print(x + 2);
}
"""


def _features(src):
    return extract_static(parse(src), src)


def test_trivial_program():
    f = _features("fn solve(){ print(1); }")
    assert f.loc == 1
    assert f.cyclomatic == 1
    assert f.cognitive == 0


def test_branchy_fixture_pinned():
    # hand-applied rules: cyclomatic = 1 + while + if = 3;
    # cognitive = while at depth 0 (+1) + if at depth 1 (+2) = 3
    f = _features(BRANCHY)
    assert f.cyclomatic == 3
    assert f.cognitive == 3
    assert f.loc == 12


def test_halstead_fixture_hand_tallied():
    # hand tally of HALSTEAD_FIXTURE per the pinned classification:
    #   operators: fn, let, =, read, print, + (once each) and () twice
    #     -> N1 = 8, eta1 = 7
    #   operands: solve, x (twice: let target + use), literal 2
    #     -> N2 = 4, eta2 = 3
    n1, eta1 = 8, 7
    n2, eta2 = 4, 3
    volume = (n1 + n2) * math.log2(eta1 + eta2)
    difficulty = (eta1 / 2) * (n2 / eta2)
    effort = difficulty * volume
    f = _features(HALSTEAD_FIXTURE)
    assert f.halstead_volume == pytest.approx(volume, rel=1e-12)
    assert f.halstead_difficulty == pytest.approx(difficulty, rel=1e-12)
    assert f.halstead_effort == pytest.approx(effort, rel=1e-12)


def test_halstead_identity_on_random_programs():
    for seed in range(100):
        src = gen_program(random.Random(seed))
        f = _features(src)
        if f.halstead_effort:
            rel = abs(f.halstead_effort - f.halstead_difficulty * f.halstead_volume)
            rel /= abs(f.halstead_effort)
            assert rel < 1e-9
        assert f.loc >= 1
        assert f.cyclomatic >= 1
        assert f.cognitive >= 0
        assert f.halstead_volume >= 0


def test_adding_statement_never_decreases_loc():
    base = "fn solve() {\n    print(1);\n}\n"
    grown = "fn solve() {\n    print(1);\n    print(2);\n}\n"
    assert _features(grown).loc > _features(base).loc


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_adding_an_if_increases_cyclomatic_by_one(seed):
    src = gen_program(random.Random(seed))
    before = _features(src)
    # splice a guaranteed-simple if into solve()
    lines = src.rstrip().splitlines()
    assert lines[-1] == "}"
    grown = "\n".join(lines[:-1] + ["    if true {", "    }", "}"]) + "\n"
    after = _features(grown)
    assert after.cyclomatic == before.cyclomatic + 1


def test_nested_loops_cognitive_charges_depth():
    src = """\
fn solve() {
    let n = read();
    for i in 0..n {
        for j in 0..n {
            if i < j {
                print(i);
            }
        }
    }
}
"""
    # for(+1) + nested for(+2) + if at depth 2 (+3) = 6
    assert _features(src).cognitive == 6


def test_else_if_chain_charges_flat_one():
    src = """\
fn solve() {
    let x = read();
    if x < 0 {
        print(0);
    } else if x < 10 {
        print(1);
    } else {
        print(2);
    }
}
"""
    # if (+1) + else-if link (+1) = 2
    assert _features(src).cognitive == 2
    # cyclomatic: 1 + two ifs = 3
    assert _features(src).cyclomatic == 3


def test_recursion_cycle_adds_one():
    flat = """\
fn helper(k) {
    return k + 1;
}
fn solve() {
    print(helper(read()));
}
"""
    recursive = """\
fn helper(k) {
    if k <= 0 {
        return 0;
    }
    return helper(k - 1) + 1;
}
fn solve() {
    print(helper(read()));
}
"""
    f_flat = _features(flat)
    f_rec = _features(recursive)
    # flat: if-less helper -> cognitive 0; recursive: if (+1) + cycle (+1) = 2
    assert f_flat.cognitive == 0
    assert f_rec.cognitive == 2


def test_mutual_recursion_counts_one_cycle():
    src = """\
fn even(k) {
    if k == 0 {
        return 1;
    }
    return odd(k - 1);
}
fn odd(k) {
    if k == 0 {
        return 0;
    }
    return even(k - 1);
}
fn solve() {
    print(even(read()));
}
"""
    # two ifs at depth 0 (+1 each) + one mutual-recursion SCC (+1) = 3
    assert _features(src).cognitive == 3


def test_comment_and_blank_lines_not_counted():
    src = """\
fn solve() {
    // just a comment

    print(1);
}
"""
    assert _features(src).loc == 3
