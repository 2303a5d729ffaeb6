"""Parser, printer, interpreter, and CFG behavior of the MiniLang substrate."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from safuzz.minilang import (
    Limits,
    ParseFailure,
    execute,
    parse,
    print_program,
    static_edges,
)
from safuzz.minilang import ast_nodes as A
from safuzz.minilang.cfg import decode_edge

from genprog import gen_program


# --- parsing ------------------------------------------------------------------


def test_minimal_program_shape():
    ast = parse("fn solve(){ print(1); }")
    assert len(ast.functions) == 1
    assert ast.functions[0].name == "solve"
    assert len(ast.functions[0].body) == 1
    assert isinstance(ast.functions[0].body[0], A.Print)


def test_out_of_bounds_write_is_not_a_parse_error():
    # bounds are runtime errors, not parse errors
    ast = parse("fn solve(){ let a = [0;3]; a[3] = 1; }")
    assert ast.function("solve") is not None
    out = execute(ast, [], Limits(max_steps=100))
    assert out.status == "crash"
    assert out.crash_kind == "array-index-out-of-bounds"


def test_syntax_error_position():
    src = "fn solve(){ while }"
    with pytest.raises(ParseFailure) as exc:
        parse(src)
    err = exc.value.errors[0]
    assert err.line == 1
    assert err.col == src.index("}") + 1  # points at the '}' after 'while'
    assert "expression" in err.message


def test_empty_source_rejected():
    with pytest.raises(ParseFailure):
        parse("   \n  ")


def test_missing_solve_rejected():
    with pytest.raises(ParseFailure) as exc:
        parse("fn other(){ print(1); }")
    assert any("solve" in e.message for e in exc.value.errors)


def test_undefined_variable_rejected():
    with pytest.raises(ParseFailure) as exc:
        parse("fn solve(){ print(x); }")
    assert any("undefined variable" in e.message for e in exc.value.errors)


def test_undefined_function_and_arity():
    with pytest.raises(ParseFailure):
        parse("fn solve(){ print(nope(1)); }")
    with pytest.raises(ParseFailure):
        parse("fn f(a, b){ return a; } fn solve(){ print(f(1)); }")


def test_node_ids_unique():
    ast = parse(gen_program(random.Random(7)))
    seen = set()

    def visit(node):
        if isinstance(node, A.Node):
            assert node.nid not in seen or node.nid == -1
            seen.add(node.nid)
            for f in vars(node).values():
                if isinstance(f, list):
                    for item in f:
                        visit(item)
                else:
                    visit(f)

    for fn in ast.functions:
        visit(fn)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**9))
def test_print_parse_round_trip(seed):
    src = gen_program(random.Random(seed))
    canon = print_program(parse(src))
    assert print_program(parse(canon)) == canon


# --- execution ----------------------------------------------------------------


def test_addition_of_two_reads():
    ast = parse("fn solve(){ print(read()+read()); }")
    out = execute(ast, [2, 3], Limits(max_steps=1000))
    assert out.status == "ok"
    assert out.output == (5,)


def test_infinite_loop_hits_step_limit_exactly():
    ast = parse("fn solve(){ while true { } }")
    out = execute(ast, [], Limits(max_steps=100))
    assert out.status == "step-limit"
    assert out.steps_used == 100


def test_wrap_value_matches_bigint_oracle():
    # oracle: 10^20 reduced into signed 64-bit range with plain big ints
    expected = ((10**20 + 2**63) % 2**64) - 2**63
    ast = parse("fn solve(){ print(10000000000 * 10000000000); }")
    out = execute(ast, [], Limits(max_steps=1000))
    assert out.status == "ok"
    assert out.wrap_count == 1
    assert out.arith_events[0].wrapped is True
    assert out.output == (expected,)


def test_determinism_bit_identical():
    src = gen_program(random.Random(123))
    ast = parse(src)
    inp = [random.Random(5).randint(0, 10**9) for _ in range(16)]
    a = execute(ast, inp, Limits(max_steps=5000))
    b = execute(ast, inp, Limits(max_steps=5000))
    assert a == b


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_determinism_property(seed):
    rng = random.Random(seed)
    ast = parse(gen_program(rng))
    inp = [rng.randint(-10**9, 10**9) for _ in range(12)]
    assert execute(ast, inp, Limits(max_steps=2000)) == execute(
        ast, inp, Limits(max_steps=2000))


def test_monotone_coverage_in_step_budget():
    src = """
fn solve() {
    let n = read();
    let s = 0;
    for i in 0..n {
        if i % 2 == 0 { s = s + i; } else { s = s - 1; }
    }
    print(s);
}
"""
    ast = parse(src)
    inp = [50]
    prev = frozenset()
    for k in (1, 2, 5, 10, 40, 200, 10_000):
        out = execute(ast, inp, Limits(max_steps=k))
        assert prev <= out.edges_hit
        prev = out.edges_hit


def test_crash_soundness_for_indexing():
    template = "fn solve(){{ let a = [0;3]; print(a[{idx}]); }}"
    ok = execute(parse(template.format(idx="2")), [], Limits(max_steps=100))
    assert ok.status == "ok"
    low = execute(parse(template.format(idx="0 - 1")), [], Limits(max_steps=100))
    assert low.status == "crash" and low.crash_kind == "array-index-out-of-bounds"
    high = execute(parse(template.format(idx="3")), [], Limits(max_steps=100))
    assert high.status == "crash" and high.crash_kind == "array-index-out-of-bounds"


def test_wrap_soundness_boundary():
    at_max = execute(parse("fn solve(){ print(9223372036854775807 + 0); }"),
                     [], Limits(max_steps=100))
    assert at_max.wrap_count == 0
    past_max = execute(parse("fn solve(){ print(9223372036854775807 + 1); }"),
                       [], Limits(max_steps=100))
    assert past_max.wrap_count == 1
    assert past_max.output == (-(2**63),)


def test_division_semantics():
    # truncation toward zero, C-style remainder sign
    cases = [
        ("7 / 2", 3), ("(0 - 7) / 2", -3), ("7 / (0 - 2)", -3),
        ("7 % 3", 1), ("(0 - 7) % 3", -1), ("7 % (0 - 3)", 1),
    ]
    for expr, expected in cases:
        out = execute(parse(f"fn solve(){{ print({expr}); }}"), [],
                      Limits(max_steps=100))
        assert out.output == (expected,), expr


def test_division_by_zero_crashes():
    out = execute(parse("fn solve(){ print(1 / read()); }"), [0],
                  Limits(max_steps=100))
    assert out.status == "crash"
    assert out.crash_kind == "division-by-zero"


def test_int_min_div_minus_one_wraps():
    src = "fn solve(){ print((0 - 9223372036854775807 - 1) / (0 - 1)); }"
    out = execute(parse(src), [], Limits(max_steps=100))
    assert out.status == "ok"
    assert out.output == (-(2**63),)
    assert out.wrap_count >= 1


def test_read_exhaustion_returns_zero():
    out = execute(parse("fn solve(){ print(read() + read()); }"), [41],
                  Limits(max_steps=100))
    assert out.output == (41,)


def test_trunc32_reports_wrap_only_on_change():
    same = execute(parse("fn solve(){ print(trunc32(100)); }"), [],
                   Limits(max_steps=100))
    assert same.output == (100,) and same.wrap_count == 0
    big = execute(parse("fn solve(){ print(trunc32(2147483648)); }"), [],
                  Limits(max_steps=100))
    assert big.output == (-(2**31),) and big.wrap_count == 1


def test_stack_depth_crash_and_recovery():
    src = """
fn dive(k) {
    if k <= 0 { return 0; }
    let r = dive(k - 1) + 1;
    return r;
}
fn solve() { print(dive(read())); }
"""
    ast = parse(src)
    deep = execute(ast, [12_000], Limits(max_steps=1_000_000))
    assert deep.status == "crash"
    assert deep.crash_kind == "stack-depth-exceeded"
    shallow = execute(ast, [50], Limits(max_steps=10_000))
    assert shallow.status == "ok"
    assert shallow.output == (50,)


def test_stack_depth_limit_is_exact():
    src = """
fn dive(k) {
    if k <= 0 { return 0; }
    return dive(k - 1) + 1;
}
fn solve() { print(dive(read())); }
"""
    ast = parse(src)
    # depth consumed: solve frame + one frame per dive level
    ok = execute(ast, [99], Limits(max_steps=100_000, max_stack_depth=101))
    assert ok.status == "ok"
    crash = execute(ast, [100], Limits(max_steps=100_000, max_stack_depth=101))
    assert crash.status == "crash"
    assert crash.crash_kind == "stack-depth-exceeded"


# --- static edges ---------------------------------------------------------------


def test_straight_line_edge_count():
    # hand-drawn CFG: entry -> let a -> let b -> print -> exit  == 4 edges
    src = """
fn solve() {
    let a = 1;
    let b = 2;
    print(a + b);
}
"""
    assert len(static_edges(parse(src))) == 4


def test_if_else_has_two_branch_edges():
    src = """
fn solve() {
    let x = read();
    if x > 0 {
        print(1);
    } else {
        print(2);
    }
}
"""
    ast = parse(src)
    if_node = ast.functions[0].body[1]
    assert isinstance(if_node, A.If)
    branch_edges = [e for e in static_edges(ast) if decode_edge(e)[0] == if_node.nid]
    assert len(branch_edges) == 2


def test_empty_body_single_edge():
    assert len(static_edges(parse("fn solve() { }"))) == 1


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_runtime_edges_subset_of_static(seed):
    rng = random.Random(seed)
    ast = parse(gen_program(rng))
    inp = [rng.randint(-100, 10**9) for _ in range(12)]
    out = execute(ast, inp, Limits(max_steps=3000))
    assert out.edges_hit <= static_edges(ast)


def test_static_edges_stable_across_calls():
    ast = parse(gen_program(random.Random(99)))
    assert static_edges(ast) == static_edges(ast)
