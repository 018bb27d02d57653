import io
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from secgame.lp import (EQ, FEASIBILITY, GE, LE, MAXIMIZE, MINIMIZE, CapExceeded, Constraint,
                        LinearProgram, LpSolution, MalformedProgram, Status, Variable,
                        available_backends, check_solution, set_dump_stream, solve_lp)

from oracles import lp_vertex_optimum

BACKENDS = available_backends()
_ORACLE_REL = {LE: "<=", GE: ">=", EQ: "=="}


def random_bounded_lp(rng, max_vars=4, max_rows=8):
    """Small LP with every variable boxed, so the feasible set is a polytope."""
    n = rng.randint(1, max_vars)
    lp = LinearProgram()
    bounds = []
    for j in range(n):
        lo = rng.randint(-5, 2)
        hi = lo + rng.randint(0, 8)
        lp.add_variable(f"x{j}", lo, hi)
        bounds.append((lo, hi))
    # most LPs are built around a point of the box so they stay feasible
    anchor = [F(rng.randint(lo, hi)) for lo, hi in bounds] if rng.random() < 0.75 else None
    rows = []
    for _ in range(rng.randint(0, max_rows)):
        a = [rng.randint(-4, 4) for _ in range(n)]
        rel = rng.choice([LE, LE, GE, EQ])
        if anchor is None:
            b = F(rng.randint(-12, 12), rng.choice([1, 1, 2, 3]))
        else:
            slack = 0 if rel == EQ else F(rng.randint(0, 6), rng.choice([1, 2, 3]))
            b = sum((ai * xi for ai, xi in zip(a, anchor)), F(0)) + (slack if rel == LE else -slack)
        lp.add_constraint(a, rel, b)
        rows.append((a, _ORACLE_REL[rel], b))
    obj = [F(rng.randint(-6, 6), rng.choice([1, 2])) for _ in range(n)]
    direction = rng.choice([MAXIMIZE, MINIMIZE])
    lp.set_objective(obj, direction)
    return lp, n, bounds, rows, obj, direction


def oracle_agrees(lp, n, bounds, rows, obj, direction, backend):
    sol = solve_lp(lp, backend)
    feasible, best = lp_vertex_optimum(n, bounds, rows, obj, direction == MAXIMIZE)
    if not check_solution(lp, sol):
        return False
    if not feasible:
        return sol.status is Status.INFEASIBLE
    return sol.status is Status.OPTIMAL and sol.objective_value == best


def test_max_single_bound():
    lp = LinearProgram()
    lp.add_variable("x")
    lp.add_constraint([1], LE, 3)
    lp.set_objective([1], MAXIMIZE)
    sol = solve_lp(lp)
    assert sol.status is Status.OPTIMAL
    assert sol.assignment == [3]
    assert check_solution(lp, sol)


def test_contradictory_equalities_give_certificate():
    lp = LinearProgram()
    lp.add_variable("x", lower=None)
    lp.add_constraint([1], EQ, 1)
    lp.add_constraint([1], EQ, 2)
    sol = solve_lp(lp)
    assert sol.status is Status.INFEASIBLE
    assert sol.certificate.row_duals is not None
    assert check_solution(lp, sol)


def test_table2_minimax_lp_value():
    # variables C_100, C_010, C_001, v; attacker gets 1 - c_i on target i
    lp = LinearProgram()
    for name in ("C100", "C010", "C001"):
        lp.add_variable(name)
    lp.add_variable("v", lower=None)
    lp.add_constraint([1, 1, 1, 0], EQ, 1)
    for i in range(3):
        row = [0 if k == i else 1 for k in range(3)] + [-1]
        lp.add_constraint(row, LE, 0)
    lp.set_objective([0, 0, 0, 1], MINIMIZE)
    sol = solve_lp(lp)
    assert sol.objective_value == F(2, 3)
    # same program with v boxed so the vertex oracle can enumerate it
    bounded = [(0, 1)] * 3 + [(-1, 2)]
    rows = [([1, 1, 1, 0], "==", 1)] + [
        ([0 if k == i else 1 for k in range(3)] + [-1], "<=", 0) for i in range(3)]
    assert lp_vertex_optimum(4, bounded, rows, [0, 0, 0, 1], False) == (True, F(2, 3))


def test_unbounded_has_ray():
    lp = LinearProgram()
    lp.add_variable("x")
    lp.add_constraint([1], GE, 1)
    lp.set_objective([1], MAXIMIZE)
    sol = solve_lp(lp)
    assert sol.status is Status.UNBOUNDED
    assert sol.certificate.ray == [1]
    assert check_solution(lp, sol)


def test_feasibility_only():
    lp = LinearProgram()
    lp.add_variable("x")
    lp.add_variable("y")
    lp.add_constraint([1, 1], EQ, 1)
    lp.add_constraint([1, -1], GE, F(1, 2))
    lp.set_objective([0, 0], FEASIBILITY)
    sol = solve_lp(lp)
    assert sol.status is Status.FEASIBLE
    assert check_solution(lp, sol)


def test_perturbed_optimum_rejected():
    lp = LinearProgram()
    lp.add_variable("x")
    lp.add_variable("y")
    lp.add_constraint([1, 1], LE, 4)
    lp.add_constraint([1, 0], LE, 3)
    lp.set_objective([2, 1], MAXIMIZE)
    sol = solve_lp(lp)
    assert sol.assignment == [3, 1] and check_solution(lp, sol)
    bumped = LpSolution(sol.status, [sol.assignment[0] + F(1, 1000), sol.assignment[1]],
                        sol.objective_value, sol.certificate)
    assert not check_solution(lp, bumped)


def test_farkas_certificate_against_feasible_program_rejected():
    bad = LinearProgram()
    bad.add_variable("x", lower=None)
    bad.add_constraint([1], EQ, 1)
    bad.add_constraint([1], EQ, 2)
    cert = solve_lp(bad).certificate
    good = LinearProgram()
    good.add_variable("x", lower=None)
    good.add_constraint([1], EQ, 1)
    good.add_constraint([1], EQ, 1)
    assert not check_solution(good, LpSolution(Status.INFEASIBLE, certificate=cert))


def test_width_mismatch_rejected():
    lp = LinearProgram()
    lp.add_variable("x")
    lp.constraints.append(Constraint([F(1), F(2)], LE, F(1), "wide"))
    with pytest.raises(MalformedProgram):
        solve_lp(lp)


def test_size_cap():
    lp = LinearProgram()
    for j in range(10_001):
        lp.variables.append(Variable(f"x{j}"))
    lp.objective = [F(0)] * lp.n
    with pytest.raises(CapExceeded):
        solve_lp(lp)


def test_fixed_and_free_variables():
    lp = LinearProgram()
    lp.add_variable("fixed", 2, 2)
    lp.add_variable("free", None, None)
    lp.add_constraint([1, 1], GE, 5)
    lp.add_constraint([0, 1], LE, 10)
    lp.set_objective([0, 1], MINIMIZE)
    sol = solve_lp(lp)
    assert sol.assignment == [2, 3]
    assert check_solution(lp, sol)


def test_dump_stream_receives_program():
    lp = LinearProgram()
    lp.add_variable("x")
    lp.add_constraint([1], LE, 3, "cap")
    lp.set_objective([1], MAXIMIZE)
    buf = io.StringIO()
    set_dump_stream(buf)
    try:
        solve_lp(lp)
    finally:
        set_dump_stream(None)
    assert "cap: + 1 x <= 3" in buf.getvalue()


@pytest.mark.parametrize("backend", BACKENDS)
def test_vertex_oracle_random(backend):
    rng = random.Random(20240611)
    for _ in range(120):
        assert oracle_agrees(*random_bounded_lp(rng), backend)


def test_backends_pivot_identically():
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernel not built")
    rng = random.Random(99)
    for _ in range(150):
        lp = random_bounded_lp(rng)[0]
        a, b = (solve_lp(lp, name) for name in BACKENDS)
        assert (a.status, a.assignment, a.iterations) == (b.status, b.assignment, b.iterations)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.fractions(min_value=F(1, 5), max_value=5))
def test_positive_objective_scaling(seed, k):
    lp, *_ = random_bounded_lp(random.Random(seed))
    base = solve_lp(lp)
    scaled = LinearProgram(lp.variables, lp.constraints, [k * c for c in lp.objective],
                           lp.direction)
    sol = solve_lp(scaled)
    assert sol.status == base.status
    if sol.status is Status.OPTIMAL:
        assert sol.objective_value == k * base.objective_value
        # the returned point of the scaled program is optimal for the original as well
        assert sum(c * x for c, x in zip(lp.objective, sol.assignment)) == base.objective_value


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_every_status_certified(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    lp = LinearProgram()
    for j in range(n):
        lp.add_variable(f"x{j}", rng.choice([0, -2, None]), rng.choice([None, 4]))
    for _ in range(rng.randint(0, 5)):
        lp.add_constraint([rng.randint(-3, 3) for _ in range(n)], rng.choice([LE, GE, EQ]),
                          rng.randint(-5, 5))
    lp.set_objective([rng.randint(-3, 3) for _ in range(n)],
                     rng.choice([MAXIMIZE, MINIMIZE, FEASIBILITY]))
    sol = solve_lp(lp)
    assert check_solution(lp, sol)
    if sol.status in (Status.INFEASIBLE, Status.UNBOUNDED):
        assert not sol.feasible
