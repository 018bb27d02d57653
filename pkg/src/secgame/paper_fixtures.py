"""Worked examples with their published outcomes, replayed as exact checks.

Payoff rows are (dc, du, ac, au) per target.  Games whose resources can
cover any single target also carry the empty schedule.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction as F

from .bimatrix import Bimatrix, pure_nash_profiles, solve_bimatrix_ne, solve_commitment
from .core import (
    AttackerMixedStrategy,
    DefenderMixedStrategy,
    SecurityGame,
    best_response_value,
    check_ssas,
    defender_utility,
    enumerate_coverage_vectors,
    is_nash,
    realize_marginals,
)
from .equilibria import (
    check_sse_in_ne,
    closed_form_attacker,
    closed_form_defender,
    lift_ne_multi,
    map_attacker_f,
    map_attacker_f_inverse,
    solve_maximin,
    solve_minimax,
    solve_nash,
    solve_sse,
    sse_dominates_ne_value,
    sse_value,
    zero_sum_counterpart,
)
from .errors import PreconditionFailed
from .observability import ObservabilityGame, solve_observability

TABLE_1 = {"payoff_d": ((1, 3), (0, 2)), "payoff_a": ((1, 0), (0, 1)),
           "rows": ("a", "b"), "cols": ("c", "d")}
TABLE_2 = ((1, 0, 0, 1), (2, 0, 0, 1), (3, 0, 0, 1))
TABLE_4 = ((1, 0, 1, 2), (2, 0, 0, 1))
TABLE_5 = ((10, 9, 2, 5), (-2, -3, 3, 4), (1, 0, 0, 1), (1, 0, 0, 1))
TABLE_6 = ((0, -1, 1, 3), (0, -1, 1, 3), (0, -1, 0, 2))
EXAMPLE_1 = ((0, -1, 0, 1),) * 3
TABLE_7 = ((0, -1, 2, 3), (0, -2, 0, 1))
TABLE_8 = ((-10, -11, 1, 3), (0, -3, 0, 2), (0, -3, 0, 2))
TABLE_9 = ((0, -2, 5, 6), (-9, -10, 2, 4), (0, -1, 1, 3))
TABLE_10 = ((-11, -12, 0, 2), (0, -3, 1, 3), (0, -7, 0, 2))
TABLE_11 = ((0, -1, 2, 3), (-2, -3, 0, 1))


def singleton_game(payoffs, K=1, L=1):
    return SecurityGame.singletons(payoffs, K, L)


def table5_game():
    """One resource with schedules {t1, t2} and {t3, t4}."""
    return SecurityGame(TABLE_5, (((0, 1), (2, 3)),))


def table1_bimatrix():
    return Bimatrix(TABLE_1["rows"], TABLE_1["cols"], TABLE_1["payoff_d"], TABLE_1["payoff_a"])


FIXTURE_GAMES = {
    "table2": lambda: singleton_game(TABLE_2),
    "table4": lambda: singleton_game(TABLE_4),
    "table5": table5_game,
    "table5_two_resources": lambda: singleton_game(TABLE_5, K=2),
    "table6": lambda: singleton_game(TABLE_6),
    "example1": lambda: singleton_game(EXAMPLE_1),
    "table7": lambda: singleton_game(TABLE_7),
    "table8": lambda: singleton_game(TABLE_8),
    "table9": lambda: singleton_game(TABLE_9),
    "table10": lambda: singleton_game(TABLE_10),
    "table11": lambda: singleton_game(TABLE_11),
}


@dataclass
class FixtureResult:
    name: str
    checks: list = field(default_factory=list)   # (label, passed)
    seconds: float = 0.0
    error: str = ""

    @property
    def passed(self) -> bool:
        return not self.error and all(ok for _, ok in self.checks)


def _c(*xs):
    return tuple(F(x) for x in xs)


def _raises_precondition(fn, target):
    try:
        fn()
    except PreconditionFailed as exc:
        return exc.target == target
    return False


def _strategies(g, L):
    gl = g.with_attacker_resources(L)
    return solve_sse(gl), solve_nash(gl)


# ---------------------------------------------------------------------------


def fx_model():
    g = SecurityGame.singletons(((1, 0, 0, 1),) * 3)
    C = DefenderMixedStrategy({(1, 1, 0): F(1, 2), (0, 1, 1): F(1, 2)})
    return [
        ("marginals of {110: 1/2, 011: 1/2} are (1/2, 1, 1/2)", C.marginals() == _c(F(1, 2), 1, F(1, 2))),
        ("single-target schedules with the empty one are subset-closed", check_ssas(g)),
        ("two paired schedules are not subset-closed", not check_ssas(table5_game())),
        ("paired schedules give D = {1100, 0011}",
         set(enumerate_coverage_vectors(table5_game())) == {(1, 1, 0, 0), (0, 0, 1, 1)}),
    ]


def fx_table1():
    bm = table1_bimatrix()
    x, y = solve_bimatrix_ne(bm)
    com = solve_commitment(bm)
    return [
        ("only pure equilibrium is (a, c)", pure_nash_profiles(bm) == [(0, 0)]),
        ("support enumeration returns (a, c)", (x, y) == ([1, 0], [1, 0])),
        ("commitment mixes a and b evenly", com.x == [F(1, 2), F(1, 2)]),
        ("follower answers the commitment with d", com.response == 1),
        ("commitment value is 5/2", com.value == F(5, 2)),
    ]


def fx_table2():
    g = singleton_game(TABLE_2)
    C, e = solve_minimax(g)
    M, safety = solve_maximin(g)
    ne = solve_nash(g)
    third = F(1, 3)
    return [
        ("minimax coverage is (1/3, 1/3, 1/3)", C.marginals() == (third,) * 3),
        ("minimax value E* is 2/3", e == F(2, 3)),
        ("maximin coverage is (6/11, 3/11, 2/11)", M.marginals() == _c(F(6, 11), F(3, 11), F(2, 11))),
        ("maximin differs from minimax", M.marginals() != C.marginals()),
        ("Nash attacker is (6/11, 3/11, 2/11)",
         ne.attacker.target_probs(3) == _c(F(6, 11), F(3, 11), F(2, 11))),
        ("f^-1 of the uniform attack is (6/11, 3/11, 2/11)",
         map_attacker_f_inverse((third,) * 3, g).target_probs(3)
         == _c(F(6, 11), F(3, 11), F(2, 11))),
        ("zero-sum counterpart negates attacker payoffs",
         [(t.dc, t.du) for t in zero_sum_counterpart(g).targets] == [(0, -1)] * 3),
        ("any pure attack on (1/3,1/3,1/3) gives the attacker 2/3",
         best_response_value((third,) * 3, g).value == F(2, 3)),
    ]


def fx_table4():
    g = singleton_game(TABLE_4)
    ne = solve_nash(g)
    a2 = (F(2, 3), F(1, 3))
    return [
        ("Nash defender covers t1", ne.coverage == _c(1, 0)),
        ("attack on t1 is a Nash response", is_nash((1, 0), (1, 0), g)),
        ("(2/3, 1/3) is a Nash response", is_nash((1, 0), a2, g)),
        ("defender gets 1 against the attack on t1", defender_utility((1, 0), (1, 0), g) == 1),
        ("defender gets 2/3 against (2/3, 1/3)", defender_utility((1, 0), a2, g) == F(2, 3)),
        ("covering t2 against an attack on t1 is not Nash", not is_nash((0, 1), (1, 0), g)),
        ("f maps (2/3, 1/3) to (1/2, 1/2)", map_attacker_f(a2, g).target_probs(2) == _c(F(1, 2), F(1, 2))),
        ("f image is Nash in the zero-sum counterpart",
         is_nash((1, 0), (F(1, 2), F(1, 2)), zero_sum_counterpart(g))),
    ]


def fx_table5():
    g = table5_game()
    sse = solve_sse(g)
    ne = solve_nash(g)
    return [
        ("SSE puts 1/2 on each schedule",
         sse.defender.support == {(1, 1, 0, 0): F(1, 2), (0, 0, 1, 1): F(1, 2)}),
        ("SSE attacker hits t1", sse.attacker.probs == {(0,): 1}),
        ("SSE defender value is 19/2", sse.defender_value == F(19, 2)),
        ("SSE strategy is in no Nash profile", check_sse_in_ne(g, sse.defender) is None),
        ("Nash defender covers s1 with probability 1", ne.defender.support == {(1, 1, 0, 0): 1}),
        ("SSE value dominates the Nash value", sse_dominates_ne_value(g)),
    ]


def fx_section34():
    g = singleton_game(TABLE_5, K=2)
    _, e = solve_minimax(g)
    sse = solve_sse(g)
    c = sse.coverage
    out = [
        ("E* is 3", e == 3),
        ("closed form refuses: U_a^c(t2) = E*",
         _raises_precondition(lambda: closed_form_defender(g), 1)),
        ("SSE covers t1 with 2/3 and t2 fully", c[0] == F(2, 3) and c[1] == 1),
    ]
    for cov in (_c(F(2, 3), 1, F(1, 3), 0), _c(F(2, 3), 1, 0, F(1, 3))):
        C = realize_marginals(cov, g)
        label = "(" + ", ".join(str(x) for x in cov) + ")"
        out.append((f"{label} is an SSE strategy", sse_value(cov, g) == sse.defender_value))
        out.append((f"{label} passes the SSE-in-NE program", check_sse_in_ne(g, C) is not None))
    return out


def fx_table6():
    g = singleton_game(TABLE_6)
    cf = closed_form_defender(g)
    C, e = solve_minimax(g)
    half, third = F(1, 2), F(1, 3)
    return [
        ("E* is 2", cf.e_star == 2 and e == 2),
        ("unique defender coverage is (1/2, 1/2, 0)", cf.coverage == _c(half, half, 0)),
        ("minimax agrees with the closed form", C.marginals() == cf.coverage),
        ("attacker (1/2, 1/2, 0) is Nash", is_nash(cf.coverage, (half, half, 0), g)),
        ("attacker (1/3, 1/3, 1/3) is Nash", is_nash(cf.coverage, (third,) * 3, g)),
        ("attacker closed form refuses: U_a^u(t3) = E*",
         _raises_precondition(lambda: closed_form_attacker(g, cf), 2)),
        ("SSE coverage is (1/2, 1/2, 0)", solve_sse(g).coverage == _c(half, half, 0)),
    ]


def fx_example1():
    g = singleton_game(EXAMPLE_1)
    s1, n1 = _strategies(g, 1)
    s2, n2 = _strategies(g, 2)
    third = F(1, 3)
    lifted = lift_ne_multi(g, n1, 2)
    return [
        ("c^{S,1} = c^{N,1} = c^{S,2} = c^{N,2} = (1/3, 1/3, 1/3)",
         s1.coverage == n1.coverage == s2.coverage == n2.coverage == (third,) * 3),
        ("single-resource attacker is (1/3, 1/3, 1/3)", n1.attacker.target_probs(3) == (third,) * 3),
        ("lifted attacker marginals are (2/3, 2/3, 2/3)",
         lifted is not None and lifted.attacker.target_probs(3) == (F(2, 3),) * 3),
        ("lifted profile is Nash with two attacker resources",
         lifted is not None and is_nash(lifted.defender, lifted.attacker, g.with_attacker_resources(2))),
    ]


def fx_example2():
    g = singleton_game(TABLE_7)
    s1, n1 = _strategies(g, 1)
    s2, n2 = _strategies(g, 2)
    return [
        ("one attacker resource: t1 defended in SSE and Nash", s1.coverage == n1.coverage == _c(1, 0)),
        ("two attacker resources: t2 defended in SSE and Nash", s2.coverage == n2.coverage == _c(0, 1)),
        ("c^{S,2} = c^{N,2} != c^{N,1} = c^{S,1}", s2.coverage == n2.coverage != n1.coverage),
        ("doubling the attack on t1 is not a strategy", lift_ne_multi(g, n1, 2) is None),
    ]


def fx_example3():
    g = singleton_game(TABLE_8)
    cf = closed_form_defender(g)
    att = closed_form_attacker(g, cf)
    s1, n1 = _strategies(g, 1)
    s2, n2 = _strategies(g, 2)
    g2 = g.with_attacker_resources(2)
    half = F(1, 2)
    target = _c(F(2, 3), F(1, 6), F(1, 6))
    return [
        ("c^{S,1} = c^{N,1} = (2/3, 1/6, 1/6)", cf.coverage == s1.coverage == n1.coverage == target),
        ("closed-form attacker is (3/5, 1/5, 1/5)", att.attacker.target_probs(3) == _c(F(3, 5), F(1, 5), F(1, 5))),
        ("beta is 3/5", att.beta == F(3, 5)),
        ("c^{S,2} = (2/3, 1/6, 1/6) attacking t2 and t3", s2.coverage == target and s2.attacker.probs == {(1, 2): 1}),
        ("c^{N,2} = (0, 1/2, 1/2)", n2.coverage == _c(0, half, half)),
        ("Nash attack marginals are (1, 1/2, 1/2)", n2.attacker.target_probs(3) == _c(1, half, half)),
        ("<(0, .5, .5), (1, .5, .5)> is Nash",
         is_nash((0, half, half), AttackerMixedStrategy.from_marginals((1, half, half), 2), g2)),
        ("SSE strategy is in no Nash profile", check_sse_in_ne(g2, s2.defender) is None),
        ("c^{N,2} != c^{S,2} = c^{S,1} = c^{N,1}", n2.coverage != s2.coverage == s1.coverage == n1.coverage),
    ]


def fx_example4():
    g = singleton_game(TABLE_9)
    s1, n1 = _strategies(g, 1)
    s2, n2 = _strategies(g, 2)
    g2 = g.with_attacker_resources(2)
    half = F(1, 2)
    return [
        ("c^{S,1} = c^{N,1} = (1, 0, 0)", s1.coverage == n1.coverage == _c(1, 0, 0)),
        ("Nash with two attacker resources is <(1,0,0), (1,1,0)>",
         n2.coverage == _c(1, 0, 0) and n2.attacker.probs == {(0, 1): 1}),
        ("SSE with two attacker resources is <(.5,.5,0), (1,0,1)>",
         s2.coverage == _c(half, half, 0) and s2.attacker.probs == {(0, 2): 1}),
        ("c^{S,2} != c^{N,2} = c^{N,1} = c^{S,1}", s2.coverage != n2.coverage == n1.coverage == s1.coverage),
        ("SSE strategy is in no Nash profile", check_sse_in_ne(g2, s2.defender) is None),
        ("SSE value dominates the Nash value", sse_dominates_ne_value(g2)),
    ]


def fx_example5():
    g = singleton_game(TABLE_10)
    cf = closed_form_defender(g)
    s1, n1 = _strategies(g, 1)
    s2, n2 = _strategies(g, 2)
    g2 = g.with_attacker_resources(2)
    return [
        ("c^{S,1} = c^{N,1} = (1/6, 2/3, 1/6)",
         cf.coverage == s1.coverage == n1.coverage == _c(F(1, 6), F(2, 3), F(1, 6))),
        ("c^{S,2} = (1/2, 0, 1/2)", s2.coverage == _c(F(1, 2), 0, F(1, 2))),
        ("c^{N,2} = (0, 3/4, 1/4)", n2.coverage == _c(0, F(3, 4), F(1, 4))),
        ("Nash attack marginals are (1, 7/10, 3/10)",
         n2.attacker.target_probs(3) == _c(1, F(7, 10), F(3, 10))),
        ("SSE strategy (1/2, 0, 1/2) is in no Nash profile", check_sse_in_ne(g2, s2.defender) is None),
        ("all three strategies differ",
         s2.coverage != n2.coverage and s2.coverage != s1.coverage and n2.coverage != n1.coverage),
    ]


def fx_table11():
    g = singleton_game(TABLE_11)
    M, safety = solve_maximin(g)
    sse, ne = solve_sse(g), solve_nash(g)
    C, _ = solve_minimax(g)
    return [
        ("maximin covers t2", M.marginals() == _c(0, 1)),
        ("maximin guarantees -2", safety == -2),
        ("attacking t1 is dominant", all(best_response_value(c, g).responses == ((0,),)
                                         for c in (_c(0, 0), _c(1, 0), _c(0, 1)))),
        ("maximin yields -1 against the attack on t1", defender_utility(M, (1, 0), g) == -1),
        ("minimax, SSE and Nash defend t1",
         C.marginals() == sse.coverage == ne.coverage == _c(1, 0)),
        ("SSE and Nash give the defender 0", sse.defender_value == 0 == ne.defender_value),
    ]


def fx_observability():
    g = singleton_game(TABLE_6)
    out = []
    sse_val = solve_sse(g).defender_value
    for p in (0, F(1, 2), 1):
        og = ObservabilityGame.with_equilibrium_rows(g, p, 2)
        C, rep = solve_observability(og)
        if p == 1:
            out.append(("p_obs = 1 recovers the SSE value", F(rep["defender_value"]) == sse_val))
        if p == 0:
            out.append(("p_obs = 0 yields a Nash profile", rep["flags"].get("no_view_gives_nash") is True))
        out.append((f"p_obs = {p}: SSE row with its Nash completion is an equilibrium",
                    rep["flags"].get("sse_row_equilibrium") is True))
    return out


FIXTURES = [
    ("model", fx_model),
    ("table1", fx_table1),
    ("table2", fx_table2),
    ("table4", fx_table4),
    ("table5", fx_table5),
    ("table5-two-resources", fx_section34),
    ("table6", fx_table6),
    ("example1", fx_example1),
    ("example2-table7", fx_example2),
    ("example3-table8", fx_example3),
    ("example4-table9", fx_example4),
    ("example5-table10", fx_example5),
    ("example6-table11", fx_table11),
    ("observability", fx_observability),
]


def run_fixtures() -> list:
    out = []
    for name, fn in FIXTURES:
        t0 = time.perf_counter()
        res = FixtureResult(name)
        try:
            res.checks = [(label, bool(ok)) for label, ok in fn()]
        except Exception as exc:  # a crash is a failed fixture, reported not raised
            res.error = f"{type(exc).__name__}: {exc}"
        res.seconds = time.perf_counter() - t0
        out.append(res)
    return out
