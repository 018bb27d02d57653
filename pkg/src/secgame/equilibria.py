"""Minimax, Nash and strong Stackelberg equilibria of security games.

Every routine works on exact rationals and goes through :mod:`secgame.lp`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bimatrix import Bimatrix, solve_bimatrix_ne
from .core import (
    ONE,
    ZERO,
    AttackerMixedStrategy,
    DefenderMixedStrategy,
    SecurityGame,
    TargetPayoffs,
    attack_probs,
    attacker_target_values,
    attacker_utility,
    best_response_value,
    defender_utility,
    enumerate_attack_vectors,
    enumerate_coverage_vectors,
    game_is_singleton_homogeneous,
    is_nash,
    marginals,
    pure_utilities,
    realize_marginals,
    systematic_decomposition,
)
from .errors import InvalidTarget, NotSSAS, PreconditionFailed
from .lp import EQ, GE, LE, MAXIMIZE, MINIMIZE, LinearProgram, Status, solve_lp

MINIMAX = "Minimax"
NASH = "Nash"
SSE = "SSE"


@dataclass(frozen=True)
class EquilibriumProfile:
    defender: DefenderMixedStrategy
    attacker: AttackerMixedStrategy
    concept: str
    defender_value: Fraction
    attacker_value: Fraction

    @property
    def coverage(self) -> tuple:
        return self.defender.marginals()


def _profile(game, C, A, concept):
    return EquilibriumProfile(C, A, concept,
                              defender_utility(C, A, game), attacker_utility(C, A, game))


@dataclass(frozen=True)
class ClosedFormResult:
    e_star: Fraction
    t_star: frozenset
    coverage: tuple
    attacker: Optional[AttackerMixedStrategy] = None
    beta: Optional[Fraction] = None


def _prime_weights(count, reverse=False):
    """The first ``count`` primes, used to tilt objectives towards different optimal vertices."""
    ps = []
    k = 2
    while len(ps) < count:
        if all(k % p for p in ps if p * p <= k):
            ps.append(k)
        k += 1
    return ps[::-1] if reverse else ps


def _strategy_from(D, values):
    return DefenderMixedStrategy({d: p for d, p in zip(D, values) if p})


# ---------------------------------------------------------------------------
# zero-sum counterpart and the f map


def zero_sum_counterpart(game: SecurityGame) -> SecurityGame:
    """Same game with defender payoffs replaced by the negated attacker payoffs."""
    targets = tuple(TargetPayoffs(-t.ac, -t.au, t.ac, t.au, t.name) for t in game.targets)
    return game.with_targets(targets)


def _single(a, game):
    if game.L != 1:
        raise ValueError("the f map is defined for a single attacker resource")
    return attack_probs(a, game)


def map_attacker_f(a, game: SecurityGame) -> AttackerMixedStrategy:
    """a -> abar with abar_i proportional to a_i * dUd_i / dUa_i."""
    a = _single(a, game)
    raw = [ai * t.delta_d / t.delta_a for ai, t in zip(a, game.targets)]
    lam = ONE / sum(raw, ZERO)
    return AttackerMixedStrategy.from_targets([lam * r for r in raw])


def map_attacker_f_inverse(abar, game: SecurityGame) -> AttackerMixedStrategy:
    """Inverse of :func:`map_attacker_f`."""
    abar = _single(abar, game)
    raw = [ai * t.delta_a / t.delta_d for ai, t in zip(abar, game.targets)]
    lam = ONE / sum(raw, ZERO)
    return AttackerMixedStrategy.from_targets([lam * r for r in raw])


# ---------------------------------------------------------------------------
# minimax / maximin


def _minimax_lp(game, D, Q):
    lp = LinearProgram()
    for k in range(len(D)):
        lp.add_variable(f"C{k}")
    v = lp.add_variable("v", lower=None)
    lp.add_constraint([ONE] * len(D) + [ZERO], EQ, ONE, "total")
    for q in Q:
        row = [pure_utilities(d, q, game)[1] for d in D] + [-ONE]
        lp.add_constraint(row, LE, ZERO, "att_" + "_".join(f"t{i + 1}" for i in q))
    obj = [ZERO] * lp.n
    obj[v] = ONE
    lp.set_objective(obj, MINIMIZE)
    return lp, v


def solve_minimax(game: SecurityGame, backend=None):
    """Defender strategy minimising the attacker's best-response utility, and that minimum."""
    D = enumerate_coverage_vectors(game)
    Q = enumerate_attack_vectors(game)
    lp, v = _minimax_lp(game, D, Q)
    sol = solve_lp(lp, backend)
    assert sol.status is Status.OPTIMAL
    return _strategy_from(D, sol.assignment[:len(D)]), sol.objective_value


def minimax_vertices(game: SecurityGame, backend=None) -> list:
    """Distinct minimax strategies reached by tilting the objective on the optimal face."""
    D = enumerate_coverage_vectors(game)
    Q = enumerate_attack_vectors(game)
    base, e_star = solve_minimax(game, backend)
    out = [base]
    for reverse in (False, True):
        lp, v = _minimax_lp(game, D, Q)
        lp.add_constraint([ZERO] * len(D) + [ONE], EQ, e_star, "on_face")
        w = _prime_weights(len(D), reverse)
        lp.set_objective([Fraction(x) for x in w] + [ZERO], MINIMIZE)
        sol = solve_lp(lp, backend)
        C = _strategy_from(D, sol.assignment[:len(D)])
        if C not in out:
            out.append(C)
    return out


def solve_maximin(game: SecurityGame, backend=None):
    """Defender safety-level strategy: maximise her worst case over attack vectors."""
    D = enumerate_coverage_vectors(game)
    Q = enumerate_attack_vectors(game)
    lp = LinearProgram()
    for k in range(len(D)):
        lp.add_variable(f"C{k}")
    u = lp.add_variable("u", lower=None)
    lp.add_constraint([ONE] * len(D) + [ZERO], EQ, ONE, "total")
    for q in Q:
        row = [pure_utilities(d, q, game)[0] for d in D] + [-ONE]
        lp.add_constraint(row, GE, ZERO)
    obj = [ZERO] * lp.n
    obj[u] = ONE
    lp.set_objective(obj, MAXIMIZE)
    sol = solve_lp(lp, backend)
    return _strategy_from(D, sol.assignment[:len(D)]), sol.objective_value


def _attacker_maximin_lp(zs, D, Q):
    # attacker in the zero-sum counterpart: max u s.t. U_a(d, abar) >= u for all d
    lp = LinearProgram()
    for q in Q:
        lp.add_variable("A_" + "_".join(f"t{i + 1}" for i in q))
    u = lp.add_variable("u", lower=None)
    lp.add_constraint([ONE] * len(Q) + [ZERO], EQ, ONE, "total")
    for d in D:
        row = [pure_utilities(d, q, zs)[1] for q in Q] + [-ONE]
        lp.add_constraint(row, GE, ZERO)
    obj = [ZERO] * lp.n
    obj[u] = ONE
    lp.set_objective(obj, MAXIMIZE)
    return lp, u


def solve_zero_sum_attacker(game: SecurityGame, backend=None, tilt=None):
    """An attacker maximin strategy of the zero-sum counterpart (as a target distribution)."""
    zs = zero_sum_counterpart(game)
    D = enumerate_coverage_vectors(zs)
    Q = enumerate_attack_vectors(zs)
    lp, u = _attacker_maximin_lp(zs, D, Q)
    sol = solve_lp(lp, backend)
    assert sol.status is Status.OPTIMAL
    if tilt is not None:
        value = sol.objective_value
        lp, u = _attacker_maximin_lp(zs, D, Q)
        lp.add_constraint([ZERO] * len(Q) + [ONE], EQ, value, "on_face")
        w = _prime_weights(len(Q), reverse=tilt)
        lp.set_objective([Fraction(x) for x in w] + [ZERO], MAXIMIZE)
        sol = solve_lp(lp, backend)
    return AttackerMixedStrategy({q: p for q, p in zip(Q, sol.assignment) if p})


def solve_nash(game: SecurityGame, backend=None) -> EquilibriumProfile:
    """A Nash profile.

    With one attacker resource the defender plays a minimax strategy and the
    attacker plays f^-1 of a maximin strategy of the zero-sum counterpart.
    With several attacker resources that construction is not available, so
    the game's bimatrix is solved by support enumeration instead.
    """
    if game.L > 1:
        return _solve_nash_bimatrix(game, backend)
    C, _ = solve_minimax(game, backend)
    abar = solve_zero_sum_attacker(game, backend)
    a = map_attacker_f_inverse(abar, game)
    prof = _profile(game, C, a, NASH)
    if not is_nash(C, a, game):
        raise AssertionError("constructed profile is not a Nash equilibrium")
    return prof


def nash_profiles(game: SecurityGame, backend=None) -> list:
    """Several Nash profiles (L = 1) reached through different optimal vertices."""
    Cs = minimax_vertices(game, backend)
    atts = []
    for tilt in (None, False, True):
        a = map_attacker_f_inverse(solve_zero_sum_attacker(game, backend, tilt), game)
        if a not in atts:
            atts.append(a)
    profiles = []
    for C, a in itertools.product(Cs, atts):
        profiles.append(_profile(game, C, a, NASH))
    return profiles


def game_bimatrix(game: SecurityGame) -> Bimatrix:
    D = enumerate_coverage_vectors(game)
    Q = enumerate_attack_vectors(game)
    pd, pa = [], []
    for d in D:
        rd, ra = [], []
        for q in Q:
            ud, ua = pure_utilities(d, q, game)
            rd.append(ud)
            ra.append(ua)
        pd.append(rd)
        pa.append(ra)
    return Bimatrix(tuple(D), tuple(Q), tuple(map(tuple, pd)), tuple(map(tuple, pa)))


def _solve_nash_bimatrix(game, backend=None):
    bm = game_bimatrix(game)
    x, y = solve_bimatrix_ne(bm, backend=backend)
    C = DefenderMixedStrategy({d: p for d, p in zip(bm.rows, x) if p})
    A = AttackerMixedStrategy({q: p for q, p in zip(bm.cols, y) if p})
    if not is_nash(C, A, game):
        raise AssertionError("bimatrix equilibrium is not a Nash profile of the game")
    return _profile(game, C, A, NASH)


# ---------------------------------------------------------------------------
# strong Stackelberg equilibrium


def _sse_lp(game, D, q):
    lp = LinearProgram()
    for k in range(len(D)):
        lp.add_variable(f"C{k}")
    lp.add_constraint([ONE] * len(D), EQ, ONE, "total")
    qs = set(q)
    # q is a best response iff each attacked target is worth at least as much
    # to the attacker as each target left alone
    for i in q:
        ti = game.targets[i]
        for j in range(game.n):
            if j in qs:
                continue
            tj = game.targets[j]
            row = [(ti.ac if d[i] else ti.au) - (tj.ac if d[j] else tj.au) for d in D]
            lp.add_constraint(row, GE, ZERO, f"br_t{i + 1}_over_t{j + 1}")
    lp.set_objective([pure_utilities(d, q, game)[0] for d in D], MAXIMIZE)
    return lp


def _sse_marginal_lp(game, q):
    # same program over coverage probabilities: 0 <= c_i <= 1, sum c <= K
    n = game.n
    sched = game.resources[0]
    lp = LinearProgram()
    for i in range(n):
        coverable = frozenset({i}) in sched
        lp.add_variable(f"c{i + 1}", ZERO, ONE if coverable else ZERO)
    lp.add_constraint([ONE] * n, LE, Fraction(game.K), "budget")
    qs = set(q)
    for i in q:
        ti = game.targets[i]
        for j in range(n):
            if j in qs:
                continue
            tj = game.targets[j]
            row = [ZERO] * n
            row[i] = ti.ac - ti.au
            row[j] = tj.au - tj.ac
            lp.add_constraint(row, GE, tj.au - ti.au, f"br_t{i + 1}_over_t{j + 1}")
    obj = [ZERO] * n
    for i in q:
        obj[i] = game.targets[i].delta_d
    lp.set_objective(obj, MAXIMIZE)
    const = sum((game.targets[i].du for i in q), ZERO)
    return lp, const


def marginal_space_ok(game: SecurityGame) -> bool:
    """Coverage polytope is {0 <= c <= 1 on coverable targets, sum c <= K}.

    Holds for homogeneous single-target schedules that include the empty one.
    """
    return (game_is_singleton_homogeneous(game, require_all=False)
            and frozenset() in game.resources[0])


def _sse_upper_bounds(game, Q, D, marginal):
    if not marginal:
        return [max(pure_utilities(d, q, game)[0] for d in D) for q in Q]
    sched = game.resources[0]
    out = []
    for q in Q:
        gains = sorted((game.targets[i].delta_d for i in q if frozenset({i}) in sched),
                       reverse=True)
        out.append(sum((game.targets[i].du for i in q), ZERO) + sum(gains[:game.K], ZERO))
    return out


def solve_sse(game: SecurityGame, backend=None, prune=True, method="auto"
              ) -> EquilibriumProfile:
    """Strong Stackelberg equilibrium via one LP per attack vector.

    Attack vectors are visited by decreasing upper bound max_d U_d(d, q);
    any vector whose bound cannot beat the incumbent is skipped.  Value ties
    go to the lowest-index attack vector.

    ``method`` picks the LP space: "coverage" (distributions over D),
    "marginal" (coverage probabilities, only for games where every marginal
    vector with sum at most K is realisable) or "auto".
    """
    if method not in ("auto", "coverage", "marginal"):
        raise ValueError(f"unknown method {method!r}")
    marginal = marginal_space_ok(game) if method == "auto" else method == "marginal"
    if marginal and not marginal_space_ok(game):
        raise ValueError("marginal-space SSE needs homogeneous singleton schedules with the "
                         "empty schedule")
    D = None if marginal else enumerate_coverage_vectors(game)
    Q = enumerate_attack_vectors(game)
    ub = _sse_upper_bounds(game, Q, D, marginal)
    order = sorted(range(len(Q)), key=lambda k: (-ub[k], k)) if prune else range(len(Q))
    best = None  # (value, index, assignment)
    for k in order:
        if prune and best is not None:
            if ub[k] < best[0] or (ub[k] == best[0] and k > best[1]):
                continue
        if marginal:
            lp, const = _sse_marginal_lp(game, Q[k])
        else:
            lp, const = _sse_lp(game, D, Q[k]), ZERO
        sol = solve_lp(lp, backend)
        if not sol.feasible:
            continue
        val = sol.objective_value + const
        if best is None or val > best[0] or (val == best[0] and k < best[1]):
            best = (val, k, sol.assignment)
    if marginal:
        C = realize_marginals(best[2], game)
    else:
        C = _strategy_from(D, best[2])
    A = AttackerMixedStrategy.pure(Q[best[1]])
    prof = _profile(game, C, A, SSE)
    assert prof.defender_value == best[0]
    return prof


def sse_value(c, game: SecurityGame) -> Fraction:
    """Defender utility when the attacker best-responds to c, ties broken in her favour."""
    c = marginals(c, game)
    br = best_response_value(c, game)
    return max(defender_utility(c, _pure_attack(q, game), game) for q in br.responses)


def _pure_attack(q, game):
    a = [ZERO] * game.n
    for i in q:
        a[i] = ONE
    return a


# ---------------------------------------------------------------------------
# SSE-in-NE feasibility program


@dataclass(frozen=True)
class SseNeCheck:
    witness: Optional[AttackerMixedStrategy]
    solution: object            # the final LpSolution (certificate included)
    program: LinearProgram
    rows: tuple                 # coverage vectors carried as rows of the final program


def sse_in_ne_program(game: SecurityGame, C: DefenderMixedStrategy, rows=None):
    """The feasibility program over A_q and Z, restricted to the given coverage rows."""
    D = enumerate_coverage_vectors(game) if rows is None else rows
    Q = enumerate_attack_vectors(game)
    c = C.marginals()
    tau = set(best_response_value(c, game).responses)
    lp = LinearProgram()
    for q in Q:
        # off the best-response set A_q is pinned to zero
        hi = ONE if q in tau else ZERO
        lp.add_variable("A_" + "_".join(f"t{i + 1}" for i in q), ZERO, hi)
    z = lp.add_variable("Z", lower=None)
    lp.add_constraint([ONE] * len(Q) + [ZERO], EQ, ONE, "total")
    for d in D:
        row = [pure_utilities(d, q, game)[0] for q in Q] + [-ONE]
        rel = EQ if C.support.get(d, ZERO) > 0 else LE
        lp.add_constraint(row, rel, ZERO, "d_" + "".join(map(str, d)))
    return lp, Q


def check_sse_in_ne_full(game: SecurityGame, C: DefenderMixedStrategy, backend=None,
                         row_generation=True) -> SseNeCheck:
    """Decide whether C is part of some Nash profile.

    With ``row_generation`` the ``<= Z`` rows are added lazily: start from the
    support rows, solve, add the most violated coverage vector, repeat.  The
    final program is a subsystem of the full one, so an infeasibility
    certificate for it is a certificate for the full system, and a feasible
    point satisfies every row by construction.
    """
    D = enumerate_coverage_vectors(game)
    Dset = set(D)
    for d in C.support:
        if d not in Dset:
            raise ValueError(f"coverage vector {d} is not feasible in this game")
    if not row_generation:
        lp, Q = sse_in_ne_program(game, C)
        sol = solve_lp(lp, backend)
        return SseNeCheck(_witness(sol, Q), sol, lp, tuple(D))

    rows = [d for d in D if C.support.get(d, ZERO) > 0]
    Q = enumerate_attack_vectors(game)
    while True:
        lp, Q = sse_in_ne_program(game, C, rows)
        sol = solve_lp(lp, backend)
        if not sol.feasible:
            return SseNeCheck(None, sol, lp, tuple(rows))
        A = sol.assignment[:len(Q)]
        Z = sol.assignment[len(Q)]
        a = [ZERO] * game.n
        for q, p in zip(Q, A):
            if p:
                for i in q:
                    a[i] += p
        worst, worst_d = None, None
        have = set(rows)
        for d in D:
            if d in have:
                continue
            val = sum((a[i] * (t.dc if d[i] else t.du) for i, t in enumerate(game.targets)
                       if a[i]), ZERO)
            if val > Z and (worst is None or val > worst):
                worst, worst_d = val, d
        if worst_d is None:
            return SseNeCheck(_witness(sol, Q), sol, lp, tuple(rows))
        rows.append(worst_d)


def _witness(sol, Q):
    if not sol.feasible:
        return None
    return AttackerMixedStrategy({q: p for q, p in zip(Q, sol.assignment) if p})


def check_sse_in_ne(game: SecurityGame, C: DefenderMixedStrategy, backend=None):
    """An attacker strategy completing C to a Nash profile, or None if none exists."""
    return check_sse_in_ne_full(game, C, backend).witness


def sse_dominates_ne_value(game: SecurityGame, backend=None) -> bool:
    return solve_sse(game, backend).defender_value >= solve_nash(game, backend).defender_value


# ---------------------------------------------------------------------------
# closed forms for singleton-schedule games


def _require_closed_form_game(game):
    if game.L != 1:
        raise PreconditionFailed("closed forms need a single attacker resource")
    if not game_is_singleton_homogeneous(game):
        raise PreconditionFailed(
            "closed forms need homogeneous resources that can cover any single target")


def e_star_lp(game: SecurityGame, backend=None) -> Fraction:
    """E* from the marginal-space program: sum c <= K, 0 <= c <= 1, U_a(c, t) <= v."""
    n = game.n
    lp = LinearProgram()
    for i in range(n):
        lp.add_variable(f"c{i + 1}", ZERO, ONE)
    v = lp.add_variable("v", lower=None)
    lp.add_constraint([ONE] * n + [ZERO], LE, Fraction(game.K), "budget")
    for i, t in enumerate(game.targets):
        row = [ZERO] * (n + 1)
        row[i] = t.ac - t.au
        row[v] = -ONE
        lp.add_constraint(row, LE, -t.au, f"att_t{i + 1}")
    obj = [ZERO] * (n + 1)
    obj[v] = ONE
    lp.set_objective(obj, MINIMIZE)
    return solve_lp(lp, backend).objective_value


def e_star_water_filling(game: SecurityGame) -> Fraction:
    """E* by sweeping the breakpoints of the needed-coverage curve."""
    ts = game.targets
    floor_v = max(t.ac for t in ts)
    K = game.K

    def need(v):
        return sum((max(ZERO, (t.au - v) / t.delta_a) for t in ts), ZERO)

    if need(floor_v) <= K:
        return floor_v
    # need() is decreasing and linear between consecutive U_a^u values
    order = sorted(ts, key=lambda t: -t.au)
    for k in range(1, len(order) + 1):
        active = order[:k]
        inv = sum((ONE / t.delta_a for t in active), ZERO)
        v = (sum((t.au / t.delta_a for t in active), ZERO) - K) / inv
        lo = order[k].au if k < len(order) else None
        if v <= active[-1].au and (lo is None or v >= lo):
            return max(v, floor_v)
    raise AssertionError("water filling found no crossing")


def closed_form_defender(game: SecurityGame, backend=None, check=True) -> ClosedFormResult:
    _require_closed_form_game(game)
    e = e_star_lp(game, backend)
    if e != e_star_water_filling(game):
        raise AssertionError("E* disagrees between the LP and the water-filling sweep")
    for i, t in enumerate(game.targets):
        if t.ac == e:
            raise PreconditionFailed(
                f"U_a^c(t{i + 1}) equals E* = {e}; the unique-strategy formula does not apply",
                target=i)
    t_star = frozenset(i for i, t in enumerate(game.targets) if t.au >= e)
    c = tuple((t.au - e) / t.delta_a if i in t_star else ZERO
              for i, t in enumerate(game.targets))
    if game.K < game.n and sum(c, ZERO) < game.K:
        raise AssertionError("closed-form coverage leaves resources unused")
    if check:
        C, v = solve_minimax(game, backend)
        if v != e or C.marginals() != c:
            raise AssertionError("closed-form coverage disagrees with the minimax program")
    return ClosedFormResult(e, t_star, c)


def closed_form_attacker(game: SecurityGame, cf: ClosedFormResult) -> ClosedFormResult:
    """The unique attacker Nash strategy when U_a^u(t) != E* everywhere."""
    _require_closed_form_game(game)
    for i, t in enumerate(game.targets):
        if t.au == cf.e_star:
            raise PreconditionFailed(
                f"U_a^u(t{i + 1}) equals E* = {cf.e_star}; the attacker strategy is not unique",
                target=i)
    beta = ONE / sum((ONE / game.targets[i].delta_d for i in cf.t_star), ZERO)
    a = [beta / t.delta_d if i in cf.t_star else ZERO for i, t in enumerate(game.targets)]
    att = AttackerMixedStrategy.from_targets(a)
    if not is_nash(cf.coverage, a, game):
        raise AssertionError("closed-form attacker strategy is not a best response")
    return ClosedFormResult(cf.e_star, cf.t_star, cf.coverage, att, beta)


# ---------------------------------------------------------------------------
# constructive reductions


def realize_reduced_marginals(C: DefenderMixedStrategy, c_target, game: SecurityGame
                              ) -> DefenderMixedStrategy:
    """A strategy with marginals exactly c_target, obtained from C by moving mass to subschedules.

    For each target j that must lose coverage, a fixed fraction of the mass of
    every vector covering j is moved to the same vector with j uncovered.
    """
    c = list(C.marginals())
    tgt = [Fraction(v) for v in c_target]
    if len(tgt) != len(c):
        raise InvalidTarget("target coverage has the wrong length")
    for i, (have, want) in enumerate(zip(c, tgt)):
        if want < 0 or want > have:
            raise InvalidTarget(f"target coverage for t{i + 1} must lie in [0, {have}]")
    Dset = set(enumerate_coverage_vectors(game))
    dist = dict(C.support)
    for j in range(len(c)):
        if tgt[j] == c[j]:
            continue
        ratio = (c[j] - tgt[j]) / c[j]
        new = {}
        for d, p in dist.items():
            if not d[j]:
                new[d] = new.get(d, ZERO) + p
                continue
            lower = d[:j] + (0,) + d[j + 1:]
            if lower not in Dset:
                raise NotSSAS(f"{lower} is not a feasible coverage vector")
            moved = p * ratio
            if p - moved:
                new[d] = new.get(d, ZERO) + p - moved
            if moved:
                new[lower] = new.get(lower, ZERO) + moved
        dist = new
        c[j] = tgt[j]
    out = DefenderMixedStrategy(dist)
    assert list(out.marginals()) == tgt
    return out


def lift_ne_multi(game1: SecurityGame, profile: EquilibriumProfile, L: int
                  ) -> Optional[EquilibriumProfile]:
    """Scale a single-resource Nash profile to L attacker resources when L*a_i <= 1."""
    if game1.L != 1:
        raise ValueError("lift starts from a single-resource game")
    if L == 1:
        return profile
    a = profile.attacker.target_probs(game1.n)
    scaled = [L * ai for ai in a]
    if any(v > 1 for v in scaled):
        return None
    gL = game1.with_attacker_resources(L)
    A = AttackerMixedStrategy(systematic_decomposition(scaled, L))
    if not is_nash(profile.defender, A, gL):
        raise AssertionError("lifted profile is not a Nash equilibrium")
    return _profile(gL, profile.defender, A, NASH)


__all__ = [
    "ClosedFormResult", "EquilibriumProfile", "MINIMAX", "NASH", "SSE", "SseNeCheck",
    "check_sse_in_ne", "check_sse_in_ne_full", "closed_form_attacker", "closed_form_defender",
    "e_star_lp", "e_star_water_filling", "game_bimatrix", "lift_ne_multi",
    "map_attacker_f", "map_attacker_f_inverse", "minimax_vertices", "nash_profiles",
    "realize_reduced_marginals", "solve_maximin", "solve_minimax", "solve_nash", "solve_sse",
    "solve_zero_sum_attacker", "sse_dominates_ne_value", "sse_in_ne_program", "sse_value",
    "zero_sum_counterpart",
]
