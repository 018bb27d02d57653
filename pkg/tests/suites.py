"""Randomized theorem checks shared by the unit tests and the acceptance run.

Every check returns a plain dict of counts so two runs can be compared
byte for byte after JSON encoding.
"""
import json
from fractions import Fraction as F
from itertools import product

from secgame.core import (AttackerMixedStrategy, best_response_value, check_ssas,
                          enumerate_coverage_vectors, is_nash, subset_closure)
from secgame.equilibria import (check_sse_in_ne, map_attacker_f, minimax_vertices, nash_profiles,
                                solve_minimax, solve_nash, solve_sse, sse_dominates_ne_value,
                                zero_sum_counterpart)
from secgame.experiments import GeneratorParams, generate_game
from secgame.observability import ObservabilityGame, solve_observability

# small L = 1 settings: (targets, defender resources, schedule size, schedules)
GENERAL_SETTINGS = [(5, 1, 2, 4), (5, 2, 2, 5), (6, 1, 3, 4), (4, 2, 1, 4), (5, 1, 1, 3)]
SSAS_SETTINGS = [(5, 1, 2, 4), (5, 2, 2, 3), (4, 2, 3, 2), (6, 1, 1, 6)]


def games(settings, count, seed, closed=False):
    """``count`` games spread round-robin over the settings."""
    out = []
    for k in range(count):
        n, K, size, m = settings[k % len(settings)]
        g = generate_game(GeneratorParams(n, K, 1, size, m, count, seed), k)
        out.append(subset_closure(g) if closed else g)
    return out


def theorem_suite(count=200, seed=11):
    stats = {"games": 0, "ne_value_is_minimax": 0, "interchangeable": 0, "attacker_value_unique": 0, "zero_sum_transform": 0,
             "sse_ge_ne": 0, "multi_profile_games": 0}
    for g in games(GENERAL_SETTINGS, count, seed):
        stats["games"] += 1
        _, e_star = solve_minimax(g)
        ne = solve_nash(g)
        vertices = minimax_vertices(g)
        if (best_response_value(ne.coverage, g).value == e_star
                and all(best_response_value(C.marginals(), g).value == e_star
                        and is_nash(C, ne.attacker, g) for C in vertices)):
            stats["ne_value_is_minimax"] += 1
        profiles = nash_profiles(g)
        if len({(p.defender, p.attacker) for p in profiles}) > 1:
            stats["multi_profile_games"] += 1
        if all(is_nash(p.defender, q.attacker, g) for p, q in product(profiles, profiles)):
            stats["interchangeable"] += 1
        if all(p.attacker_value == e_star for p in profiles):
            stats["attacker_value_unique"] += 1
        zs = zero_sum_counterpart(g)
        if all(is_nash(p.defender, map_attacker_f(p.attacker, g), zs) for p in profiles):
            stats["zero_sum_transform"] += 1
        if sse_dominates_ne_value(g):
            stats["sse_ge_ne"] += 1
    return stats


def ssas_suite(count=200, seed=12):
    stats = {"games": 0, "ssas": 0, "witness": 0, "witness_is_nash": 0}
    for g in games(SSAS_SETTINGS, count, seed, closed=True):
        stats["games"] += 1
        stats["ssas"] += check_ssas(g)
        sse = solve_sse(g)
        a = check_sse_in_ne(g, sse.defender)
        if a is not None:
            stats["witness"] += 1
            stats["witness_is_nash"] += is_nash(sse.defender, a, g)
    return stats


def encode(stats) -> bytes:
    return json.dumps(stats, sort_keys=True).encode()


# ---------------------------------------------------------------------------
# observability

OBS_P = (F(0), F(1, 4), F(1, 2), F(3, 4), F(1))
OBS_SETTINGS = [(3, 1, 2, 2), (4, 1, 1, 4), (5, 1, 1, 5), (3, 1, 2, 1), (2, 1, 1, 2)]


def ssas_small_games(count=20, seed=13, max_d=6):
    """Subset-closed L = 1 games with at most ``max_d`` coverage vectors."""
    out = []
    k = 0
    while len(out) < count:
        n, K, size, m = OBS_SETTINGS[k % len(OBS_SETTINGS)]
        g = subset_closure(generate_game(GeneratorParams(n, K, 1, size, m, 1, seed), k))
        k += 1
        if len(enumerate_coverage_vectors(g)) <= max_d:
            out.append(g)
    return out


def observability_suite(count=20, m=4, seed=13):
    """Per game and p_obs: the proposition flags plus the exact values, as strings."""
    rows = []
    for idx, g in enumerate(ssas_small_games(count, seed)):
        sse = solve_sse(g)
        for p in OBS_P:
            og = ObservabilityGame.with_equilibrium_rows(g, p, m)
            C, rep = solve_observability(og)
            flags = dict(rep["flags"])
            if p == 1:
                flags["value_is_sse"] = F(rep["defender_value"]) == sse.defender_value
            if p == 0:
                att = AttackerMixedStrategy({tuple(int(t[1:]) - 1 for t in k.split("_")): F(v)
                                             for k, v in rep["attacker_unobserved"].items()})
                flags["profile_is_nash"] = is_nash(C, att, g)
            rows.append({"game": idx, "p_obs": str(p), "n_rows": rep["n_rows"],
                         "defender_value": rep["defender_value"], "flags": flags})
    return rows
