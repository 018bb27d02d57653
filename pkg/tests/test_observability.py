import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from secgame.core import (SecurityGame, defender_utility, enumerate_attack_vectors,
                          enumerate_coverage_vectors)
from secgame.equilibria import solve_sse, sse_value
from secgame.errors import CapExceeded
from secgame.observability import (ObservabilityGame, build_folded_bimatrix,
                                   folded_attacker_payoff_full, simplex_lattice,
                                   solve_observability)
from secgame.paper_fixtures import TABLE_6, TABLE_8, table5_game

from suites import ssas_small_games


def _onehot(q, n):
    return tuple(1 if i in q else 0 for i in range(n))


def test_lattice_size_and_cap():
    D = enumerate_coverage_vectors(SecurityGame.singletons(TABLE_8))
    rows = simplex_lattice(D, 3)
    assert len(rows) == math.comb(3 + len(D) - 1, len(D) - 1)
    assert len({tuple(sorted(r.support.items())) for r in rows}) == len(rows)
    assert all(sum(r.support.values()) == 1 for r in rows)
    with pytest.raises(CapExceeded):
        simplex_lattice(D, 50, cap=100)


def test_p_obs_one_rows_are_commitment_values():
    g = SecurityGame.singletons(TABLE_6)
    bm = build_folded_bimatrix(ObservabilityGame.with_equilibrium_rows(g, 1, 2))
    for sigma, row in zip(bm.rows, bm.payoff_d):
        assert len(set(row)) == 1 and row[0] == sse_value(sigma.marginals(), g)
    assert all(v == 0 for row in bm.payoff_a for v in row)


def test_p_obs_zero_is_simultaneous_game():
    g = SecurityGame.singletons(TABLE_8)
    bm = build_folded_bimatrix(ObservabilityGame(g, 0, 2))
    for sigma, row in zip(bm.rows, bm.payoff_d):
        c = sigma.marginals()
        assert list(row) == [defender_utility(c, _onehot(q, g.n), g) for q in bm.cols]


def test_table5_folded_entry():
    g = table5_game()
    og = ObservabilityGame.with_equilibrium_rows(g, F(1, 2), 1)
    bm = build_folded_bimatrix(og)
    sse = solve_sse(g).defender
    r = [k for k, s in enumerate(bm.rows) if s == sse][0]
    assert bm.payoff_d[r][bm.cols.index((1,))] == F(7, 2)


@pytest.mark.parametrize("p", [F(0), F(1, 3), F(1, 2), F(1)])
def test_dropped_attacker_constant_preserves_best_responses(p):
    g = SecurityGame.singletons(TABLE_8)
    og = ObservabilityGame.with_equilibrium_rows(g, p, 2)
    bm = build_folded_bimatrix(og)
    for sigma, row in zip(bm.rows, bm.payoff_a):
        full = [folded_attacker_payoff_full(og, sigma, q) for q in bm.cols]
        shift = full[0] - row[0]
        assert all(f - r == shift for f, r in zip(full, row))


def test_report_shape():
    g = SecurityGame.singletons(TABLE_6)
    C, rep = solve_observability(ObservabilityGame.with_equilibrium_rows(g, F(1, 2), 2))
    for key in ("p_obs", "grid_m", "n_rows", "defender_rows", "defender_averaged",
                "attacker_unobserved", "defender_value", "sse_value", "flags", "mixture_note"):
        assert key in rep
    assert rep["p_obs"] == "1/2" and rep["grid_m"] == 2
    assert sum(F(r["probability"]) for r in rep["defender_rows"]) == 1
    assert sum(C.support.values()) == 1


def test_invalid_parameters():
    g = SecurityGame.singletons(TABLE_6)
    with pytest.raises(ValueError):
        ObservabilityGame(g, F(3, 2), 2)
    with pytest.raises(ValueError):
        ObservabilityGame(g, F(1, 2), 0)


@pytest.mark.parametrize("idx", range(4))
def test_propositions_on_small_ssas_games(idx):
    g = ssas_small_games(4, seed=5)[idx]
    sse_val = solve_sse(g).defender_value
    for p in (F(0), F(1, 2), F(1)):
        _, rep = solve_observability(ObservabilityGame.with_equilibrium_rows(g, p, 2))
        assert rep["flags"] and all(rep["flags"].values())
        if p == 1:
            assert F(rep["defender_value"]) == sse_val


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(range(6)), st.sampled_from([1, 2]))
def test_refinement_monotone_at_full_observation(idx, m):
    g = ssas_small_games(6, seed=21)[idx]
    v = [F(solve_observability(ObservabilityGame.with_equilibrium_rows(g, 1, k))[1]
           ["defender_value"]) for k in (m, 2 * m)]
    assert v[0] <= v[1]


def test_folded_matrix_dimensions():
    g = SecurityGame.singletons(TABLE_8)
    og = ObservabilityGame.with_equilibrium_rows(g, F(1, 4), 2)
    bm = build_folded_bimatrix(og)
    assert bm.shape == (len(og.rows()), len(enumerate_attack_vectors(g)))
