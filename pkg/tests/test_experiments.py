import math

import pytest
from hypothesis import given, settings, strategies as st

from secgame.core import check_ssas
from secgame.errors import TooManySchedules
from secgame.experiments import (CSV_HEADER, GeneratorParams, figure2_grid, generate_game,
                                 records_to_csv, run_cell, run_sweep)


def test_same_seed_same_game():
    p = GeneratorParams(10, 2, 1, 2, 10, 5, seed=42)
    assert generate_game(p, 3) == generate_game(p, 3)
    assert generate_game(p, 3) != generate_game(p, 4)
    assert generate_game(p, 3) != generate_game(GeneratorParams(10, 2, 1, 2, 10, 5, 43), 3)


@settings(max_examples=50)
@given(st.integers(0, 2**64 - 1), st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 5))
def test_generated_payoffs_and_schedules(seed, index, size, m):
    n = 6
    m = min(m, math.comb(n, size))
    g = generate_game(GeneratorParams(n, 2, 1, size, m, 1, seed), index)
    for t in g.targets:
        assert t.dc > t.du and t.au > t.ac
        assert all(-10 <= v <= 10 for v in (t.dc, t.du, t.ac, t.au))
    sched = g.resources[0]
    assert len(sched) == m + 1 and frozenset() in sched
    assert all(len(s) == size for s in sched if s)
    assert g.is_homogeneous and g.K == 2


def test_full_size_schedule():
    g = generate_game(GeneratorParams(4, 1, 1, 4, 1, 1, 0), 0)
    assert set(g.resources[0]) == {frozenset(range(4)), frozenset()}


def test_too_many_schedules():
    with pytest.raises(TooManySchedules):
        generate_game(GeneratorParams(4, 1, 1, 2, 7, 1, 0), 0)


def test_param_validation():
    with pytest.raises(ValueError):
        GeneratorParams(0)
    with pytest.raises(ValueError):
        GeneratorParams(4, schedule_size=5)
    with pytest.raises(ValueError):
        GeneratorParams.from_dict({"n_targets": 4, "colour": 1})


def test_singleton_cell_is_zero():
    rec = run_cell(GeneratorParams(10, 2, 1, 1, 10, 25, 3))
    assert rec.games_run == 25 and rec.failures == 0
    assert rec.sse_not_ne_count == 0 and rec.fraction == 0


def test_more_attackers_never_fewer_failures_on_small_cell():
    lo = run_cell(GeneratorParams(10, 1, 1, 1, 10, 20, 4))
    hi = run_cell(GeneratorParams(10, 1, 2, 1, 10, 20, 4))
    assert hi.fraction >= lo.fraction == 0


def test_csv_is_deterministic_and_exact():
    grid = [GeneratorParams(6, 1, 1, 2, 4, 6, 9), GeneratorParams(6, 1, 2, 1, 6, 6, 9)]
    a = records_to_csv(run_sweep(grid))
    b = records_to_csv(run_sweep(grid))
    assert a == b
    lines = a.splitlines()
    assert lines[0].split(",") == CSV_HEADER
    for line in lines[1:]:
        cols = line.split(",")
        num, den = map(int, cols[-1].split("/"))
        assert int(cols[6]) * den == num * int(cols[5])


def test_workers_do_not_change_results():
    p = GeneratorParams(6, 1, 2, 1, 6, 8, 17)
    a, b = run_cell(p, workers=1), run_cell(p, workers=2)
    assert (a.sse_not_ne_count, a.games_run) == (b.sse_not_ne_count, b.games_run)


def test_figure2_grid_shape():
    grid = figure2_grid(n_games=5)
    assert len(grid) == 27
    for p in grid:
        if p.attacker_resources > 1:
            assert p.schedule_size == 1
        generate_game(p, 0)
    size1 = [p for p in grid if p.schedule_size == 1]
    assert {(p.defender_resources, p.attacker_resources) for p in size1} == \
        {(K, L) for K in (1, 2, 3) for L in (1, 2, 3)}


def test_generated_singleton_games_are_ssas():
    g = generate_game(GeneratorParams(10, 3, 1, 1, 10, 1, 0), 0)
    assert check_ssas(g)
