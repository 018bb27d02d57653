"""Random security games and the SSE-is-NE sweep.

Each game is drawn from its own Philox stream keyed by (seed, index), so a
corpus is identical whatever order or process it is generated in.
"""
from __future__ import annotations

import csv
import io
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .core import SecurityGame, TargetPayoffs, is_nash
from .equilibria import check_sse_in_ne_full, solve_sse
from .errors import InvalidGame, TooManySchedules
from .gamefile import fmt_decimal
from .lp import Status, check_solution

log = logging.getLogger(__name__)

PAYOFF_LO, PAYOFF_HI = -10, 10
DEFAULT_GAMES_PER_CELL = 200
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class GeneratorParams:
    n_targets: int = 10
    defender_resources: int = 1
    attacker_resources: int = 1
    schedule_size: int = 1
    n_schedules: int = 10
    n_games: int = DEFAULT_GAMES_PER_CELL
    seed: int = 0

    def __post_init__(self):
        for name in ("n_targets", "defender_resources", "attacker_resources",
                     "schedule_size", "n_schedules", "n_games"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        if self.schedule_size > self.n_targets:
            raise ValueError("schedule_size cannot exceed n_targets")
        if not isinstance(self.seed, int) or not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @classmethod
    def from_dict(cls, d):
        known = {f for f in cls.__dataclass_fields__}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown generator parameters: {sorted(extra)}")
        return cls(**d)


def rng_for(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed & _MASK64, index & _MASK64]))


def _ordered_pair(rng):
    while True:
        x, y = (int(v) for v in rng.integers(PAYOFF_LO, PAYOFF_HI + 1, size=2))
        if x > y:
            return x, y


def generate_game(params: GeneratorParams, index: int) -> SecurityGame:
    n, s, m = params.n_targets, params.schedule_size, params.n_schedules
    if m > math.comb(n, s):
        raise TooManySchedules(f"only {math.comb(n, s)} distinct schedules of size {s} "
                               f"exist on {n} targets, {m} requested")
    rng = rng_for(params.seed, index)
    targets = []
    for i in range(n):
        dc, du = _ordered_pair(rng)
        au, ac = _ordered_pair(rng)
        targets.append(TargetPayoffs(dc, du, ac, au, f"t{i + 1}"))
    chosen = []
    seen = set()
    while len(chosen) < m:
        sched = tuple(sorted(int(t) for t in rng.choice(n, size=s, replace=False)))
        if sched not in seen:
            seen.add(sched)
            chosen.append(sched)
    chosen.append(())
    return SecurityGame.homogeneous(targets, chosen, params.defender_resources,
                                    params.attacker_resources)


@dataclass(frozen=True)
class GameOutcome:
    index: int
    sse_is_ne: bool
    verified: bool
    error: str = ""


@dataclass(frozen=True)
class SweepRecord:
    params: GeneratorParams
    games_run: int
    sse_not_ne_count: int
    fraction: Fraction
    wall_time_ms: int
    failures: int = 0


def evaluate_game(game: SecurityGame, backend=None) -> tuple:
    """(sse_is_ne, verified): the SSE/NE verdict plus an exact check of its evidence."""
    sse = solve_sse(game, backend)
    res = check_sse_in_ne_full(game, sse.defender, backend)
    if res.witness is not None:
        return True, is_nash(sse.defender, res.witness, game)
    ok = res.solution.status is Status.INFEASIBLE and check_solution(res.program, res.solution)
    return False, ok


def _run_one(args):
    params, index, backend = args
    try:
        game = generate_game(params, index)
        is_ne, ok = evaluate_game(game, backend)
        return GameOutcome(index, is_ne, ok)
    except (InvalidGame, ArithmeticError, AssertionError, ValueError) as exc:
        return GameOutcome(index, False, False, f"{type(exc).__name__}: {exc}")


def run_cell(params: GeneratorParams, workers: int = 1, backend=None) -> SweepRecord:
    t0 = time.perf_counter()
    jobs = [(params, i, backend) for i in range(params.n_games)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            outcomes = list(ex.map(_run_one, jobs, chunksize=8))
    else:
        outcomes = [_run_one(j) for j in jobs]
    outcomes.sort(key=lambda o: o.index)
    bad = [o for o in outcomes if o.error or not o.verified]
    good = [o for o in outcomes if not (o.error or not o.verified)]
    if bad:
        log.warning("%d games failed or did not verify in cell %s; first: %s",
                    len(bad), params, bad[0].error or "unverified evidence")
    count = sum(1 for o in good if not o.sse_is_ne)
    run = len(good)
    frac = Fraction(count, run) if run else Fraction(0)
    ms = int((time.perf_counter() - t0) * 1000)
    return SweepRecord(params, run, count, frac, ms, len(bad))


def run_sweep(grid, workers: int = 1, backend=None, progress=None) -> list:
    out = []
    for params in grid:
        rec = run_cell(params, workers, backend)
        if progress is not None:
            progress(rec)
        out.append(rec)
    return out


CSV_HEADER = ["n_targets", "def_resources", "att_resources", "sched_size", "n_scheds",
              "n_games", "sse_not_ne", "fraction", "fraction_exact"]


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        p = r.params
        exact = f"{r.fraction.numerator}/{r.fraction.denominator}"
        w.writerow([p.n_targets, p.defender_resources, p.attacker_resources, p.schedule_size,
                    p.n_schedules, r.games_run, r.sse_not_ne_count, fmt_decimal(r.fraction),
                    exact])
    return buf.getvalue()


def params_to_dict(p: GeneratorParams) -> dict:
    return asdict(p)


def figure2_grid(n_games=DEFAULT_GAMES_PER_CELL, seed=0, n_targets=10) -> list:
    """A 27-cell grid over the four varied parameters.

    Schedules of size 1 are crossed with 1-3 attacker resources and 1-3
    defender resources.  Larger schedules are only defined for a single
    attacker resource, so sizes 2 and 3 are crossed with defender resources
    and the number of schedules instead.
    """
    grid = []
    for L in (1, 2, 3):
        for K in (1, 2, 3):
            grid.append(GeneratorParams(n_targets, K, L, 1, n_targets, n_games, seed))
    for size in (2, 3):
        for K in (1, 2, 3):
            for m in (5, 10, 20):
                grid.append(GeneratorParams(n_targets, K, 1, size, m, n_games, seed))
    return grid
