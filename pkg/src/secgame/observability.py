"""Defender commitment when the attacker observes her distribution only with probability p_obs.

The extensive game is discretised: the defender picks one distribution over
coverage vectors from a finite menu (a simplex lattice plus the base game's
SSE and Nash distributions).  The observed branch is folded into the row
payoffs through the attacker's best response with ties broken for the
defender, leaving a bimatrix between menu rows and unobserved attacks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .bimatrix import Bimatrix, is_bimatrix_nash, solve_bimatrix_ne
from .core import (
    ONE,
    ZERO,
    AttackerMixedStrategy,
    DefenderMixedStrategy,
    SecurityGame,
    attacker_utility,
    best_response_value,
    defender_utility,
    enumerate_attack_vectors,
    enumerate_coverage_vectors,
    is_nash,
)
from .equilibria import check_sse_in_ne, solve_nash, solve_sse, sse_value
from .errors import CapExceeded

GRID_CAP = 20_000


def _pure_attack(q, n):
    return tuple(ONE if i in q else ZERO for i in range(n))


def simplex_lattice(D, m, cap=GRID_CAP):
    """All distributions over D whose probabilities are multiples of 1/m."""
    size = math.comb(m + len(D) - 1, len(D) - 1)
    if size > cap:
        raise CapExceeded(f"lattice with {size} points exceeds the cap of {cap}")
    out = []

    def rec(i, left, acc):
        if i == len(D) - 1:
            acc.append(left)
            out.append(DefenderMixedStrategy(
                {D[j]: Fraction(k, m) for j, k in enumerate(acc) if k}))
            acc.pop()
            return
        for k in range(left, -1, -1):
            acc.append(k)
            rec(i + 1, left - k, acc)
            acc.pop()

    rec(0, m, [])
    return out


@dataclass(frozen=True)
class ObservabilityGame:
    base: SecurityGame
    p_obs: Fraction
    grid_resolution: int
    extra_rows: tuple = field(default=())

    def __post_init__(self):
        p = Fraction(self.p_obs)
        if not 0 <= p <= 1:
            raise ValueError("p_obs must lie in [0, 1]")
        object.__setattr__(self, "p_obs", p)
        if self.grid_resolution < 1:
            raise ValueError("grid resolution must be positive")

    @classmethod
    def with_equilibrium_rows(cls, base, p_obs, m, backend=None):
        """The menu always carries the base game's SSE and Nash distributions."""
        sse = solve_sse(base, backend).defender
        ne = solve_nash(base, backend).defender
        return cls(base, Fraction(p_obs), m, (sse, ne))

    def rows(self, cap=GRID_CAP):
        D = enumerate_coverage_vectors(self.base)
        out = simplex_lattice(D, self.grid_resolution, cap)
        seen = set(_key(r) for r in out)
        for r in self.extra_rows:
            if _key(r) not in seen:
                seen.add(_key(r))
                out.append(r)
        return out


def _key(C):
    return tuple(sorted(C.support.items()))


def build_folded_bimatrix(og: ObservabilityGame, cap=GRID_CAP) -> Bimatrix:
    g = og.base
    p = og.p_obs
    rows = og.rows(cap)
    Q = enumerate_attack_vectors(g)
    attacks = [_pure_attack(q, g.n) for q in Q]
    pd, pa = [], []
    for sigma in rows:
        c = sigma.marginals()
        observed = sse_value(c, g) if p else ZERO
        pd.append(tuple(p * observed + (1 - p) * defender_utility(c, a, g) for a in attacks))
        pa.append(tuple((1 - p) * attacker_utility(c, a, g) for a in attacks))
    return Bimatrix(tuple(rows), tuple(Q), tuple(pd), tuple(pa))


def folded_attacker_payoff_full(og: ObservabilityGame, sigma, q) -> Fraction:
    """Attacker payoff including the row-constant observed-branch term."""
    g = og.base
    c = sigma.marginals()
    observed = best_response_value(c, g).value
    return og.p_obs * observed + (1 - og.p_obs) * attacker_utility(c, _pure_attack(q, g.n), g)


def _fmt(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _dist_json(C):
    return {"".join(map(str, d)): _fmt(p) for d, p in C.support.items()}


def sse_row_equilibrium_check(og: ObservabilityGame, bm: Bimatrix, backend=None):
    """Whether SSE row + an SSE-completing attacker strategy is an equilibrium of the fold.

    Returns None when the SSE strategy is in no Nash profile of the base game.
    """
    sse = solve_sse(og.base, backend).defender
    witness = check_sse_in_ne(og.base, sse, backend)
    if witness is None:
        return None
    keys = [_key(r) for r in bm.rows]
    x = [ZERO] * len(bm.rows)
    x[keys.index(_key(sse))] = ONE
    y = [witness.probs.get(q, ZERO) for q in bm.cols]
    return is_bimatrix_nash(bm, x, y)


def solve_observability(og: ObservabilityGame, backend=None, cap=GRID_CAP):
    """Equilibrium of the folded game: averaged defender distribution and a JSON-ready report."""
    g = og.base
    bm = build_folded_bimatrix(og, cap)
    x, y = solve_bimatrix_ne(bm, backend=backend)
    mix = {}
    for sigma, w in zip(bm.rows, x):
        if w:
            for d, p in sigma.support.items():
                mix[d] = mix.get(d, ZERO) + w * p
    averaged = DefenderMixedStrategy(mix)
    value = sum((xi * v for xi, v in zip(x, bm.row_values(y)) if xi), ZERO)
    attacker = AttackerMixedStrategy({q: p for q, p in zip(bm.cols, y) if p})

    sse = solve_sse(g, backend)
    flags = {}
    if og.p_obs == 1:
        flags["full_view_gives_sse"] = value == sse.defender_value
    if og.p_obs == 0:
        flags["no_view_gives_nash"] = is_nash(averaged, attacker, g)
    row_eq = sse_row_equilibrium_check(og, bm, backend)
    if row_eq is not None:
        flags["sse_row_equilibrium"] = row_eq

    support_rows = [(sigma, w) for sigma, w in zip(bm.rows, x) if w]
    mixed_value = sum((w * sse_value(s.marginals(), g) for s, w in support_rows), ZERO)
    report = {
        "p_obs": _fmt(og.p_obs),
        "grid_m": og.grid_resolution,
        "n_rows": len(bm.rows),
        "defender_rows": [{"distribution": _dist_json(s), "probability": _fmt(w)}
                          for s, w in support_rows],
        "defender_averaged": _dist_json(averaged),
        "attacker_unobserved": {"_".join(f"t{i + 1}" for i in q): _fmt(p)
                                for q, p in attacker.probs.items()},
        "defender_value": _fmt(value),
        "sse_value": _fmt(sse.defender_value),
        "flags": flags,
        "mixture_note": {
            "rows_in_support": len(support_rows),
            "observed_value_of_mixture": _fmt(mixed_value),
            "observed_value_of_average": _fmt(sse_value(averaged.marginals(), g)),
            "note": ("a mixture over committed distributions is revealed row by row on the "
                     "observed branch; committing to the averaged distribution is a different "
                     "move") if len(support_rows) > 1 else "single committed distribution",
        },
    }
    return averaged, report


__all__ = ["GRID_CAP", "ObservabilityGame", "build_folded_bimatrix",
           "folded_attacker_payoff_full", "sse_row_equilibrium_check", "simplex_lattice",
           "solve_observability"]
