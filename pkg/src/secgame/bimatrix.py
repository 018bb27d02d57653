"""Exact two-player normal-form games: support enumeration and optimal commitment.

Payoffs are Fractions.  The row player is the defender (leader), the column
player the attacker (follower).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded, NoEquilibriumFound
from .lp import EQ, GE, LE, MAXIMIZE, LinearProgram, solve_lp

ZERO = Fraction(0)
ONE = Fraction(1)

SUPPORT_CAP = 200_000
SIZE_CAP = 10**6


@dataclass(frozen=True)
class Bimatrix:
    rows: tuple          # row labels (anything hashable)
    cols: tuple          # column labels
    payoff_d: tuple      # payoff_d[r][c]
    payoff_a: tuple

    def __post_init__(self):
        m, k = len(self.rows), len(self.cols)
        if m < 1 or k < 1:
            raise ValueError("a bimatrix needs at least one row and one column")
        for name in ("payoff_d", "payoff_a"):
            mat = getattr(self, name)
            if len(mat) != m or any(len(r) != k for r in mat):
                raise ValueError(f"{name} is not {m} x {k}")
            object.__setattr__(self, name,
                               tuple(tuple(Fraction(v) for v in r) for r in mat))
        if m * k > SIZE_CAP:
            raise CapExceeded(f"{m} x {k} bimatrix exceeds the cap of {SIZE_CAP} cells")

    @classmethod
    def from_lists(cls, payoff_d, payoff_a, rows=None, cols=None):
        m, k = len(payoff_d), len(payoff_d[0])
        return cls(tuple(rows or range(m)), tuple(cols or range(k)),
                   tuple(map(tuple, payoff_d)), tuple(map(tuple, payoff_a)))

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def row_values(self, y) -> list:
        return [sum((yj * a for yj, a in zip(y, row) if yj), ZERO) for row in self.payoff_d]

    def col_values(self, x) -> list:
        k = len(self.cols)
        out = [ZERO] * k
        for xi, row in zip(x, self.payoff_a):
            if xi:
                for j in range(k):
                    out[j] += xi * row[j]
        return out


def is_bimatrix_nash(bm: Bimatrix, x, y) -> bool:
    """Exact mutual best-response test for a mixed profile."""
    x = [Fraction(v) for v in x]
    y = [Fraction(v) for v in y]
    if any(v < 0 for v in x + y) or sum(x) != 1 or sum(y) != 1:
        return False
    rv = bm.row_values(y)
    cv = bm.col_values(x)
    br, bc = max(rv), max(cv)
    return (all(rv[i] == br for i, v in enumerate(x) if v)
            and all(cv[j] == bc for j, v in enumerate(y) if v))


# ---------------------------------------------------------------------------
# support enumeration


def _distinct_rows(bm):
    """Indices of the first row of each group with identical payoffs in both matrices."""
    seen = {}
    for i in range(len(bm.rows)):
        key = (bm.payoff_d[i], bm.payoff_a[i])
        seen.setdefault(key, i)
    return sorted(seen.values())


class _Enumerator:
    def __init__(self, bm, backend=None):
        self.bm = bm
        self.backend = backend
        self.rows = _distinct_rows(bm)
        self._cand = {}

    def candidates(self, J):
        """Rows that are a best response to some column mixture supported on J."""
        if J in self._cand:
            return self._cand[J]
        A = self.bm.payoff_d
        rows = self.rows
        if len(J) == 1:
            j = J[0]
            best = max(A[r][j] for r in rows)
            out = [r for r in rows if A[r][j] == best]
        else:
            vecs = {r: tuple(A[r][j] for j in J) for r in rows}
            # a row beaten strictly on every column of J by another row is out
            alive = [r for r in rows
                     if not any(all(a > b for a, b in zip(vecs[s], vecs[r])) for s in rows)]
            confirmed = set()
            for y in _probe_points(len(J)):
                vals = {r: sum((w * v for w, v in zip(y, vecs[r])), ZERO) for r in alive}
                top = max(vals.values())
                confirmed.update(r for r in alive if vals[r] == top)
            out = [r for r in alive
                   if r in confirmed or not self._mixed_dominated(r, alive, vecs, len(J))]
        self._cand[J] = out
        return out

    def _mixed_dominated(self, r, alive, vecs, width):
        # max eps s.t. sum_s z_s A_s(j) >= A_r(j) + eps for j in J; r is out iff eps > 0
        others = [s for s in alive if s != r]
        if not others:
            return False
        lp = LinearProgram()
        for s in others:
            lp.add_variable(f"z{s}")
        eps = lp.add_variable("eps", lower=None, upper=ONE)
        for j in range(width):
            row = [vecs[s][j] for s in others] + [-ONE]
            lp.add_constraint(row, GE, vecs[r][j])
        lp.add_constraint([ONE] * len(others) + [ZERO], EQ, ONE)
        obj = [ZERO] * lp.n
        obj[eps] = ONE
        lp.set_objective(obj, MAXIMIZE)
        sol = solve_lp(lp, self.backend)
        return sol.objective_value > 0

    def y_problem(self, I, J, cand):
        """y in Delta(J) making every row of I a best response."""
        A = self.bm.payoff_d
        lp = LinearProgram()
        for j in J:
            lp.add_variable(f"y{j}")
        v = lp.add_variable("v", lower=None)
        Iset = set(I)
        for r in cand:
            row = [A[r][j] for j in J] + [-ONE]
            lp.add_constraint(row, EQ if r in Iset else LE, ZERO)
        lp.add_constraint([ONE] * len(J) + [ZERO], EQ, ONE)
        sol = solve_lp(lp, self.backend)
        if not sol.feasible:
            return None
        return sol.assignment[:len(J)]

    def x_problem(self, I, J):
        """x in Delta(I) making every column of J a best response."""
        B = self.bm.payoff_a
        k = len(self.bm.cols)
        lp = LinearProgram()
        for i in I:
            lp.add_variable(f"x{i}")
        u = lp.add_variable("u", lower=None)
        Jset = set(J)
        for j in range(k):
            row = [B[i][j] for i in I] + [-ONE]
            lp.add_constraint(row, EQ if j in Jset else LE, ZERO)
        lp.add_constraint([ONE] * len(I) + [ZERO], EQ, ONE)
        sol = solve_lp(lp, self.backend)
        if not sol.feasible:
            return None
        return sol.assignment[:len(I)]


def _probe_points(width):
    """A few fixed interior and vertex points of the simplex used to confirm candidates."""
    pts = []
    for j in range(width):
        e = [ZERO] * width
        e[j] = ONE
        pts.append(e)
    pts.append([Fraction(1, width)] * width)
    for j in range(width):
        p = [Fraction(1, 2 * width)] * width
        p[j] += Fraction(1, 2)
        pts.append(p)
    return pts


def solve_bimatrix_ne(bm: Bimatrix, cap: int = SUPPORT_CAP, backend=None):
    """One Nash equilibrium ``(x, y)`` found by support enumeration.

    Supports are tried by total size, then by column-support size, then
    lexicographically.  A pair (I, J) is accepted when some profile with
    supports contained in I and J has every row of I and column of J as a
    best response, which also covers degenerate games.
    """
    en = _Enumerator(bm, backend)
    m, k = len(en.rows), len(bm.cols)
    tried = 0
    for s in range(2, m + k + 1):
        for nc in range(1, min(k, s - 1) + 1):
            nr = s - nc
            if nr > m:
                continue
            for J in itertools.combinations(range(k), nc):
                cand = en.candidates(J)
                if len(cand) < nr:
                    continue
                for I in itertools.combinations(cand, nr):
                    tried += 1
                    if tried > cap:
                        raise NoEquilibriumFound(f"support enumeration stopped after {cap} pairs")
                    yJ = en.y_problem(I, J, cand)
                    if yJ is None:
                        continue
                    xI = en.x_problem(I, J)
                    if xI is None:
                        continue
                    x = [ZERO] * len(bm.rows)
                    y = [ZERO] * k
                    for i, p in zip(I, xI):
                        x[i] = p
                    for j, p in zip(J, yJ):
                        y[j] = p
                    if not is_bimatrix_nash(bm, x, y):
                        raise AssertionError("support enumeration returned a non-equilibrium")
                    return x, y
    raise NoEquilibriumFound("support enumeration exhausted without an equilibrium")


# ---------------------------------------------------------------------------
# commitment


@dataclass(frozen=True)
class Commitment:
    x: list
    response: int
    value: Fraction


def solve_commitment(bm: Bimatrix, backend=None) -> Commitment:
    """Optimal mixed commitment for the row player, follower breaking ties for the leader.

    One LP per follower action; the lowest-index action wins value ties.
    """
    A, B = bm.payoff_d, bm.payoff_a
    m, k = bm.shape
    best = None
    for j in range(k):
        lp = LinearProgram()
        for i in range(m):
            lp.add_variable(f"x{i}")
        lp.add_constraint([ONE] * m, EQ, ONE, "total")
        for jj in range(k):
            if jj != j:
                lp.add_constraint([B[i][j] - B[i][jj] for i in range(m)], GE, ZERO,
                                  f"prefer_{j}_over_{jj}")
        lp.set_objective([A[i][j] for i in range(m)], MAXIMIZE)
        sol = solve_lp(lp, backend)
        if not sol.feasible:
            continue
        if best is None or sol.objective_value > best.value:
            best = Commitment(list(sol.assignment), j, sol.objective_value)
    return best


def pure_nash_profiles(bm: Bimatrix) -> list:
    """All pure Nash equilibria as (row, col) pairs."""
    out = []
    m, k = bm.shape
    for i in range(m):
        for j in range(k):
            if (all(bm.payoff_d[i][j] >= bm.payoff_d[r][j] for r in range(m))
                    and all(bm.payoff_a[i][j] >= bm.payoff_a[i][c] for c in range(k))):
                out.append((i, j))
    return out


__all__ = ["Bimatrix", "Commitment", "is_bimatrix_nash", "pure_nash_profiles",
           "solve_bimatrix_ne", "solve_commitment"]
