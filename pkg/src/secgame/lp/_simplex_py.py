"""Pure-Python simplex tableau over :class:`fractions.Fraction`.

This is the reference kernel. ``_simplex_gmp.pyx`` implements the same
class with the same pivoting decisions on GMP rationals; both must return
identical bases for identical input.
"""
from fractions import Fraction

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"


class Tableau:
    """Dense tableau ``B^-1 [A | b]`` with an explicit basis.

    ``rows`` must already be in canonical form for ``basis``: column
    ``basis[i]`` is the ``i``-th unit vector.
    """

    backend = "python"

    def __init__(self, rows, rhs, basis):
        self.m = len(rows)
        self.n = len(rows[0]) if rows else 0
        self._t = [[Fraction(v) for v in row] for row in rows]
        self._b = [Fraction(v) for v in rhs]
        self.basis = list(basis)
        self.iterations = 0
        if len(self._b) != self.m or len(self.basis) != self.m:
            raise ValueError("rhs/basis length does not match row count")

    def entry(self, i, j):
        return self._t[i][j]

    def rhs(self, i):
        return self._b[i]

    def column(self, j):
        return [row[j] for row in self._t]

    def pivot(self, r, c):
        t = self._t
        prow = t[r]
        piv = prow[c]
        if not piv:
            raise ZeroDivisionError("pivot on a zero entry")
        nz = [j for j, v in enumerate(prow) if v]
        if piv != 1:
            for j in nz:
                prow[j] /= piv
            self._b[r] /= piv
        br = self._b[r]
        for i in range(self.m):
            if i == r:
                continue
            row = t[i]
            f = row[c]
            if not f:
                continue
            for j in nz:
                row[j] -= f * prow[j]
            self._b[i] -= f * br
        self.basis[r] = c
        return nz

    def reduced_costs(self, cost):
        cost = [Fraction(v) for v in cost]
        d = list(cost)
        for i, bi in enumerate(self.basis):
            cb = cost[bi]
            if not cb:
                continue
            row = self._t[i]
            for j, v in enumerate(row):
                if v:
                    d[j] -= cb * v
        return d

    def objective(self, cost):
        return sum((Fraction(cost[bi]) * self._b[i] for i, bi in enumerate(self.basis)),
                   Fraction(0))

    def duals(self, cost, unit_cols):
        """Row multipliers ``c_B B^-1`` read off the original unit columns."""
        out = []
        for k in unit_cols:
            s = Fraction(0)
            for i, bi in enumerate(self.basis):
                cb = cost[bi]
                if cb:
                    s += cb * self._t[i][k]
            out.append(s)
        return out

    def primal(self):
        x = [Fraction(0)] * self.n
        for i, bi in enumerate(self.basis):
            x[bi] = self._b[i]
        return x

    def optimize(self, cost, allowed, max_iter=1_000_000):
        """Minimise ``cost`` with Bland's rule.

        Returns ``(OPTIMAL, -1)`` or ``(UNBOUNDED, entering_column)``.
        """
        d = self.reduced_costs(cost)
        t = self._t
        for _ in range(max_iter):
            e = -1
            for j in range(self.n):
                if allowed[j] and d[j] < 0:
                    e = j
                    break
            if e < 0:
                return OPTIMAL, -1
            r = -1
            best = None
            for i in range(self.m):
                a = t[i][e]
                if a > 0:
                    ratio = self._b[i] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[i] < self.basis[r])):
                        best = ratio
                        r = i
            if r < 0:
                return UNBOUNDED, e
            nz = self.pivot(r, e)
            de = d[e]
            prow = t[r]
            for j in nz:
                d[j] -= de * prow[j]
            self.iterations += 1
        raise RuntimeError("simplex iteration limit reached")
