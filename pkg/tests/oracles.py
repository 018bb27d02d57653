"""Brute-force reference implementations.

None of these touch the simplex code or the package's enumeration helpers;
they are slow on purpose and only meant for tiny instances.
"""
from fractions import Fraction
from itertools import combinations, product

ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# linear programs


def _solve_square(A, b):
    """Unique solution of A x = b by Gauss-Jordan over Fractions, or None if singular."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [v - f * w for v, w in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def lp_rows(n, bounds, constraints):
    """All constraints as (coeffs, rel, rhs) with bounds turned into rows."""
    rows = list(constraints)
    for j, (lo, hi) in enumerate(bounds):
        e = [0] * n
        e[j] = 1
        if lo is not None:
            rows.append((e, ">=", lo))
        if hi is not None:
            rows.append((e, "<=", hi))
    return rows


def _ok(row, x):
    a, rel, b = row
    lhs = sum((Fraction(ai) * xi for ai, xi in zip(a, x)), ZERO)
    return {"<=": lhs <= b, ">=": lhs >= b, "==": lhs == b}[rel]


def lp_vertices(n, bounds, constraints):
    """Every basic feasible point of a polytope.

    Tight sets are drawn from all rows, equalities included, so redundant
    or all-zero equality rows cannot hide a vertex; feasibility of every
    row is checked afterwards.
    """
    rows = lp_rows(n, bounds, constraints)
    out = set()
    for tight in combinations(rows, n):
        A = [r[0] for r in tight]
        b = [r[2] for r in tight]
        x = _solve_square(A, b)
        if x is not None and all(_ok(r, x) for r in rows):
            out.add(tuple(x))
    return out


def lp_vertex_optimum(n, bounds, constraints, objective, maximize):
    """(feasible, best value) over the vertices of a bounded polytope."""
    verts = lp_vertices(n, bounds, constraints)
    if not verts:
        return False, None
    vals = [sum((Fraction(c) * xi for c, xi in zip(objective, x)), ZERO) for x in verts]
    return True, (max(vals) if maximize else min(vals))


# ---------------------------------------------------------------------------
# security games, single-target attacks


def coverage_vectors(n, resources):
    """Coverage vectors from every assignment tuple, as a set of 0/1 tuples."""
    out = set()
    for pick in product(*resources):
        covered = set()
        for s in pick:
            covered.update(s)
        out.add(tuple(1 if i in covered else 0 for i in range(n)))
    return out


def att_value(t, c):
    dc, du, ac, au = (Fraction(v) for v in t)
    return c * ac + (1 - c) * au


def def_value(t, c):
    dc, du, ac, au = (Fraction(v) for v in t)
    return c * dc + (1 - c) * du


def e_star_marginal(targets, K):
    """min over c in [0,1]^n with sum c <= K of max_i U_a(c_i, t_i).

    The cheapest coverage that holds every target to v is
    sum_i clip((au_i - v) / (au_i - ac_i), 0, 1); E* is the smallest v with
    that sum <= K, which is found by scanning the candidate levels.
    """
    ts = [tuple(Fraction(x) for x in t) for t in targets]
    floor = max(t[2] for t in ts)  # v below max ac is unreachable

    def need(v):
        return sum((min(max((t[3] - v) / (t[3] - t[2]), ZERO), Fraction(1)) for t in ts), ZERO)

    levels = sorted({floor} | {t[3] for t in ts if t[3] >= floor}
                    | {t[2] for t in ts if t[2] >= floor})
    if need(levels[0]) <= K:
        return levels[0]
    for lo, hi in zip(levels, levels[1:]):
        if need(hi) <= K:
            # need is affine on [lo, hi]: solve need(v) = K
            slope = (need(hi) - need(lo)) / (hi - lo)
            return lo + (K - need(lo)) / slope
    return levels[-1]


def is_nash_brute(targets, D, C, a):
    """Nash test for L = 1 straight from the payoff definitions.

    C maps coverage vectors to probabilities, a is a target distribution.
    """
    n = len(targets)
    c = [sum((p * d[i] for d, p in C.items()), ZERO) for i in range(n)]
    att = [att_value(targets[i], c[i]) for i in range(n)]
    best = max(att)
    if any(a[i] > 0 and att[i] != best for i in range(n)):
        return False

    def dval(d):
        return sum((a[i] * def_value(targets[i], d[i]) for i in range(n)), ZERO)

    top = max(dval(d) for d in D)
    return all(dval(d) == top for d, p in C.items() if p > 0)


# ---------------------------------------------------------------------------
# bimatrix games


def bimatrix_nash_brute(A, B, x, y):
    m, n = len(A), len(A[0])
    rv = [sum((A[i][j] * y[j] for j in range(n)), ZERO) for i in range(m)]
    cv = [sum((B[i][j] * x[i] for i in range(m)), ZERO) for j in range(n)]
    return (all(rv[i] == max(rv) for i in range(m) if x[i] > 0)
            and all(cv[j] == max(cv) for j in range(n) if y[j] > 0))


def iterated_strict_dominance(A, B):
    """Surviving row and column indices after removing strictly dominated pure strategies."""
    rows, cols = list(range(len(A))), list(range(len(A[0])))
    changed = True
    while changed:
        changed = False
        for r in list(rows):
            if any(all(A[o][j] > A[r][j] for j in cols) for o in rows if o != r):
                rows.remove(r)
                changed = True
        for c in list(cols):
            if any(all(B[i][o] > B[i][c] for i in rows) for o in cols if o != c):
                cols.remove(c)
                changed = True
    return rows, cols
