"""Exact linear programs: model types, two-phase simplex driver, certificates.

Certificates are expressed against the program as written (not the internal
standard form), so :func:`check_solution` can verify them without knowing
anything about the solver.  Sign conventions, for the minimisation form
``min c'x`` (``c' = -c`` when maximising):

* ``row_duals[i]`` is ``>= 0`` for ``>=`` rows, ``<= 0`` for ``<=`` rows,
  free for ``=`` rows;
* ``lower_duals[j] >= 0`` and ``upper_duals[j] <= 0`` (zero when the bound
  is absent);
* stationarity ``c' = A^T w + lower + upper`` holds exactly.

An infeasibility certificate uses the same sign rules with ``c' = 0`` and a
strictly positive dual objective (Farkas).
"""
from __future__ import annotations

import enum
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..errors import CapExceeded
from . import _backend

LE, EQ, GE = "<=", "=", ">="
_RELATIONS = (LE, EQ, GE)
MAXIMIZE, MINIMIZE, FEASIBILITY = "maximize", "minimize", "feasibility"

MAX_SIZE = 10_000
ZERO = Fraction(0)

_dump_stream = None


class MalformedProgram(ValueError):
    pass


class Status(str, enum.Enum):
    OPTIMAL = "Optimal"
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


def set_dump_stream(stream):
    """Write every program passed to :func:`solve_lp` to ``stream`` (or stop, if None)."""
    global _dump_stream
    _dump_stream = stream


@dataclass
class Variable:
    name: str
    lower: Optional[Fraction] = ZERO
    upper: Optional[Fraction] = None


@dataclass
class Constraint:
    coeffs: list
    relation: str
    rhs: Fraction
    name: str = ""


@dataclass
class LinearProgram:
    variables: list = field(default_factory=list)
    constraints: list = field(default_factory=list)
    objective: list = field(default_factory=list)
    direction: str = FEASIBILITY

    def add_variable(self, name, lower=ZERO, upper=None):
        lower = None if lower is None else Fraction(lower)
        upper = None if upper is None else Fraction(upper)
        self.variables.append(Variable(name, lower, upper))
        for con in self.constraints:
            con.coeffs.append(ZERO)
        self.objective.append(ZERO)
        return len(self.variables) - 1

    def add_constraint(self, coeffs, relation, rhs, name=""):
        if relation not in _RELATIONS:
            raise MalformedProgram(f"unknown relation {relation!r}")
        if isinstance(coeffs, dict):
            row = [ZERO] * len(self.variables)
            for j, v in coeffs.items():
                row[j] = Fraction(v)
        else:
            row = [Fraction(v) for v in coeffs]
        self.constraints.append(Constraint(row, relation, Fraction(rhs), name))

    def set_objective(self, coeffs, direction):
        if direction not in (MAXIMIZE, MINIMIZE, FEASIBILITY):
            raise MalformedProgram(f"unknown direction {direction!r}")
        if isinstance(coeffs, dict):
            row = [ZERO] * len(self.variables)
            for j, v in coeffs.items():
                row[j] = Fraction(v)
        else:
            row = [Fraction(v) for v in coeffs]
        self.objective = row
        self.direction = direction

    @property
    def n(self):
        return len(self.variables)

    def validate(self):
        n = self.n
        if len(self.objective) != n:
            raise MalformedProgram("objective width does not match variable count")
        for k, con in enumerate(self.constraints):
            if len(con.coeffs) != n:
                raise MalformedProgram(
                    f"constraint {k} has width {len(con.coeffs)}, expected {n}")
            if con.relation not in _RELATIONS:
                raise MalformedProgram(f"constraint {k}: unknown relation")
        if n + len(self.constraints) > MAX_SIZE:
            raise CapExceeded(
                f"{n} variables + {len(self.constraints)} constraints exceeds {MAX_SIZE}")

    def dump(self):
        """Human-readable text form."""
        def term(c, name):
            return f"{'+' if c >= 0 else '-'} {abs(c)} {name}"

        names = [v.name for v in self.variables]
        out = [f"{self.direction}"]
        if self.direction != FEASIBILITY:
            out.append("  " + " ".join(term(c, names[j])
                                       for j, c in enumerate(self.objective) if c) or "  0")
        out.append("subject to")
        for k, con in enumerate(self.constraints):
            lhs = " ".join(term(c, names[j]) for j, c in enumerate(con.coeffs) if c) or "0"
            label = con.name or f"c{k}"
            out.append(f"  {label}: {lhs} {con.relation} {con.rhs}")
        out.append("bounds")
        for v in self.variables:
            lo = "-inf" if v.lower is None else str(v.lower)
            hi = "+inf" if v.upper is None else str(v.upper)
            out.append(f"  {lo} <= {v.name} <= {hi}")
        return "\n".join(out) + "\n"


@dataclass
class Certificate:
    row_duals: Optional[list] = None
    lower_duals: Optional[list] = None
    upper_duals: Optional[list] = None
    ray: Optional[list] = None


@dataclass
class LpSolution:
    status: Status
    assignment: Optional[list] = None
    objective_value: Optional[Fraction] = None
    certificate: Certificate = field(default_factory=Certificate)
    iterations: int = 0

    @property
    def feasible(self):
        return self.status in (Status.OPTIMAL, Status.FEASIBLE)


# ---------------------------------------------------------------------------
# standard form


class _StandardForm:
    """``min chat . y  s.t.  Ahat y = bhat >= 0, y >= 0`` built from an LP."""

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        n = lp.n
        # column maps: x_j = shift_j + sum(sign * y_col)
        self.shift = [ZERO] * n
        self.cols_of = [[] for _ in range(n)]
        ncols = 0
        ub_rows = []
        for j, v in enumerate(lp.variables):
            lo, hi = v.lower, v.upper
            if lo is not None and hi is not None and lo == hi:
                self.shift[j] = lo
            elif lo is not None:
                self.shift[j] = lo
                self.cols_of[j].append((ncols, 1))
                if hi is not None:
                    ub_rows.append((j, ncols, hi - lo))
                ncols += 1
            elif hi is not None:
                self.shift[j] = hi
                self.cols_of[j].append((ncols, -1))
                ncols += 1
            else:
                self.cols_of[j].append((ncols, 1))
                self.cols_of[j].append((ncols + 1, -1))
                ncols += 2
        self.ny = ncols

        rows = []   # (dict col->coef, relation, rhs, origin)
        for i, con in enumerate(lp.constraints):
            coef = {}
            rhs = con.rhs
            shift, cols_of = self.shift, self.cols_of
            for j, a in enumerate(con.coeffs):
                if not a:
                    continue
                if shift[j]:
                    rhs -= a * shift[j]
                for col, sgn in cols_of[j]:
                    # each column belongs to exactly one variable
                    coef[col] = a if sgn == 1 else -a
            rows.append((coef, con.relation, rhs, ("row", i)))
        for j, col, cap in ub_rows:
            rows.append(({col: Fraction(1)}, LE, cap, ("ub", j)))

        m = len(rows)
        n_slack = sum(1 for r in rows if r[1] != EQ)
        self.m = m
        self.origin = [r[3] for r in rows]
        self.sign = []
        self.unit_col = []
        art_rows = []
        slack_at = self.ny
        ncol_total = self.ny + n_slack
        slack_of = []
        for coef, rel, rhs, _ in rows:
            if rel == EQ:
                slack_of.append(None)
            else:
                slack_of.append(slack_at)
                slack_at += 1
        for k, (coef, rel, rhs, _) in enumerate(rows):
            s = -1 if rhs < 0 else 1
            self.sign.append(s)
            slack_coef = {LE: 1, GE: -1, EQ: 0}[rel] * s
            if slack_coef == 1:
                self.unit_col.append(slack_of[k])
            else:
                art_rows.append(k)
                self.unit_col.append(None)
        self.art_start = ncol_total
        for idx, k in enumerate(art_rows):
            self.unit_col[k] = ncol_total + idx
        self.N = ncol_total + len(art_rows)
        self.art_rows = art_rows

        table = []
        rhs_vec = []
        for k, (coef, rel, rhs, _) in enumerate(rows):
            s = self.sign[k]
            row = [ZERO] * self.N
            for col, a in coef.items():
                row[col] = a if s == 1 else -a
            if slack_of[k] is not None:
                row[slack_of[k]] = Fraction({LE: 1, GE: -1}[rel] * s)
            if self.unit_col[k] >= self.art_start:
                row[self.unit_col[k]] = Fraction(1)
            table.append(row)
            rhs_vec.append(rhs * s)
        self.table = table
        self.rhs = rhs_vec
        self.basis = list(self.unit_col)

        if lp.direction == FEASIBILITY:
            cprime = [ZERO] * n
        elif lp.direction == MAXIMIZE:
            cprime = [-c for c in lp.objective]
        else:
            cprime = list(lp.objective)
        self.cprime = cprime
        chat = [ZERO] * self.N
        for j in range(n):
            for col, sgn in self.cols_of[j]:
                chat[col] += cprime[j] * sgn
        self.chat = chat

    def to_x(self, y):
        x = list(self.shift)
        for j, cols in enumerate(self.cols_of):
            for col, sgn in cols:
                x[j] += sgn * y[col]
        return x

    def ray_to_x(self, ray_y):
        dx = [ZERO] * self.lp.n
        for j, cols in enumerate(self.cols_of):
            for col, sgn in cols:
                dx[j] += sgn * ray_y[col]
        return dx

    def certificate(self, pi, cprime):
        """Map standard-form row multipliers back to the original program."""
        lp = self.lp
        w = [ZERO] * len(lp.constraints)
        upper = [ZERO] * lp.n
        for k, origin in enumerate(self.origin):
            val = pi[k] * self.sign[k]
            if origin[0] == "row":
                w[origin[1]] = val
            else:
                upper[origin[1]] = val
        lower = [ZERO] * lp.n
        resids = list(cprime)
        for i, con in enumerate(lp.constraints):
            wi = w[i]
            if wi:
                for j, a in enumerate(con.coeffs):
                    if a:
                        resids[j] -= wi * a
        for j, v in enumerate(lp.variables):
            resid = resids[j]
            lo, hi = v.lower, v.upper
            if lo is not None and hi is not None:
                if lo == hi:
                    lower[j] = max(resid, ZERO)
                    upper[j] = min(resid, ZERO)
                else:
                    lower[j] = resid - upper[j]
            elif lo is not None:
                lower[j] = resid
            elif hi is not None:
                upper[j] = resid
        return Certificate(row_duals=w, lower_duals=lower, upper_duals=upper)


def solve_lp(lp: LinearProgram, backend=None) -> LpSolution:
    """Two-phase Bland's-rule simplex in exact arithmetic."""
    lp.validate()
    if _dump_stream is not None:
        _dump_stream.write(lp.dump())
        _dump_stream.write("\n")
    sf = _StandardForm(lp)
    tableau_cls = _backend.tableau_class(backend)
    if sf.m == 0:
        return _solve_unconstrained(lp, sf)
    tab = tableau_cls(sf.table, sf.rhs, sf.basis)
    sf.table = None  # the tableau owns the data now

    if sf.art_rows:
        phase1 = [ZERO] * sf.N
        for k in sf.art_rows:
            phase1[sf.unit_col[k]] = Fraction(1)
        status, _ = tab.optimize(phase1, [True] * sf.N)
        infeas = tab.objective(phase1)
        if infeas > 0:
            pi = tab.duals(phase1, sf.unit_col)
            cert = sf.certificate(pi, [ZERO] * lp.n)
            return LpSolution(Status.INFEASIBLE, certificate=cert, iterations=tab.iterations)
        for r in range(sf.m):
            if tab.basis[r] >= sf.art_start:
                for j in range(sf.art_start):
                    if tab.entry(r, j) != 0:
                        tab.pivot(r, j)
                        break

    allowed = [j < sf.art_start for j in range(sf.N)]
    if lp.direction == FEASIBILITY:
        x = sf.to_x(tab.primal())
        return LpSolution(Status.FEASIBLE, assignment=x, iterations=tab.iterations)

    status, entering = tab.optimize(sf.chat, allowed)
    y = tab.primal()
    x = sf.to_x(y)
    if status == _backend.UNBOUNDED:
        ray_y = [ZERO] * sf.N
        ray_y[entering] = Fraction(1)
        col = tab.column(entering)
        for i, bi in enumerate(tab.basis):
            ray_y[bi] = -col[i]
        dx = sf.ray_to_x(ray_y)
        return LpSolution(Status.UNBOUNDED, assignment=x,
                          certificate=Certificate(ray=dx), iterations=tab.iterations)
    pi = tab.duals(sf.chat, sf.unit_col)
    cert = sf.certificate(pi, sf.cprime)
    value = sum((c * xi for c, xi in zip(lp.objective, x)), ZERO)
    return LpSolution(Status.OPTIMAL, assignment=x, objective_value=value,
                      certificate=cert, iterations=tab.iterations)


def _solve_unconstrained(lp, sf):
    # No rows: every structural column sits at zero unless its cost is negative.
    for col in range(sf.ny):
        if sf.chat[col] < 0:
            ray_y = [ZERO] * sf.ny
            ray_y[col] = Fraction(1)
            return LpSolution(Status.UNBOUNDED, assignment=list(sf.shift),
                              certificate=Certificate(ray=sf.ray_to_x(ray_y)))
    x = list(sf.shift)
    if lp.direction == FEASIBILITY:
        return LpSolution(Status.FEASIBLE, assignment=x)
    cert = sf.certificate([], sf.cprime)
    value = sum((c * xi for c, xi in zip(lp.objective, x)), ZERO)
    return LpSolution(Status.OPTIMAL, assignment=x, objective_value=value, certificate=cert)


# ---------------------------------------------------------------------------
# verification


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b) if x and y), ZERO)


def _primal_ok(lp, x):
    if x is None or len(x) != lp.n:
        return False
    for v, xj in zip(lp.variables, x):
        if v.lower is not None and xj < v.lower:
            return False
        if v.upper is not None and xj > v.upper:
            return False
    for con in lp.constraints:
        lhs = _dot(con.coeffs, x)
        if con.relation == LE and lhs > con.rhs:
            return False
        if con.relation == GE and lhs < con.rhs:
            return False
        if con.relation == EQ and lhs != con.rhs:
            return False
    return True


def _dual_signs_ok(lp, cert):
    w, lo, hi = cert.row_duals, cert.lower_duals, cert.upper_duals
    if w is None or lo is None or hi is None:
        return False
    if len(w) != len(lp.constraints) or len(lo) != lp.n or len(hi) != lp.n:
        return False
    for con, wi in zip(lp.constraints, w):
        if con.relation == LE and wi > 0:
            return False
        if con.relation == GE and wi < 0:
            return False
    for v, l, u in zip(lp.variables, lo, hi):
        if l < 0 or u > 0:
            return False
        if v.lower is None and l != 0:
            return False
        if v.upper is None and u != 0:
            return False
    return True


def _stationary(lp, cert, cprime):
    w = cert.row_duals
    for j in range(lp.n):
        s = sum((w[i] * con.coeffs[j] for i, con in enumerate(lp.constraints)
                 if con.coeffs[j]), ZERO)
        if s + cert.lower_duals[j] + cert.upper_duals[j] != cprime[j]:
            return False
    return True


def _dual_objective(lp, cert):
    val = sum((wi * con.rhs for wi, con in zip(cert.row_duals, lp.constraints)), ZERO)
    for v, l, u in zip(lp.variables, cert.lower_duals, cert.upper_duals):
        if l:
            val += l * v.lower
        if u:
            val += u * v.upper
    return val


def _cprime(lp):
    if lp.direction == MAXIMIZE:
        return [-c for c in lp.objective]
    if lp.direction == MINIMIZE:
        return list(lp.objective)
    return [ZERO] * lp.n


def check_solution(lp: LinearProgram, sol: LpSolution) -> bool:
    """Re-verify ``sol`` against ``lp`` with exact arithmetic."""
    try:
        lp.validate()
    except (MalformedProgram, CapExceeded):
        return False
    cert = sol.certificate or Certificate()
    if sol.status == Status.FEASIBLE:
        return _primal_ok(lp, sol.assignment)
    if sol.status == Status.OPTIMAL:
        x = sol.assignment
        if not _primal_ok(lp, x):
            return False
        if lp.direction == FEASIBILITY:
            return True
        cprime = _cprime(lp)
        if not _dual_signs_ok(lp, cert) or not _stationary(lp, cert, cprime):
            return False
        primal_val = _dot(cprime, x)
        if primal_val != _dual_objective(lp, cert):
            return False
        if sol.objective_value is not None and sol.objective_value != _dot(lp.objective, x):
            return False
        for wi, con in zip(cert.row_duals, lp.constraints):
            if wi and _dot(con.coeffs, x) != con.rhs:
                return False
        for v, xj, l, u in zip(lp.variables, x, cert.lower_duals, cert.upper_duals):
            if l and xj != v.lower:
                return False
            if u and xj != v.upper:
                return False
        return True
    if sol.status == Status.INFEASIBLE:
        if not _dual_signs_ok(lp, cert):
            return False
        if not _stationary(lp, cert, [ZERO] * lp.n):
            return False
        return _dual_objective(lp, cert) > 0
    if sol.status == Status.UNBOUNDED:
        if lp.direction == FEASIBILITY or cert.ray is None:
            return False
        x, r = sol.assignment, cert.ray
        if not _primal_ok(lp, x) or len(r) != lp.n:
            return False
        for v, rj in zip(lp.variables, r):
            if v.lower is not None and rj < 0:
                return False
            if v.upper is not None and rj > 0:
                return False
        for con in lp.constraints:
            lhs = _dot(con.coeffs, r)
            if con.relation == LE and lhs > 0:
                return False
            if con.relation == GE and lhs < 0:
                return False
            if con.relation == EQ and lhs != 0:
                return False
        return _dot(_cprime(lp), r) < 0
    return False


def dump_to_stderr(enabled=True):
    set_dump_stream(sys.stderr if enabled else None)
