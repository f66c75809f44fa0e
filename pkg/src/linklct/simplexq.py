"""Exact rational simplex method with Bland's rule and optimality certificates.

Problems have the form: maximize c.x subject to A x <= b, x >= 0.  The
tableau keeps one slack per row, so a negative right-hand side is handled by
a single auxiliary column in phase one (Chvatal's initialisation).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpProblem:
    objective: tuple
    A: tuple
    b: tuple

    def __init__(self, objective: Sequence, A: Sequence[Sequence], b: Sequence):
        obj = tuple(Fraction(v) for v in objective)
        rows = tuple(tuple(Fraction(v) for v in row) for row in A)
        rhs = tuple(Fraction(v) for v in b)
        if len(rows) != len(rhs):
            raise ValueError("constraint matrix and bounds disagree in length")
        if any(len(row) != len(obj) for row in rows):
            raise ValueError("constraint row length differs from objective length")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "A", rows)
        object.__setattr__(self, "b", rhs)

    @property
    def nvars(self):
        return len(self.objective)

    @property
    def nrows(self):
        return len(self.b)

    def dual(self) -> LpProblem:
        """The dual min b.y, A^T y >= c, y >= 0, written as a maximisation."""
        m, n = self.nrows, self.nvars
        At = [[-self.A[i][j] for i in range(m)] for j in range(n)]
        return LpProblem([-v for v in self.b], At, [-v for v in self.objective])


@dataclass
class LpCertificate:
    status: str
    primal: Optional[tuple] = None
    dual: Optional[tuple] = None
    objective_value: Optional[Fraction] = None
    farkas: Optional[tuple] = None  # y >= 0, y A >= 0, y.b < 0 when infeasible
    ray: Optional[tuple] = None  # d >= 0, A d <= 0, c.d > 0 when unbounded
    pivots: int = 0

    def validate(self, problem: LpProblem) -> bool:
        """Exact check of whatever certificate the status promises."""
        A, b, c = problem.A, problem.b, problem.objective
        m, n = problem.nrows, problem.nvars
        if self.status == OPTIMAL:
            x, y = self.primal, self.dual
            if x is None or y is None:
                return False
            if any(v < 0 for v in x) or any(v < 0 for v in y):
                return False
            if any(sum(A[i][j] * x[j] for j in range(n)) > b[i] for i in range(m)):
                return False
            if any(sum(A[i][j] * y[i] for i in range(m)) < c[j] for j in range(n)):
                return False
            pval = sum(cj * xj for cj, xj in zip(c, x))
            dval = sum(bi * yi for bi, yi in zip(b, y))
            return pval == dval == self.objective_value
        if self.status == INFEASIBLE:
            y = self.farkas
            if y is None or any(v < 0 for v in y):
                return False
            if any(sum(A[i][j] * y[i] for i in range(m)) < 0 for j in range(n)):
                return False
            return sum(bi * yi for bi, yi in zip(b, y)) < 0
        if self.status == UNBOUNDED:
            d = self.ray
            if d is None or any(v < 0 for v in d):
                return False
            if any(sum(A[i][j] * d[j] for j in range(n)) > 0 for i in range(m)):
                return False
            return sum(cj * dj for cj, dj in zip(c, d)) > 0
        return False


class _Tableau:
    # rows[i] holds coefficients over all columns; basis[i] is the basic column
    # of row i; obj[j] is the reduced profit of column j (enter if > 0).

    def __init__(self, A, b, ncols):
        m = len(b)
        self.rows = [list(A[i]) for i in range(m)]
        self.rhs = list(b)
        self.basis = []
        self.ncols = ncols
        self.obj = [Fraction(0)] * ncols
        self.obj_val = Fraction(0)
        self.pivots = 0

    def pivot(self, r, col):
        row = self.rows[r]
        p = row[col]
        if p != 1:
            row[:] = [v / p for v in row]
            self.rhs[r] /= p
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[col]
            if f:
                other[:] = [a - f * bb for a, bb in zip(other, row)]
                self.rhs[i] -= f * self.rhs[r]
        f = self.obj[col]
        if f:
            self.obj = [a - f * bb for a, bb in zip(self.obj, row)]
            self.obj_val += f * self.rhs[r]
        self.basis[r] = col
        self.pivots += 1

    def set_objective(self, costs):
        # costs over columns; express in terms of the nonbasic columns
        self.obj = list(costs)
        self.obj_val = Fraction(0)
        for r, col in enumerate(self.basis):
            f = self.obj[col]
            if f:
                row = self.rows[r]
                self.obj = [a - f * bb for a, bb in zip(self.obj, row)]
                self.obj_val += f * self.rhs[r]

    def bland(self, allowed):
        """Run Bland pivots; returns None at optimum or the unbounded column."""
        while True:
            enter = next((j for j in allowed if self.obj[j] > 0), None)
            if enter is None:
                return None
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    cand = (ratio, self.basis[i], i)
                    if best is None or cand < best:
                        best = cand
            if best is None:
                return enter
            self.pivot(best[2], enter)


def lp_solve(problem: LpProblem) -> LpCertificate:
    """Solve exactly; the returned certificate always validates against ``problem``."""
    m, n = problem.nrows, problem.nvars
    A, b, c = problem.A, problem.b, problem.objective
    # columns: 0..n-1 originals, n..n+m-1 slacks, n+m auxiliary
    aux = n + m
    ncols = n + m + 1
    rows = []
    for i in range(m):
        rows.append(list(A[i]) + [Fraction(int(k == i)) for k in range(m)] + [Fraction(-1)])
    tab = _Tableau(rows, b, ncols)
    tab.basis = [n + i for i in range(m)]
    if m and min(b) < 0:
        # phase one: maximise -aux
        r0 = min(range(m), key=lambda i: (b[i], i))
        tab.obj = [Fraction(0)] * ncols
        tab.obj[aux] = Fraction(-1)
        tab.pivot(r0, aux)
        tab.bland(list(range(ncols)))
        if tab.obj_val < 0:
            # slack reduced profits give the Farkas multipliers
            y = tuple(-tab.obj[n + i] for i in range(m))
            cert = LpCertificate(INFEASIBLE, farkas=y, pivots=tab.pivots)
            assert cert.validate(problem), "phase-one Farkas certificate failed"
            return cert
        if aux in tab.basis:
            r = tab.basis.index(aux)
            col = next(j for j in range(n + m) if tab.rows[r][j] != 0)
            tab.pivot(r, col)
    for row in tab.rows:
        row[aux] = Fraction(0)
    tab.set_objective(list(c) + [Fraction(0)] * (m + 1))
    allowed = list(range(n + m))
    col = tab.bland(allowed)
    if col is not None:
        d = [Fraction(0)] * (n + m)
        d[col] = Fraction(1)
        for i, bcol in enumerate(tab.basis):
            if bcol < n + m:
                d[bcol] = -tab.rows[i][col]
        cert = LpCertificate(UNBOUNDED, ray=tuple(d[:n]), pivots=tab.pivots)
        assert cert.validate(problem), "unbounded ray failed validation"
        return cert
    x = [Fraction(0)] * (n + m)
    for i, bcol in enumerate(tab.basis):
        x[bcol] = tab.rhs[i]
    y = tuple(-tab.obj[n + i] for i in range(m))
    value = sum(cj * xj for cj, xj in zip(c, x[:n]))
    cert = LpCertificate(OPTIMAL, primal=tuple(x[:n]), dual=y, objective_value=value, pivots=tab.pivots)
    assert cert.validate(problem), "optimality certificate failed validation"
    return cert
