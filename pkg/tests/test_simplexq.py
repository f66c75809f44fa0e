import itertools
import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from linklct.simplexq import INFEASIBLE, OPTIMAL, UNBOUNDED, LpProblem, lp_solve


def _solve_square(M, v):
    """Exact Gaussian elimination; None when singular."""
    n = len(M)
    A = [list(row) + [rhs] for row, rhs in zip(M, v)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col] / A[col][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [A[i][n] / A[i][i] for i in range(n)]


def vertex_optimum(problem):
    """Best objective over all basic feasible points; brute-force oracle for bounded LPs."""
    m, n = problem.nrows, problem.nvars
    rows = [list(r) + [Fraction(int(i == k)) for k in range(m)] for i, r in enumerate(problem.A)]
    best = None
    for basis in itertools.combinations(range(n + m), m):
        M = [[rows[i][j] for j in basis] for i in range(m)]
        sol = _solve_square(M, list(problem.b))
        if sol is None or any(v < 0 for v in sol):
            continue
        x = [Fraction(0)] * (n + m)
        for j, v in zip(basis, sol):
            x[j] = v
        val = sum(c * xi for c, xi in zip(problem.objective, x[:n]))
        best = val if best is None else max(best, val)
    return best


def test_triangle_lp():
    A = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    cert = lp_solve(LpProblem([1, 1, 1], A, [1, 1, 1]))
    assert cert.status == OPTIMAL
    assert cert.objective_value == Fraction(3, 2)
    assert cert.primal == (Fraction(1, 2),) * 3
    assert cert.dual == (Fraction(1, 2),) * 3


def test_infeasible_has_farkas():
    prob = LpProblem([1], [[1]], [-1])
    cert = lp_solve(prob)
    assert cert.status == INFEASIBLE
    assert cert.farkas == (Fraction(1),)
    assert cert.validate(prob)


def test_unbounded_has_ray():
    prob = LpProblem([1, 0], [[0, 1]], [3])
    cert = lp_solve(prob)
    assert cert.status == UNBOUNDED
    assert cert.validate(prob)
    assert lp_solve(LpProblem([1], [], [])).status == UNBOUNDED


def test_negative_rhs_feasible():
    # x + y >= 2 written as -x - y <= -2; minimise x + 2y
    prob = LpProblem([-1, -2], [[-1, -1], [1, 0]], [-2, 5])
    cert = lp_solve(prob)
    assert cert.status == OPTIMAL and cert.objective_value == -2


def test_degenerate_cycling_example():
    # Beale's example cycles under the largest-coefficient rule
    prob = LpProblem(
        [Fraction(3, 4), -150, Fraction(1, 50), -6],
        [[Fraction(1, 4), -60, Fraction(-1, 25), 9], [Fraction(1, 2), -90, Fraction(-1, 50), 3], [0, 0, 1, 0]],
        [0, 0, 1],
    )
    cert = lp_solve(prob)
    assert cert.status == OPTIMAL and cert.objective_value == Fraction(1, 20)


def test_shape_errors():
    with pytest.raises(ValueError):
        LpProblem([1, 2], [[1]], [1])
    with pytest.raises(ValueError):
        LpProblem([1], [[1]], [1, 2])


def random_feasible(rng, m, n):
    A = [[Fraction(rng.randint(-4, 6), rng.randint(1, 3)) for _ in range(n)] for _ in range(m)]
    x0 = [Fraction(rng.randint(0, 3)) for _ in range(n)]
    b = [sum(a * x for a, x in zip(row, x0)) + rng.randint(0, 3) for row in A]
    # a box row keeps every instance bounded
    A.append([Fraction(1)] * n)
    b.append(sum(x0) + 5)
    c = [Fraction(rng.randint(-3, 5)) for _ in range(n)]
    return LpProblem(c, A, b)


@pytest.mark.parametrize("seed", range(100))
def test_random_strong_duality(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 3), rng.randint(1, 3)
    prob = random_feasible(rng, m, n)
    cert = lp_solve(prob)
    assert cert.status == OPTIMAL
    assert cert.validate(prob)
    assert cert.objective_value == vertex_optimum(prob)
    dual = lp_solve(prob.dual())
    assert dual.status == OPTIMAL
    assert -dual.objective_value == cert.objective_value
    assert cert.pivots <= comb(prob.nvars + prob.nrows, prob.nrows) + prob.nrows + 1


small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_any_certificate_validates(m, n, data):
    A = [[data.draw(small) for _ in range(n)] for _ in range(m)]
    b = [data.draw(small) for _ in range(m)]
    c = [data.draw(small) for _ in range(n)]
    prob = LpProblem(c, A, b)
    cert = lp_solve(prob)
    assert cert.validate(prob)
    if cert.status == OPTIMAL:
        assert cert.objective_value == vertex_optimum(prob)
    if cert.status == INFEASIBLE:
        assert vertex_optimum(prob) is None
