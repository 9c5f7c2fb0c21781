import random
from fractions import Fraction

import numpy as np
import pytest
import sympy

from planemb.linexact import LPInfeasible, Problem, bareiss_solve, exact_simplex


def test_bareiss_against_sympy():
    rng = random.Random(1)
    for _ in range(20):
        n = rng.randint(1, 6)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        b = [rng.randint(-9, 9) for _ in range(n)]
        M = sympy.Matrix(A)
        got = bareiss_solve(A, b)
        if M.det() == 0:
            assert got is None
        else:
            want = M.LUsolve(sympy.Matrix(b))
            assert got == [Fraction(int(x.p), int(x.q)) for x in want]


def test_singular():
    assert bareiss_solve([[1, 2], [2, 4]], [1, 2]) is None


def _box():
    # x0 + x1 >= 3, x0 <= 2, x1 <= 2, 3 x0 - x1 == 1
    return Problem(2, A_ub=np.array([[1, 0], [0, 1]]), b_ub=[2, 2],
                   A_lb=np.array([[1, 1]]), b_lb=[3], A_eq=np.array([[3, -1]]), b_eq=[1])


def test_solve_exact_vertex():
    P = _box()
    sol = P.solve()
    assert P.check(sol)
    x0, x1 = sol.get(0, Fraction(0)), sol.get(1, Fraction(0))
    assert 3 * x0 - x1 == 1 and x0 + x1 >= 3


def test_bland_fallback_agrees():
    P = _box()
    sol = exact_simplex(P, [0, 1])
    assert sol is not None and P.check(sol)


def test_infeasible():
    P = Problem(1, A_ub=np.array([[1]]), b_ub=[1], A_lb=np.array([[1]]), b_lb=[2])
    with pytest.raises(LPInfeasible):
        P.solve()
