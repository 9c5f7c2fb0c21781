"""Exact rational feasibility for small linear systems.

The strategy is: solve in floating point with HiGHS (dual simplex, so the
answer is a vertex), read off the support and the tight rows, solve that
square subsystem exactly with fraction-free elimination, and verify every
constraint in exact arithmetic.  When the repair fails a dense exact simplex
(Bland's rule) over the float support, then over all columns, takes over.
"""

from __future__ import annotations

import logging
from fractions import Fraction

import numpy as np
import scipy.linalg
from scipy.optimize import linprog
from scipy.sparse import csr_matrix, vstack

log = logging.getLogger(__name__)


class LPInfeasible(Exception):
    pass


def bareiss_solve(A, b):
    """Solve a square integer system exactly.  Returns Fractions or None if singular."""
    n = len(b)
    if n == 0:
        return []
    M = np.empty((n, n + 1), dtype=object)
    M[:, :n] = np.asarray(A, dtype=object)
    M[:, n] = np.asarray(b, dtype=object)
    prev = 1
    for k in range(n):
        piv = None
        for r in range(k, n):
            if M[r, k] != 0:
                piv = r
                break
        if piv is None:
            return None
        if piv != k:
            M[[k, piv]] = M[[piv, k]]
        if k + 1 < n:
            pk = M[k, k]
            sub = M[k + 1:, k + 1:]
            M[k + 1:, k + 1:] = (pk * sub - np.multiply.outer(M[k + 1:, k], M[k, k + 1:])) // prev
            M[k + 1:, k] = 0
        prev = M[k, k]
    x = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        s = Fraction(M[k, n])
        for j in range(k + 1, n):
            if M[k, j]:
                s -= M[k, j] * x[j]
        x[k] = s / M[k, k]
    return x


def _rank_rows(A: np.ndarray, k: int) -> list[int] | None:
    """Pick k linearly independent rows of A (float QR with pivoting)."""
    if k == 0:
        return []
    if A.shape[0] < k:
        return None
    _, R, piv = scipy.linalg.qr(A.T.astype(float), pivoting=True, mode="economic")
    diag = np.abs(np.diag(R))
    if len(diag) < k or diag[k - 1] <= 1e-9 * max(1.0, diag[0]):
        return None
    return sorted(int(p) for p in piv[:k])


class Problem:
    """``A_ub x <= b_ub``, ``A_lb x >= b_lb``, ``A_eq x == b_eq``, ``x >= 0``.

    Matrices are integer (dense numpy or scipy sparse); right-hand sides are
    Python ints."""

    def __init__(self, ncols, A_ub=None, b_ub=(), A_lb=None, b_lb=(), A_eq=None, b_eq=(), cost=None):
        self.ncols = ncols
        blocks = []
        rhs = []
        kinds = []
        for A, b, kind in ((A_ub, b_ub, "ub"), (A_lb, b_lb, "lb"), (A_eq, b_eq, "eq")):
            if A is None or len(b) == 0:
                continue
            blocks.append(csr_matrix(A, dtype=np.int64))
            rhs.extend(int(x) for x in b)
            kinds.extend([kind] * len(b))
        self.A = vstack(blocks).tocsr() if blocks else csr_matrix((0, ncols), dtype=np.int64)
        self.b = rhs
        self.kinds = kinds
        self.cost = np.ones(ncols) if cost is None else np.asarray(cost, dtype=float)

    # exact verification ------------------------------------------------------
    def check(self, sol: dict) -> bool:
        if any(v < 0 for v in sol.values()):
            return False
        cols = sorted(sol)
        if not cols:
            vals = [0] * len(self.b)
            den = 1
        else:
            den = 1
            for c in cols:
                den = den * sol[c].denominator // np.gcd(den, sol[c].denominator)
            nums = np.array([sol[c].numerator * (den // sol[c].denominator) for c in cols], dtype=object)
            sub = self.A[:, cols].toarray().astype(object)
            vals = sub.dot(nums) if len(self.b) else []
        for v, b, kind in zip(vals, self.b, self.kinds):
            rhs = b * den
            if kind == "ub" and v > rhs:
                return False
            if kind == "lb" and v < rhs:
                return False
            if kind == "eq" and v != rhs:
                return False
        return True

    # float solve -------------------------------------------------------------
    def float_solve(self, method="highs-ds"):
        sign = np.array([1.0 if k == "ub" else -1.0 for k in self.kinds if k != "eq"])
        ineq = [i for i, k in enumerate(self.kinds) if k != "eq"]
        eq = [i for i, k in enumerate(self.kinds) if k == "eq"]
        A = self.A.astype(float)
        b = np.array(self.b, dtype=float)
        kw = {}
        if ineq:
            kw["A_ub"] = A[ineq].multiply(sign[:, None]).tocsr()
            kw["b_ub"] = b[ineq] * sign
        if eq:
            kw["A_eq"] = A[eq]
            kw["b_eq"] = b[eq]
        res = linprog(self.cost, bounds=(0, None), method=method, **kw)
        return res

    def repair(self, x: np.ndarray) -> dict | None:
        scale = max([1.0] + [abs(v) for v in self.b])
        tol = 1e-9 * scale
        S = [int(j) for j in np.nonzero(x > tol)[0]]
        if not S:
            sol = {}
            return sol if self.check(sol) else None
        Ax = self.A @ x
        b = np.array(self.b, dtype=float)
        tight = [i for i, k in enumerate(self.kinds) if k == "eq" or abs(Ax[i] - b[i]) <= 1e-7 * scale]
        sub = self.A[tight][:, S].toarray()
        rows = _rank_rows(sub, len(S))
        if rows is None:
            return None
        xs = bareiss_solve(sub[rows].tolist(), [self.b[tight[r]] for r in rows])
        if xs is None:
            return None
        sol = {j: v for j, v in zip(S, xs) if v != 0}
        return sol if self.check(sol) else None

    def solve(self) -> dict:
        """Exact feasible point as ``{column: Fraction}`` (zeros omitted)."""
        last = None
        for method in ("highs-ds", "highs-ipm"):
            res = self.float_solve(method)
            last = res
            if res.status == 2:
                raise LPInfeasible("linear system is infeasible")
            if res.status != 0:
                continue
            sol = self.repair(res.x)
            if sol is not None:
                return sol
            log.debug("exact repair after %s failed; trying next method", method)
        support = None
        if last is not None and last.status == 0:
            support = [int(j) for j in np.nonzero(last.x > 1e-12)[0]]
        if support:
            sol = exact_simplex(self, support)
            if sol is not None and self.check(sol):
                return sol
        sol = exact_simplex(self, list(range(self.ncols)))
        if sol is None:
            raise LPInfeasible("exact simplex found no feasible point")
        return sol


def exact_simplex(P: Problem, cols: list[int], max_cols: int = 4000) -> dict | None:
    """Phase-one simplex with Bland's rule, restricted to ``cols``."""
    if len(cols) > max_cols:
        return None
    m = len(P.b)
    A = P.A[:, cols].toarray().astype(object)
    rows = []
    for i in range(m):
        row = [Fraction(int(a)) for a in A[i]]
        b = Fraction(P.b[i])
        kind = P.kinds[i]
        rows.append((row, b, kind))
    k = len(cols)
    n_slack = sum(1 for _, _, kind in rows if kind != "eq")
    width = k + n_slack + m
    T = []
    basis = []
    s = 0
    for i, (row, b, kind) in enumerate(rows):
        r = row + [Fraction(0)] * (n_slack + m) + [b]
        if kind == "ub":
            r[k + s] = Fraction(1)
            s += 1
        elif kind == "lb":
            r[k + s] = Fraction(-1)
            s += 1
        if r[-1] < 0:
            r = [-x for x in r]
        r[k + n_slack + i] = Fraction(1)
        T.append(r)
        basis.append(k + n_slack + i)
    # phase-one objective: minimise the sum of artificials
    obj = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            obj[j] -= T[i][j]
    for i in range(m):
        obj[k + n_slack + i] = Fraction(0)
    for _ in range(100000):
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return None
        _, r = best
        piv = T[r][enter]
        T[r] = [x / piv for x in T[r]]
        for i in range(m):
            if i != r and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, T[r])]
        basis[r] = enter
    if obj[-1] != 0:
        return None
    sol = {}
    for i, bv in enumerate(basis):
        if bv < k and T[i][-1] != 0:
            sol[cols[bv]] = T[i][-1]
    return sol
