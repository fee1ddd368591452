# -*- coding: utf-8 -*-
"""*A small dense two-phase simplex solver with Bland's anti-cycling rule.*

The geometric primitives of this package solve tiny linear programs (a few hundred constraints at
most): Chebyshev centers of polytopes and convex-hull membership. The solver works on a dense
numpy tableau and always pivots on the lowest-index improving column and, among tied ratio-test
rows, on the row whose basic variable has the lowest index. This makes every result
deterministic for identical inputs.

Problems are stated as:

```
minimize    c·x
subject to  A_ub x <= b_ub
            A_eq x == b_eq
            x_j >= 0   for all j not in `free`
```

!!! example
    ```python
    >>> import sumset_core as sc
    >>> res = sc.linprog_bland([-1, -1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6])
    >>> res.status, round(res.fun, 6)
    ('optimal', -2.8)

    ```
"""
from typing import Optional, Sequence
import numpy as np
from loguru import logger as log
import sumset_core as sc


__all__ = [
    "LpResult",
    "linprog_bland",
]


class LpResult:
    """Outcome of a linear program solved by `linprog_bland`."""

    def __init__(self, status, x=None, fun=None, iterations=0):
        # type: (str, Optional[np.ndarray], Optional[float], int) -> None
        self.status = status
        self.x = x
        self.fun = fun
        self.iterations = iterations

    @property
    def success(self):
        # type: () -> bool
        return self.status == "optimal"

    def __repr__(self):
        return f"LpResult(status={self.status!r}, fun={self.fun!r}, iterations={self.iterations})"

    def dict(self):
        # type: () -> dict
        x = None if self.x is None else self.x.tolist()
        return dict(status=self.status, x=x, fun=self.fun, iterations=self.iterations)


def linprog_bland(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, free=()):
    # type: (Sequence[float], Optional[np.ndarray], Optional[Sequence[float]], Optional[np.ndarray], Optional[Sequence[float]], Sequence[int]) -> LpResult
    """
    Minimize a linear objective subject to linear constraints.

    Free variables are split into a difference of two non-negative variables. Inequality rows
    with non-negative right-hand side start with their slack in the basis, all other rows get an
    artificial variable that phase 1 drives to zero.

    :param Sequence[float] c: Objective coefficients (length n)
    :param ndarray A_ub: Inequality matrix (m_ub x n)
    :param Sequence[float] b_ub: Inequality right-hand side
    :param ndarray A_eq: Equality matrix (m_eq x n)
    :param Sequence[float] b_eq: Equality right-hand side
    :param Sequence[int] free: Indices of sign-unrestricted variables
    :return: Status ("optimal", "infeasible", "unbounded", "iteration_limit") with solution
    :rtype: LpResult
    """
    c = np.asarray(c, dtype=np.float64).reshape(-1)
    n = c.size
    A_ub = np.zeros((0, n)) if A_ub is None else np.atleast_2d(np.asarray(A_ub, dtype=np.float64))
    A_eq = np.zeros((0, n)) if A_eq is None else np.atleast_2d(np.asarray(A_eq, dtype=np.float64))
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=np.float64).reshape(-1)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=np.float64).reshape(-1)
    if A_ub.shape[1] != n or A_eq.shape[1] != n:
        raise sc.DimensionError(f"Constraint matrices must have {n} columns")
    if len(A_ub) != len(b_ub) or len(A_eq) != len(b_eq):
        raise sc.DimensionError("Constraint matrices and right-hand sides differ in length")

    free = sorted(set(int(j) for j in free))
    # Split free variables: x_j = x_j+ - x_j-, negative parts appended after the originals
    A_ub = np.hstack([A_ub, -A_ub[:, free]])
    A_eq = np.hstack([A_eq, -A_eq[:, free]])
    cost = np.concatenate([c, -c[free]])
    nv = cost.size

    m_ub, m_eq = len(b_ub), len(b_eq)
    m = m_ub + m_eq
    A = np.zeros((m, nv + m_ub))
    A[:m_ub, :nv] = A_ub
    A[:m_ub, nv:] = np.eye(m_ub)
    A[m_ub:, :nv] = A_eq
    b = np.concatenate([b_ub, b_eq])
    cost = np.concatenate([cost, np.zeros(m_ub)])

    flip = b < 0
    A[flip] *= -1
    b[flip] *= -1

    # Slack is a feasible starting basic variable for unflipped inequality rows
    needs_art = np.ones(m, dtype=bool)
    needs_art[:m_ub] = flip[:m_ub]
    art_rows = np.flatnonzero(needs_art)
    n_struct = nv + m_ub
    n_art = len(art_rows)

    T = np.zeros((m + 1, n_struct + n_art + 1))
    T[:m, :n_struct] = A
    T[:m, -1] = b
    basis = np.empty(m, dtype=np.int64)
    basis[:m_ub] = nv + np.arange(m_ub)
    for k, row in enumerate(art_rows):
        T[row, n_struct + k] = 1.0
        basis[row] = n_struct + k

    tol = sc.core_opts.lp_pivot_tolerance
    iterations = 0

    if n_art:
        # Phase 1 objective: sum of artificials, expressed in non-basic terms
        T[-1, n_struct : n_struct + n_art] = 1.0
        for row in art_rows:
            T[-1] -= T[row]
        status, nit = _solve(T, basis, tol)
        iterations += nit
        if status != "optimal":
            return LpResult(status, iterations=iterations)
        feas_tol = sc.core_opts.tolerance * max(1.0, float(np.max(np.abs(b), initial=0.0)))
        if -T[-1, -1] > feas_tol:
            log.debug(f"LP infeasible: phase 1 residual {-T[-1, -1]!r}")
            return LpResult("infeasible", iterations=iterations)
        T, basis = _drive_out_artificials(T, basis, n_struct, tol)
        T = np.delete(T, np.s_[n_struct : n_struct + n_art], axis=1)

    # Phase 2 objective row in terms of the current basis
    T[-1] = 0.0
    T[-1, :n_struct] = cost
    for row, var in enumerate(basis):
        if T[-1, var] != 0.0:
            T[-1] -= T[-1, var] * T[row]
    status, nit = _solve(T, basis, tol)
    iterations += nit
    if status != "optimal":
        return LpResult(status, iterations=iterations)

    solution = np.zeros(n_struct)
    solution[basis] = T[:-1, -1]
    x = solution[:n].copy()
    x[free] -= solution[n : n + len(free)]
    fun = float(c @ x)
    log.debug(f"LP solved in {iterations} pivots, objective {fun!r}")
    return LpResult("optimal", x=x, fun=fun, iterations=iterations)


def _solve(T, basis, tol):
    # type: (np.ndarray, np.ndarray, float) -> tuple
    """Run Bland-rule pivots on tableau `T` in place until optimal, unbounded or out of pivots."""
    nit = 0
    while True:
        candidates = np.flatnonzero(T[-1, :-1] < -tol)
        if candidates.size == 0:
            return "optimal", nit
        col = candidates[0]
        column = T[:-1, col]
        rows = np.flatnonzero(column > tol)
        if rows.size == 0:
            return "unbounded", nit
        ratios = T[rows, -1] / column[rows]
        best = ratios.min()
        tied = rows[ratios <= best + tol * max(1.0, abs(best))]
        row = tied[np.argmin(basis[tied])]
        if nit >= sc.core_opts.lp_max_iterations:
            return "iteration_limit", nit
        _pivot(T, basis, row, col)
        nit += 1


def _pivot(T, basis, row, col):
    # type: (np.ndarray, np.ndarray, int, int) -> None
    basis[row] = col
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])


def _drive_out_artificials(T, basis, n_struct, tol):
    # type: (np.ndarray, np.ndarray, int, float) -> tuple
    """Pivot basic artificials out after phase 1; rows where that is impossible are redundant."""
    redundant = []
    for row in range(len(basis)):
        if basis[row] < n_struct:
            continue
        cols = np.flatnonzero(np.abs(T[row, :n_struct]) > tol)
        if cols.size:
            _pivot(T, basis, row, cols[0])
        else:
            redundant.append(row)
    if redundant:
        log.debug(f"Dropping {len(redundant)} redundant equality rows")
        T = np.delete(T, redundant, axis=0)
        basis = np.delete(basis, redundant)
    return T, basis
