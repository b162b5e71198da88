"""Pure NumPy two-phase simplex kernel.

Reference implementation of the dense tableau kernel. The compiled twin in
``_simplex_cy.pyx`` mirrors it operation for operation (same pivot rules, same
arithmetic order, no FMA contraction), so both backends return bit-identical
results on identical inputs.

The kernel solves the oriented standard form

    minimize c.x  subject to  A x <= b (rows with kind 0),
                              A x  = b (rows with kind 1),  x >= 0,

and reports row multipliers read off the final reduced-cost row: for an
inequality row the multiplier of its slack column, for an equality row the
sign-corrected multiplier of its artificial column.

Pivot rules (fixed, for determinism):
  * entering: Dantzig (most negative reduced cost, lowest index on ties);
    after ``bland_after`` consecutive degenerate steps, Bland's rule (lowest
    index with negative reduced cost) until a non-degenerate step occurs;
  * leaving: minimum ratio, ties broken by smallest basic variable index.
"""

import numpy as np

BACKEND = "python"

OPTIMAL = 0
INFEASIBLE = 1
UNBOUNDED = 2
ITER_LIMIT = 3

_PIV_TOL = 1e-10  # smallest acceptable pivot element
_DEG_TOL = 1e-12  # step sizes below this count as degenerate
_DRIVE_TOL = 1e-9  # pivot threshold when driving artificials out


def _pivot(T, basis, r, j):
    piv = T[r, j]
    T[r, :] /= piv
    colv = T[:, j].copy()
    colv[r] = 0.0
    T -= colv[:, None] * T[r, None, :]
    T[:, j] = 0.0
    T[r, j] = 1.0
    basis[r] = j


def _run_phase(T, basis, price_hi, opt_tol, bland_after, max_iter, iters):
    """Iterate pivots until optimal/unbounded; prices columns [0, price_hi)."""
    nrows = T.shape[0] - 1
    streak = 0
    bland = False
    while True:
        obj = T[nrows, :price_hi]
        if bland:
            cand = np.flatnonzero(obj < -opt_tol)
            if cand.size == 0:
                return OPTIMAL, iters
            j = int(cand[0])
        else:
            j = int(np.argmin(obj))
            if obj[j] >= -opt_tol:
                return OPTIMAL, iters
        col = T[:nrows, j]
        pos = np.flatnonzero(col > _PIV_TOL)
        if pos.size == 0:
            return UNBOUNDED, iters
        ratios = T[pos, -1] / col[pos]
        theta = ratios.min()
        ties = pos[ratios == theta]
        if ties.size == 1:
            r = int(ties[0])
        else:
            r = int(ties[np.argmin(basis[ties])])
        _pivot(T, basis, r, j)
        iters += 1
        if iters >= max_iter:
            return ITER_LIMIT, iters
        if theta < _DEG_TOL:
            streak += 1
            if streak >= bland_after:
                bland = True
        else:
            streak = 0
            bland = False


def solve_standard(A, b, kinds, c, feas_tol, opt_tol, bland_after, max_iter):
    """Solve the oriented standard-form LP.

    Returns ``(status, x, objective, row_duals, iterations)``; ``x`` and the
    duals are zero-filled unless status is OPTIMAL.
    """
    R, N = A.shape
    flip = np.where(b < 0.0, -1.0, 1.0)
    Ao = A * flip[:, None]
    bo = b * flip

    is_ineq = kinds == 0
    slack_of = np.full(R, -1, dtype=np.int64)
    slack_of[is_ineq] = N + np.arange(int(is_ineq.sum()))
    n_slack = int(is_ineq.sum())

    needs_art = (~is_ineq) | (flip < 0.0)
    art_of = np.full(R, -1, dtype=np.int64)
    art_start = N + n_slack
    art_of[needs_art] = art_start + np.arange(int(needs_art.sum()))
    n_art = int(needs_art.sum())

    width = art_start + n_art + 1
    T = np.zeros((R + 1, width))
    T[:R, :N] = Ao
    for r in range(R):
        if slack_of[r] >= 0:
            T[r, slack_of[r]] = flip[r]
        if art_of[r] >= 0:
            T[r, art_of[r]] = 1.0
    T[:R, -1] = bo

    basis = np.where(needs_art, art_of, slack_of).astype(np.int64)

    x = np.zeros(N)
    duals = np.zeros(R)

    iters = 0
    if n_art > 0:
        for r in range(R):
            if art_of[r] >= 0:
                T[R, art_of[r]] = 1.0
        for r in range(R):
            if art_of[r] >= 0:
                T[R, :] -= T[r, :]
        code, iters = _run_phase(T, basis, art_start, opt_tol, bland_after,
                                 max_iter, iters)
        if code != OPTIMAL:
            # Phase 1 is bounded below by zero, so UNBOUNDED here means a
            # numerical breakdown; report it as an iteration failure.
            return ITER_LIMIT, x, 0.0, duals, iters
        if -T[R, -1] > feas_tol:
            return INFEASIBLE, x, 0.0, duals, iters
        # Drive leftover basic artificials out; a row with no usable pivot is
        # redundant and is neutralized instead.
        for r in range(R):
            if basis[r] >= art_start:
                row = T[r, :art_start]
                nz = np.flatnonzero(np.abs(row) > _DRIVE_TOL)
                if nz.size:
                    _pivot(T, basis, r, int(nz[0]))
                else:
                    T[r, :art_start] = 0.0
                    T[r, -1] = 0.0

    T[R, :] = 0.0
    T[R, :N] = c
    for r in range(R):
        bj = basis[r]
        if bj < N and c[bj] != 0.0:
            T[R, :] -= c[bj] * T[r, :]
    code, iters = _run_phase(T, basis, art_start, opt_tol, bland_after,
                             max_iter, iters)
    if code != OPTIMAL:
        return code, x, 0.0, duals, iters

    for r in range(R):
        if basis[r] < N:
            v = T[r, -1]
            x[basis[r]] = v if v > 0.0 else 0.0
    obj = 0.0
    for k in range(N):
        obj += c[k] * x[k]

    for r in range(R):
        if slack_of[r] >= 0:
            duals[r] = T[R, slack_of[r]]
        else:
            duals[r] = flip[r] * T[R, art_of[r]]
    return OPTIMAL, x, obj, duals, iters
