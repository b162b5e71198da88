# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of the pure NumPy simplex kernel.

This mirrors _simplex_py.py operation for operation: same pivot rules, same
arithmetic order, scalar C loops in place of NumPy elementwise calls, and
the extension is built with FP contraction disabled, so both backends
return bit-identical results. Keep the two files in sync when editing
either one.
"""

import numpy as np

BACKEND = "compiled"

OPTIMAL = 0
INFEASIBLE = 1
UNBOUNDED = 2
ITER_LIMIT = 3

cdef double _PIV_TOL = 1e-10
cdef double _DEG_TOL = 1e-12
cdef double _DRIVE_TOL = 1e-9


def _pivot(double[:, ::1] T, long long[::1] basis, Py_ssize_t r, Py_ssize_t j):
    cdef Py_ssize_t nr = T.shape[0]
    cdef Py_ssize_t w = T.shape[1]
    cdef Py_ssize_t i, k
    cdef double piv = T[r, j]
    cdef double f
    colv_arr = np.empty(nr)
    cdef double[::1] colv = colv_arr
    for k in range(w):
        T[r, k] = T[r, k] / piv
    for i in range(nr):
        colv[i] = T[i, j]
    colv[r] = 0.0
    for i in range(nr):
        f = colv[i]
        if f != 0.0:
            for k in range(w):
                T[i, k] = T[i, k] - f * T[r, k]
    for i in range(nr):
        T[i, j] = 0.0
    T[r, j] = 1.0
    basis[r] = j


def _run_phase(double[:, ::1] T, long long[::1] basis, Py_ssize_t price_hi,
               double opt_tol, int bland_after, long max_iter, long iters):
    cdef Py_ssize_t nrows = T.shape[0] - 1
    cdef Py_ssize_t rhs = T.shape[1] - 1
    cdef int streak = 0
    cdef bint bland = False
    cdef Py_ssize_t j, jj, i, r
    cdef double best, theta, ratio
    while True:
        if bland:
            j = -1
            for jj in range(price_hi):
                if T[nrows, jj] < -opt_tol:
                    j = jj
                    break
            if j < 0:
                return OPTIMAL, iters
        else:
            j = 0
            best = T[nrows, 0]
            for jj in range(1, price_hi):
                if T[nrows, jj] < best:
                    best = T[nrows, jj]
                    j = jj
            if best >= -opt_tol:
                return OPTIMAL, iters
        r = -1
        theta = 0.0
        for i in range(nrows):
            if T[i, j] > _PIV_TOL:
                ratio = T[i, rhs] / T[i, j]
                if r < 0 or ratio < theta:
                    theta = ratio
                    r = i
        if r < 0:
            return UNBOUNDED, iters
        for i in range(nrows):
            if T[i, j] > _PIV_TOL:
                ratio = T[i, rhs] / T[i, j]
                if ratio == theta and basis[i] < basis[r]:
                    r = i
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
    """Same contract as the reference kernel; see _simplex_py.solve_standard."""
    cdef Py_ssize_t R = A.shape[0]
    cdef Py_ssize_t N = A.shape[1]
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

    cdef double[:, ::1] Tv = T
    cdef long long[::1] bv = basis

    iters = 0
    if n_art > 0:
        for r in range(R):
            if art_of[r] >= 0:
                T[R, art_of[r]] = 1.0
        for r in range(R):
            if art_of[r] >= 0:
                T[R, :] -= T[r, :]
        code, iters = _run_phase(Tv, bv, art_start, opt_tol, bland_after,
                                 max_iter, iters)
        if code != OPTIMAL:
            return ITER_LIMIT, x, 0.0, duals, iters
        if -T[R, -1] > feas_tol:
            return INFEASIBLE, x, 0.0, duals, iters
        for r in range(R):
            if basis[r] >= art_start:
                row = T[r, :art_start]
                nz = np.flatnonzero(np.abs(row) > _DRIVE_TOL)
                if nz.size:
                    _pivot(Tv, bv, r, int(nz[0]))
                else:
                    T[r, :art_start] = 0.0
                    T[r, -1] = 0.0

    T[R, :] = 0.0
    T[R, :N] = c
    for r in range(R):
        bj = basis[r]
        if bj < N and c[bj] != 0.0:
            T[R, :] -= c[bj] * T[r, :]
    code, iters = _run_phase(Tv, bv, art_start, opt_tol, bland_after,
                             max_iter, iters)
    if code != OPTIMAL:
        return code, x, 0.0, duals, iters

    for r in range(R):
        if basis[r] < N:
            v = T[r, -1]
            x[basis[r]] = v if v > 0.0 else 0.0
    cdef double obj = 0.0
    cdef double[::1] cv = np.ascontiguousarray(c)
    cdef double[::1] xv = x
    cdef Py_ssize_t k
    for k in range(N):
        obj = obj + cv[k] * xv[k]

    for r in range(R):
        if slack_of[r] >= 0:
            duals[r] = T[R, slack_of[r]]
        else:
            duals[r] = flip[r] * T[R, art_of[r]]
    return OPTIMAL, x, obj, duals, iters
