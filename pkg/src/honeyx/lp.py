"""Linear programming front end.

Problems are stated in inequality/equality block form with per-variable
bounds; this module converts them to the nonnegative standard form expected
by the tableau kernel and maps the solution (and the inequality/equality row
multipliers) back.

Two interchangeable kernels exist: a compiled one (``_simplex_cy``) and a
pure NumPy one (``_simplex_py``). The compiled kernel is preferred when the
extension built; set ``HONEYX_KERNEL=python`` or ``HONEYX_KERNEL=compiled``
to force a choice. Both produce bit-identical output.
"""

import os
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import MalformedProblem, SolverFailure

_choice = os.environ.get("HONEYX_KERNEL", "").strip().lower()
if _choice == "python":
    from . import _simplex_py as _kernel
elif _choice == "compiled":
    from . import _simplex_cy as _kernel  # ImportError here is deliberate
else:
    try:
        from . import _simplex_cy as _kernel
    except ImportError:
        from . import _simplex_py as _kernel

KERNEL_BACKEND = _kernel.BACKEND

DEFAULT_FEAS_TOL = 1e-9
DEFAULT_OPT_TOL = 1e-9
_BLAND_AFTER = 30


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _as_matrix(val, name):
    arr = np.asarray(val, dtype=float)
    if arr.ndim != 2:
        raise MalformedProblem(f"{name} must be a 2-d array, got ndim={arr.ndim}")
    return np.ascontiguousarray(arr)


def _as_vector(val, name):
    arr = np.asarray(val, dtype=float)
    if arr.ndim != 1:
        raise MalformedProblem(f"{name} must be a 1-d array, got ndim={arr.ndim}")
    return np.ascontiguousarray(arr)


@dataclass
class LpProblem:
    """min or max of cost.x over {A_ub x <= b_ub, A_eq x = b_eq, l <= x <= u}.

    Bounds default to [0, +inf). Infinite bounds are allowed; NaN anywhere
    is rejected by :func:`solve_lp`.
    """

    cost: np.ndarray
    a_ub: np.ndarray
    b_ub: np.ndarray
    a_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    lower: np.ndarray | None = None
    upper: np.ndarray | None = None
    sense: str = "min"


@dataclass
class LpSolution:
    status: LpStatus
    x: np.ndarray
    objective: float
    dual_ineq: np.ndarray
    dual_eq: np.ndarray
    iterations: int = 0
    backend: str = field(default=KERNEL_BACKEND)


def _validate(p):
    cost = _as_vector(p.cost, "cost")
    n = cost.shape[0]
    if n == 0:
        raise MalformedProblem("problem has no variables")
    a_ub = _as_matrix(p.a_ub, "a_ub") if p.a_ub is not None else np.zeros((0, n))
    b_ub = _as_vector(p.b_ub, "b_ub") if p.b_ub is not None else np.zeros(0)
    if a_ub.shape[1] != n:
        raise MalformedProblem(
            f"a_ub has {a_ub.shape[1]} columns, expected {n}")
    if b_ub.shape[0] != a_ub.shape[0]:
        raise MalformedProblem(
            f"b_ub has {b_ub.shape[0]} entries for {a_ub.shape[0]} rows")
    if p.a_eq is not None:
        a_eq = _as_matrix(p.a_eq, "a_eq")
        b_eq = _as_vector(p.b_eq if p.b_eq is not None else [], "b_eq")
        if a_eq.shape[1] != n:
            raise MalformedProblem(
                f"a_eq has {a_eq.shape[1]} columns, expected {n}")
        if b_eq.shape[0] != a_eq.shape[0]:
            raise MalformedProblem(
                f"b_eq has {b_eq.shape[0]} entries for {a_eq.shape[0]} rows")
    else:
        a_eq = np.zeros((0, n))
        b_eq = np.zeros(0)
    lower = _as_vector(p.lower, "lower") if p.lower is not None else np.zeros(n)
    upper = (_as_vector(p.upper, "upper") if p.upper is not None
             else np.full(n, np.inf))
    if lower.shape[0] != n or upper.shape[0] != n:
        raise MalformedProblem("bound vectors must match the variable count")
    for name, arr in (("cost", cost), ("a_ub", a_ub), ("b_ub", b_ub),
                      ("a_eq", a_eq), ("b_eq", b_eq)):
        if arr.size and not np.all(np.isfinite(arr)):
            raise MalformedProblem(f"{name} contains a non-finite entry")
    if np.any(np.isnan(lower)) or np.any(np.isnan(upper)):
        raise MalformedProblem("bounds contain NaN")
    if np.any(lower > upper):
        j = int(np.argmax(lower > upper))
        raise MalformedProblem(f"empty bound interval for variable {j}")
    if np.any(lower == np.inf) or np.any(upper == -np.inf):
        raise MalformedProblem("bound interval escapes to infinity")
    if p.sense not in ("min", "max"):
        raise MalformedProblem(f"sense must be 'min' or 'max', got {p.sense!r}")
    return cost, a_ub, b_ub, a_eq, b_eq, lower, upper


def _trusted(p):
    """Array coercion without the finiteness/shape audit, for callers that
    assemble problems programmatically in a hot loop."""
    cost = np.ascontiguousarray(np.asarray(p.cost, dtype=float))
    n = cost.shape[0]
    a_ub = (np.ascontiguousarray(np.asarray(p.a_ub, dtype=float))
            if p.a_ub is not None else np.zeros((0, n)))
    b_ub = (np.ascontiguousarray(np.asarray(p.b_ub, dtype=float))
            if p.b_ub is not None else np.zeros(0))
    if p.a_eq is not None:
        a_eq = np.ascontiguousarray(np.asarray(p.a_eq, dtype=float))
        b_eq = np.ascontiguousarray(np.asarray(p.b_eq, dtype=float))
    else:
        a_eq = np.zeros((0, n))
        b_eq = np.zeros(0)
    lower = (np.ascontiguousarray(np.asarray(p.lower, dtype=float))
             if p.lower is not None else np.zeros(n))
    upper = (np.ascontiguousarray(np.asarray(p.upper, dtype=float))
             if p.upper is not None else np.full(n, np.inf))
    return cost, a_ub, b_ub, a_eq, b_eq, lower, upper


def solve_lp(problem, feas_tol=DEFAULT_FEAS_TOL, opt_tol=DEFAULT_OPT_TOL,
             validate=True):
    """Solve an :class:`LpProblem`.

    Multipliers follow the Lagrangian convention for the minimization form
    ``min c.x + dual_ineq.(a_ub x - b_ub) + dual_eq.(a_eq x - b_eq)`` with
    ``dual_ineq >= 0``. For ``sense == 'max'`` the cost is negated internally
    and the reported multipliers are those of the negated minimization, so
    the maximum value equals ``dual_ineq.b_ub + dual_eq.b_eq`` plus the bound
    terms.

    ``validate=False`` skips the input audit (shape, NaN, bound order); use
    it only for problems assembled by trusted code.
    """
    if validate:
        cost, a_ub, b_ub, a_eq, b_eq, lower, upper = _validate(problem)
    else:
        cost, a_ub, b_ub, a_eq, b_eq, lower, upper = _trusted(problem)
    n = cost.shape[0]
    r_ub = a_ub.shape[0]

    # Shift/split variables so every kernel variable is >= 0.
    col_var = []    # original variable behind each kernel column
    col_scale = []  # +1 or -1
    offset = np.zeros(n)
    ub_rows = []    # (kernel column, residual upper bound)
    for j in range(n):
        lo, hi = lower[j], upper[j]
        if lo == -np.inf and hi == np.inf:
            col_var.extend((j, j))
            col_scale.extend((1.0, -1.0))
        elif lo > -np.inf:
            col_var.append(j)
            col_scale.append(1.0)
            offset[j] = lo
            if hi < np.inf:
                ub_rows.append((len(col_var) - 1, hi - lo))
        else:
            # upper bound only: substitute x = hi - z
            col_var.append(j)
            col_scale.append(-1.0)
            offset[j] = hi
    col_var = np.asarray(col_var, dtype=np.int64)
    col_scale = np.asarray(col_scale)
    nk = col_var.shape[0]

    a_ub_k = a_ub[:, col_var] * col_scale[None, :]
    b_ub_k = b_ub - a_ub @ offset
    a_eq_k = a_eq[:, col_var] * col_scale[None, :]
    b_eq_k = b_eq - a_eq @ offset

    extra = np.zeros((len(ub_rows), nk))
    extra_rhs = np.zeros(len(ub_rows))
    for i, (col, cap) in enumerate(ub_rows):
        extra[i, col] = 1.0
        extra_rhs[i] = cap

    A = np.ascontiguousarray(np.vstack([a_ub_k, extra, a_eq_k]))
    b = np.ascontiguousarray(np.concatenate([b_ub_k, extra_rhs, b_eq_k]))
    kinds = np.zeros(A.shape[0], dtype=np.uint8)
    kinds[r_ub + len(ub_rows):] = 1

    ck = cost[col_var] * col_scale
    if problem.sense == "max":
        ck = -ck
    ck = np.ascontiguousarray(ck)

    max_iter = 4000 + 40 * (A.shape[0] + nk)
    status, xk, _obj, row_duals, iters = _kernel.solve_standard(
        A, b, kinds, ck, feas_tol, opt_tol, _BLAND_AFTER, max_iter)

    if status == _kernel.ITER_LIMIT:
        raise SolverFailure(
            f"simplex kernel hit the iteration limit ({max_iter})")
    if status == _kernel.INFEASIBLE:
        return LpSolution(LpStatus.INFEASIBLE, np.zeros(n), np.nan,
                          np.zeros(r_ub), np.zeros(a_eq.shape[0]), iters)
    if status == _kernel.UNBOUNDED:
        return LpSolution(LpStatus.UNBOUNDED, np.zeros(n), np.nan,
                          np.zeros(r_ub), np.zeros(a_eq.shape[0]), iters)

    x = offset.copy()
    for k in range(nk):
        x[col_var[k]] += col_scale[k] * xk[k]
    obj = 0.0
    for j in range(n):
        obj += cost[j] * x[j]
    dual_ineq = row_duals[:r_ub].copy()
    dual_eq = row_duals[r_ub + len(ub_rows):].copy()
    return LpSolution(LpStatus.OPTIMAL, x, obj, dual_ineq, dual_eq, iters)
