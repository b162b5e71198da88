"""Deception matrices, the stealth budget, and inducible victim guarantees.

The budget is measured in the OPERATOR 1-norm: the maximum over columns of
the column's absolute sum (not the entrywise sum). This is the norm under
which ||D y||_1 <= ||D||_1 for any y on the simplex, which is what makes the
inducible-value machinery below sound.

A level v is inducible when some admissible deception makes a victim
strategy y guarantee perceived payoff at least v. By the column-constant
construction D = [d d ... d] (operator norm ||d||_1, and D y = d for every
simplex y), inducibility reduces to the LP system

    y in simplex,  d = d+ - d-,  sum(d+ + d-) <= budget,  G y + d >= v 1.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BudgetViolation, DimensionMismatch, MalformedProblem, \
    SolverFailure
from .games import MatrixGame, MixedStrategy
from .lp import LpProblem, LpStatus, solve_lp

ADMISSIBILITY_TOL = 1e-9


def operator_one_norm(D):
    """max_j sum_i |D_ij| for a 2-d array."""
    D = np.asarray(D, dtype=float)
    if D.ndim != 2:
        raise MalformedProblem(f"expected a matrix, got ndim={D.ndim}")
    if D.size == 0:
        return 0.0
    return float(np.abs(D).sum(axis=0).max())


@dataclass
class DeceptionMatrix:
    """Perturbation D with a declared budget on its operator 1-norm."""

    D: np.ndarray
    budget: float

    def __post_init__(self):
        D = np.asarray(self.D, dtype=float)
        if D.ndim != 2:
            raise MalformedProblem("deception matrix must be 2-d")
        if not np.all(np.isfinite(D)):
            raise MalformedProblem("deception matrix has a non-finite entry")
        if not np.isfinite(self.budget) or self.budget < 0.0:
            raise MalformedProblem(f"budget must be >= 0, got {self.budget}")
        norm = operator_one_norm(D)
        if norm > self.budget + ADMISSIBILITY_TOL:
            raise BudgetViolation(
                f"operator 1-norm {norm:.12g} exceeds budget {self.budget:.12g}")
        self.D = np.ascontiguousarray(D)


@dataclass
class SubrationalCertificate:
    """Witness that level v is inducible: G y + d >= v 1 with ||d||_1 <= budget."""

    v: float
    y: MixedStrategy
    d: np.ndarray


def dual_norm_max(x, y, budget):
    """Largest x^T D y over admissible D, with an attaining witness.

    Equals budget * max_i x_i; the witness puts budget on row argmax_i x_i
    (lowest index on ties) in every column.
    """
    if budget < 0.0:
        raise MalformedProblem(f"budget must be >= 0, got {budget}")
    m = x.probs.shape[0]
    n = y.probs.shape[0]
    istar = int(np.argmax(x.probs))
    value = float(budget * x.probs[istar])
    D = np.zeros((m, n))
    D[istar, :] = budget
    return value, DeceptionMatrix(D, budget)


def perturb(game, dec):
    """The announced game G' = G + D."""
    if dec.D.shape != game.payoffs.shape:
        raise DimensionMismatch(
            f"deception shape {dec.D.shape} does not match game "
            f"{game.payoffs.shape}")
    return MatrixGame(game.payoffs + dec.D)


def _subrational_system(G, budget, with_level):
    """Constraint blocks shared by the inducibility LPs.

    Variables are [y (n), d+ (m), d- (m)] plus a trailing v when with_level.
    Rows: G y + d+ - d- - v >= level  (as -G y - d+ + d- + v <= -level when
    v is fixed, the level lands on the rhs), the budget row, and the simplex
    equality.
    """
    m, n = G.shape
    nv = n + 2 * m + (1 if with_level else 0)
    a_ub = np.zeros((m + 1, nv))
    a_ub[:m, :n] = -G
    a_ub[:m, n:n + m] = -np.eye(m)
    a_ub[:m, n + m:n + 2 * m] = np.eye(m)
    if with_level:
        a_ub[:m, n + 2 * m] = 1.0
    a_ub[m, n:n + 2 * m] = 1.0
    a_eq = np.zeros((1, nv))
    a_eq[0, :n] = 1.0
    return a_ub, a_eq, nv


def check_inducible(game, budget, v, feas_tol=1e-9):
    """Whether level v is inducible under the budget; witness on success."""
    if budget < 0.0:
        raise MalformedProblem(f"budget must be >= 0, got {budget}")
    G = game.payoffs
    m, n = G.shape
    a_ub, a_eq, nv = _subrational_system(G, budget, with_level=False)
    b_ub = np.concatenate([np.full(m, -v), [budget]])
    sol = solve_lp(LpProblem(np.zeros(nv), a_ub, b_ub, a_eq, np.ones(1)),
                   feas_tol, feas_tol)
    if sol.status is LpStatus.INFEASIBLE:
        return False, None
    if sol.status is not LpStatus.OPTIMAL:
        raise SolverFailure(
            f"inducibility LP ended with status {sol.status.value}")
    y = sol.x[:n]
    d = sol.x[n:n + m] - sol.x[n + m:n + 2 * m]
    y = np.maximum(y, 0.0)
    y = y / float(y.sum())
    return True, SubrationalCertificate(float(v), MixedStrategy(y, "column"), d)


def max_inducible_value(game, budget, feas_tol=1e-9):
    """Highest inducible level v* and a witness attaining it (single LP)."""
    if budget < 0.0:
        raise MalformedProblem(f"budget must be >= 0, got {budget}")
    G = game.payoffs
    m, n = G.shape
    a_ub, a_eq, nv = _subrational_system(G, budget, with_level=True)
    b_ub = np.concatenate([np.zeros(m), [budget]])
    cost = np.zeros(nv)
    cost[nv - 1] = 1.0
    lower = np.zeros(nv)
    lower[nv - 1] = float(G.min()) - budget
    upper = np.full(nv, np.inf)
    upper[nv - 1] = float(G.max()) + budget
    sol = solve_lp(LpProblem(cost, a_ub, b_ub, a_eq, np.ones(1), lower, upper,
                             sense="max"), feas_tol, feas_tol)
    if sol.status is not LpStatus.OPTIMAL:
        raise SolverFailure(
            f"max-inducible LP ended with status {sol.status.value}")
    v_star = float(sol.objective)
    y = np.maximum(sol.x[:n], 0.0)
    y = y / float(y.sum())
    d = sol.x[n:n + m] - sol.x[n + m:n + 2 * m]
    return v_star, SubrationalCertificate(v_star, MixedStrategy(y, "column"), d)
