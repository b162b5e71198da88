"""Fast feasible deception by binary search on the inducible level.

Instead of solving the bilinear program globally, bisect on the victim
guarantee level v over [min G - budget, max G + budget] with the
inducibility LP as the membership oracle, stop when the bracket is
narrower than delta, and call the confirmed level v_hat. A column-constant
deception D = [d d ... d] realizing v_hat is then recovered per deceiver
row by one LP each, keeping the row with the lowest true payment.

The victim facing G + D perceives value v_{G+D} in [v_hat, v_hat + delta],
so a rational response to the announced game is, up to delta, a response
from the sub-rational set the LPs optimized over; robustify() prices the
worst case over that whole set.
"""

import math
from dataclasses import dataclass

import numpy as np

from .deception import DeceptionMatrix, _subrational_system, check_inducible
from .errors import DimensionMismatch, InfeasibleLevel, MalformedProblem, \
    SolverFailure
from .games import MixedStrategy, vertex
from .lp import LpProblem, LpStatus, solve_lp

DEFAULT_DELTA = 1e-3
_LEVEL_SLACK = 1e-9


@dataclass
class FeasibleSolution:
    v_best: float
    x_bar: MixedStrategy
    D_bar: DeceptionMatrix
    y_bar: MixedStrategy
    v_hat: float
    delta: float
    robust_bound: float = None
    probes: int = 0


def bisection_count(game, budget, delta):
    """Closed-form number of membership probes the search will make."""
    width = float(game.payoffs.max()) - float(game.payoffs.min()) + 2.0 * budget
    if width <= delta:
        return 0
    return int(math.ceil(math.log2(width / delta)))


def subrational_lp(game, budget, v, i, feas_tol=1e-9):
    """min over the sub-rational set at level v of the true row-i payment.

    Solves min e_i^T G y over {y in simplex, ||d||_1 <= budget,
    G y + d >= v 1}; returns (d, y, objective).
    """
    G = game.payoffs
    m, n = G.shape
    if not 0 <= i < m:
        raise MalformedProblem(f"row index {i} out of range for {m} rows")
    a_ub, a_eq, nv = _subrational_system(G, budget, with_level=False)
    b_ub = np.concatenate([np.full(m, -v), [budget]])
    cost = np.zeros(nv)
    cost[:n] = G[i, :]
    sol = solve_lp(LpProblem(cost, a_ub, b_ub, a_eq, np.ones(1)),
                   feas_tol, feas_tol)
    if sol.status is LpStatus.INFEASIBLE:
        raise InfeasibleLevel(
            f"level {v} is not inducible under budget {budget}")
    if sol.status is not LpStatus.OPTIMAL:
        raise SolverFailure(
            f"sub-rational LP ended with status {sol.status.value}")
    y = np.maximum(sol.x[:n], 0.0)
    y = y / float(y.sum())
    d = sol.x[n:n + m] - sol.x[n + m:n + 2 * m]
    return d, MixedStrategy(y, "column"), float(sol.objective)


def solve_feasible(game, budget, delta=DEFAULT_DELTA):
    """Binary-search deception: v_hat within delta of the best inducible
    level, plus the best column-constant deception realizing it."""
    if budget < 0.0:
        raise MalformedProblem(f"budget must be >= 0, got {budget}")
    if delta <= 0.0:
        raise MalformedProblem(f"delta must be > 0, got {delta}")
    G = game.payoffs
    m, n = G.shape
    lo = float(G.min()) - budget  # always inducible: G y >= (min G) 1 with d=0
    hi = float(G.max()) + budget  # nothing above this is inducible
    probes = 0
    while hi - lo > delta:
        mid = 0.5 * (lo + hi)
        ok, _ = check_inducible(game, budget, mid)
        probes += 1
        if ok:
            lo = mid
        else:
            hi = mid
    v_hat = lo

    best = None
    for i in range(m):
        d, y, obj = subrational_lp(game, budget, v_hat, i)
        if best is None or obj < best[0]:
            best = (obj, i, d, y)
    obj, i_star, d_star, y_star = best
    D_bar = np.tile(d_star[:, None], (1, n))
    return FeasibleSolution(
        v_best=obj,
        x_bar=vertex(i_star, m, "row"),
        D_bar=DeceptionMatrix(D_bar, budget),
        y_bar=y_star,
        v_hat=v_hat,
        delta=delta,
        probes=probes,
    )


def robustify(game, sol):
    """Worst-case true payment over the whole sub-rational set at v_hat.

    Upper-bounds the deceiver's payment against ANY rational response to
    G + D_bar, because v_hat <= v_{G+D_bar} makes the rational set a subset
    of the one priced here. Stored on sol.robust_bound and returned.
    """
    G = game.payoffs
    if sol.D_bar.D.shape != G.shape:
        raise DimensionMismatch(
            f"solution shape {sol.D_bar.D.shape} does not match game "
            f"{G.shape}")
    n = G.shape[1]
    gp = G + sol.D_bar.D
    cost = G.T @ sol.x_bar.probs
    a_ub = -gp
    b_ub = np.full(G.shape[0], -(sol.v_hat - _LEVEL_SLACK))
    lp = LpProblem(cost, a_ub, b_ub, np.ones((1, n)), np.ones(1), sense="max")
    out = solve_lp(lp)
    if out.status is not LpStatus.OPTIMAL:
        raise SolverFailure(
            f"robustification LP ended with status {out.status.value}")
    sol.robust_bound = float(out.objective)
    return sol.robust_bound
