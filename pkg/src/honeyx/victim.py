"""Victim behavior: rational response sets and the robust victim's value.

A rational victim told the game is G' plays some y with G'y >= v_{G'} 1 (a
security policy of the announced matrix). Which element of that set they
play matters to the deceiver, so response selection takes a mode:
``optimistic`` picks the element best for the deceiver (smallest true
payment x^T G y, the strong-Stackelberg convention) and ``pessimistic``
picks the worst.

A victim who distrusts the announcement and optimizes the worst case over
all deceptions within the budget ends up choosing from exactly the same
set: the worst-case objective is min_i (G'y)_i - budget * max_i x_i termwise
and the x-part decouples, shifting the objective by a constant. That is why
robust_victim_value is simply v_{G'} - budget.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, MalformedProblem, SolverFailure
from .games import MixedStrategy, solve_game
from .lp import LpProblem, LpStatus, solve_lp

# Slack applied to the rationality level inside the response LP, so that
# tolerance stacking from the security solve cannot make the set empty.
_LEVEL_SLACK = 1e-9

MODES = ("optimistic", "pessimistic")


@dataclass
class VictimResponse:
    y: MixedStrategy
    perceived_value: float
    mode: str


def is_rational_response(gp, y, tol=1e-7):
    """True iff y is a security policy of the announced game, within tol."""
    if y.probs.shape[0] != gp.cols:
        raise DimensionMismatch(
            f"strategy length {y.probs.shape[0]} does not match {gp.cols} columns")
    v = solve_game(gp).value
    return bool(float((gp.payoffs @ y.probs).min()) >= v - tol)


def select_response(true_game, gp, x, mode="optimistic"):
    """The victim's response from the rational set of gp, scored on true_game.

    Solves min (optimistic) or max (pessimistic) of x^T G y over
    {y in simplex : G'y >= v_{G'} 1}.
    """
    if mode not in MODES:
        raise MalformedProblem(f"mode must be one of {MODES}, got {mode!r}")
    if gp.payoffs.shape != true_game.payoffs.shape:
        raise DimensionMismatch(
            f"announced shape {gp.payoffs.shape} does not match true "
            f"{true_game.payoffs.shape}")
    if x.probs.shape[0] != true_game.rows:
        raise DimensionMismatch(
            f"row strategy length {x.probs.shape[0]} does not match "
            f"{true_game.rows} rows")
    vp = solve_game(gp).value
    n = gp.cols
    cost = true_game.payoffs.T @ x.probs
    a_ub = -gp.payoffs
    b_ub = np.full(gp.rows, -(vp - _LEVEL_SLACK))
    a_eq = np.ones((1, n))
    sense = "min" if mode == "optimistic" else "max"
    sol = solve_lp(LpProblem(cost, a_ub, b_ub, a_eq, np.ones(1), sense=sense),
                   validate=False)
    if sol.status is not LpStatus.OPTIMAL:
        raise SolverFailure(
            f"response LP ended with status {sol.status.value}")
    y = np.maximum(sol.x, 0.0)
    y = y / float(y.sum())
    return VictimResponse(MixedStrategy(y, "column"), vp, mode)


def robust_victim_value(gp, budget):
    """Worst-case guarantee of a victim who distrusts the announcement."""
    if budget < 0.0:
        raise MalformedProblem(f"budget must be >= 0, got {budget}")
    return solve_game(gp).value - budget
