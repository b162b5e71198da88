"""Zero-sum matrix games: representation, outcomes, security policies.

Conventions. ``payoffs[i, j]`` is the amount the row player pays the column
player when row i meets column j. The column player therefore maximizes and
their security value is

    v_G = max_y min_i (G y)_i = min_x max_j (G^T x)_j,

the common value guaranteed by both security policies.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, MalformedProblem, SolverFailure
from .lp import LpProblem, LpStatus, solve_lp

_SUM_TOL = 1e-9


@dataclass
class MatrixGame:
    """Dense m x n payoff matrix, payment from row player to column player."""

    payoffs: np.ndarray

    def __post_init__(self):
        G = np.asarray(self.payoffs, dtype=float)
        if G.ndim != 2 or G.shape[0] < 1 or G.shape[1] < 1:
            raise MalformedProblem(
                f"payoff matrix must be 2-d and non-empty, got shape {G.shape}")
        if not np.all(np.isfinite(G)):
            raise MalformedProblem("payoff matrix contains a non-finite entry")
        self.payoffs = np.ascontiguousarray(G)

    @property
    def rows(self):
        return self.payoffs.shape[0]

    @property
    def cols(self):
        return self.payoffs.shape[1]


@dataclass
class MixedStrategy:
    """Probability vector on the simplex; side is 'row' or 'column'."""

    probs: np.ndarray
    side: str

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.shape[0] < 1:
            raise MalformedProblem("strategy must be a non-empty 1-d vector")
        if self.side not in ("row", "column"):
            raise MalformedProblem(f"side must be 'row' or 'column', got {self.side!r}")
        if not np.all(np.isfinite(p)):
            raise MalformedProblem("strategy contains a non-finite entry")
        if np.any(p < -_SUM_TOL):
            raise MalformedProblem("strategy has a negative component")
        if abs(float(p.sum()) - 1.0) > _SUM_TOL:
            raise MalformedProblem(
                f"strategy components sum to {float(p.sum())}, expected 1")
        self.probs = np.ascontiguousarray(p)


@dataclass
class GameSolution:
    value: float
    row_policy: MixedStrategy
    col_policy: MixedStrategy


def vertex(index, length, side):
    """Pure strategy e_index as a MixedStrategy."""
    p = np.zeros(length)
    p[index] = 1.0
    return MixedStrategy(p, side)


def outcome(game, x, y):
    """Expected payment x^T G y from the row player to the column player."""
    if x.side != "row" or y.side != "column":
        raise DimensionMismatch(
            f"expected (row, column) strategies, got ({x.side}, {y.side})")
    if x.probs.shape[0] != game.rows or y.probs.shape[0] != game.cols:
        raise DimensionMismatch(
            f"strategy lengths ({x.probs.shape[0]}, {y.probs.shape[0]}) do not "
            f"match game shape {game.rows}x{game.cols}")
    return float(x.probs @ game.payoffs @ y.probs)


def _renorm(p):
    q = np.maximum(p, 0.0)
    s = float(q.sum())
    if s <= 0.0:
        raise SolverFailure("degenerate probability vector from LP")
    return q / s


def solve_game(game, feas_tol=1e-9, opt_tol=1e-9):
    """Game value and both security policies.

    The column policy solves max v over {y in simplex, G y >= v 1} as an LP
    with v bounded in [min G - 1, max G + 1]; the row policy is read off the
    multipliers of the m payoff rows.
    """
    G = game.payoffs
    m, n = G.shape
    glo = float(G.min())
    ghi = float(G.max())

    # variables: y (n entries), then v
    cost = np.zeros(n + 1)
    cost[n] = 1.0
    a_ub = np.hstack([-G, np.ones((m, 1))])
    b_ub = np.zeros(m)
    a_eq = np.zeros((1, n + 1))
    a_eq[0, :n] = 1.0
    b_eq = np.ones(1)
    lower = np.zeros(n + 1)
    lower[n] = glo - 1.0
    upper = np.full(n + 1, np.inf)
    upper[n] = ghi + 1.0

    sol = solve_lp(LpProblem(cost, a_ub, b_ub, a_eq, b_eq, lower, upper,
                             sense="max"), feas_tol, opt_tol, validate=False)
    if sol.status is not LpStatus.OPTIMAL:
        raise SolverFailure(f"security LP ended with status {sol.status.value}")

    y = _renorm(sol.x[:n])
    x = _renorm(sol.dual_ineq)
    v = float(sol.objective)
    return GameSolution(v, MixedStrategy(x, "row"), MixedStrategy(y, "column"))


def game_to_dict(game):
    return {"rows": game.rows, "cols": game.cols,
            "payoffs": [[float(v) for v in row] for row in game.payoffs]}


def game_from_dict(obj):
    try:
        rows = obj["rows"]
        cols = obj["cols"]
        payoffs = obj["payoffs"]
    except (KeyError, TypeError) as exc:
        raise MalformedProblem(f"game JSON missing field: {exc}") from exc
    game = MatrixGame(np.asarray(payoffs, dtype=float))
    if game.rows != rows or game.cols != cols:
        raise MalformedProblem(
            f"declared shape {rows}x{cols} does not match payoffs "
            f"{game.rows}x{game.cols}")
    return game


def load_game(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedProblem(f"invalid game JSON: {exc}") from exc
    return game_from_dict(obj)
