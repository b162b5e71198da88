"""Victim response selection, rationality checks, and the robust-victim
equivalence.

The grid test at the bottom is the discretized form of the claim that a
victim who hedges against any admissible deception of the announced game
plays exactly like one who trusts the announcement: for every response y,
min over x of [x'G'y - budget * max_i x_i] equals min_i (G'y)_i - budget,
both attained at a pure row.
"""

import numpy as np
import pytest

from honeyx.errors import MalformedProblem
from honeyx.games import MatrixGame, MixedStrategy, outcome, solve_game, vertex
from honeyx.victim import (is_rational_response, robust_victim_value,
                           select_response)
from oracles import simplex_grid


def test_simplex_grid_shape():
    g = simplex_grid(3, 0.25)
    assert g.shape == (15, 3)
    assert np.allclose(g.sum(axis=1), 1.0)
    assert np.all(g >= 0.0)


def test_select_response_unique_optimum(pennies):
    # announced game [[1.4,-0.6],[-1,1]] has the unique security response
    # (0.4, 0.6); tie-breaking never matters there
    gp = MatrixGame(np.array([[1.4, -0.6], [-1.0, 1.0]]))
    for mode in ("optimistic", "pessimistic"):
        r = select_response(pennies, gp, vertex(0, 2, "row"), mode)
        assert np.allclose(r.y.probs, [0.4, 0.6], atol=1e-8)
        assert r.mode == mode
        assert abs(r.perceived_value - 0.2) <= 1e-8


def test_select_response_honest_pennies(pennies):
    # Y(pennies) is the singleton (1/2, 1/2): both modes give outcome 0
    for mode in ("optimistic", "pessimistic"):
        r = select_response(pennies, pennies, vertex(0, 2, "row"), mode)
        assert np.allclose(r.y.probs, [0.5, 0.5], atol=1e-8)
        assert abs(outcome(pennies, vertex(0, 2, "row"), r.y)) <= 1e-8


def test_select_response_tie_breaking():
    # constant perceived game: every y is rational, so the two modes span
    # the full range of the true payoffs
    true = MatrixGame(np.array([[0.0, 1.0]]))
    gp = MatrixGame(np.array([[2.0, 2.0]]))
    x = vertex(0, 1, "row")
    opt = select_response(true, gp, x, "optimistic")
    pes = select_response(true, gp, x, "pessimistic")
    assert abs(outcome(true, x, opt.y) - 0.0) <= 1e-8
    assert abs(outcome(true, x, pes.y) - 1.0) <= 1e-8


def test_mode_ordering_random():
    rng = np.random.default_rng(606)
    for trial in range(10):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(1, 5))
        G = rng.uniform(-1.0, 1.0, size=(m, n))
        Gp = G + rng.uniform(-0.5, 0.5, size=(m, n))
        true = MatrixGame(G)
        gp = MatrixGame(Gp)
        x = MixedStrategy(rng.dirichlet(np.ones(m)), "row")
        o = outcome(true, x, select_response(true, gp, x, "optimistic").y)
        p = outcome(true, x, select_response(true, gp, x, "pessimistic").y)
        assert o <= p + 1e-8, f"trial {trial}"


def test_select_response_rejects_bad_mode(pennies):
    with pytest.raises(MalformedProblem):
        select_response(pennies, pennies, vertex(0, 2, "row"), "hopeful")


def test_is_rational_response():
    gp = MatrixGame(np.array([[1.4, -0.6], [-1.0, 1.0]]))
    assert is_rational_response(gp, MixedStrategy(np.array([0.4, 0.6]),
                                                  "column"))
    assert not is_rational_response(gp, vertex(0, 2, "column"))
    # a strategy eps away from optimal passes at a loose tolerance only
    y = MixedStrategy(np.array([0.4 + 1e-4, 0.6 - 1e-4]), "column")
    assert not is_rational_response(gp, y, tol=1e-7)
    assert is_rational_response(gp, y, tol=1e-2)


def test_robust_victim_value():
    gp = MatrixGame(np.array([[1.4, -0.6], [-1.0, 1.0]]))
    vp = solve_game(gp).value
    for budget in (0.0, 0.4, 2.0):
        assert abs(robust_victim_value(gp, budget) - (vp - budget)) <= 1e-12


def test_hedged_payoff_grid_identity():
    """Discretized equivalence: the hedged row player's best reply value
    equals min_i (G'y)_i - budget for any y, already at grid resolution
    because the minimizer is a pure row and vertices are grid points."""
    rng = np.random.default_rng(2299)
    for trial in range(5):
        m = int(rng.integers(2, 5))
        n = int(rng.integers(2, 5))
        Gp = rng.uniform(-2.0, 2.0, size=(m, n))
        budget = float(rng.uniform(0.0, 2.0))
        gp = MatrixGame(Gp)
        y = solve_game(gp).col_policy.probs
        xs = simplex_grid(m, 0.05)
        hedged = xs @ (Gp @ y) - budget * xs.max(axis=1)
        closed = np.min(Gp @ y) - budget
        assert abs(hedged.min() - closed) <= 1e-9, f"trial {trial}"
