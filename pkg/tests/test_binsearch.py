"""Bisection on the inducible level plus the per-row follow-up LPs.

The search itself is cheap to audit: the probe count has a closed form,
the final level must sit within delta of the direct LP optimum, and the
assembled column-constant perturbation must make the victim's rational
value land in [v_hat, v_hat + delta].
"""

import numpy as np
import pytest

from honeyx.binsearch import (bisection_count, robustify, solve_feasible,
                              subrational_lp)
from honeyx.deception import check_inducible, max_inducible_value
from honeyx.errors import InfeasibleLevel
from honeyx.games import MatrixGame, outcome, solve_game
from honeyx.victim import select_response

from oracles import scipy_game_value


def test_bisection_count_closed_form(pennies):
    # range 2 + 2*0.4 = 2.8 over delta 1e-3: ceil(log2(2800)) = 12
    assert bisection_count(pennies, 0.4, 1e-3) == 12
    assert bisection_count(pennies, 0.4, 1.0) == 2
    # degenerate single-cell game with no budget: nothing to search
    assert bisection_count(MatrixGame(np.array([[5.0]])), 0.0, 1e-3) == 0


def test_subrational_lp_pennies(pennies):
    d, y, obj = subrational_lp(pennies, 0.4, 0.2, 0)
    assert abs(obj + 0.2) <= 1e-8
    assert np.allclose(y.probs, [0.4, 0.6], atol=1e-6)
    assert np.abs(d).sum() <= 0.4 + 1e-9
    assert np.all(pennies.payoffs @ y.probs + d >= 0.2 - 1e-8)


def test_subrational_lp_vacuous_level(pennies):
    # at the bottom of the bracket the level constraint binds nothing, so
    # each row's LP just reaches that row's smallest entry
    v = float(pennies.payoffs.min()) - 0.4
    for i in range(2):
        _, _, obj = subrational_lp(pennies, 0.4, v, i)
        assert abs(obj - pennies.payoffs[i].min()) <= 1e-8


def test_subrational_lp_zero_budget_at_value(pennies):
    _, _, obj = subrational_lp(pennies, 0.0, 0.0, 0)
    assert abs(obj) <= 1e-8


def test_subrational_lp_infeasible_level(pennies):
    with pytest.raises(InfeasibleLevel):
        subrational_lp(pennies, 0.4, 0.5, 0)


def test_solve_feasible_pennies(pennies):
    sol = solve_feasible(pennies, 0.4, 1e-3)
    assert 0.199 <= sol.v_hat <= 0.2
    assert abs(sol.v_best + 0.2) <= 2e-3
    # symmetric rows tie; the lowest index wins deterministically
    assert np.array_equal(sol.x_bar.probs, [1.0, 0.0])
    assert sol.probes == 12
    cols = sol.D_bar.D
    assert np.allclose(cols, cols[:, :1])  # column-constant by construction


def test_solve_feasible_zero_budget():
    rng = np.random.default_rng(321)
    for trial in range(5):
        G = rng.uniform(-1.0, 1.0, size=(4, 4))
        game = MatrixGame(G)
        sol = solve_feasible(game, 0.0, 1e-3)
        L = float(np.abs(G).sum(axis=1).max())
        v = solve_game(game).value
        assert abs(sol.v_best - v) <= 1e-3 * L + 1e-9, f"trial {trial}"
        assert np.allclose(sol.D_bar.D, 0.0)


def test_solve_feasible_single_cell():
    game = MatrixGame(np.array([[2.5]]))
    for budget in (0.0, 0.7):
        sol = solve_feasible(game, budget, 1e-3)
        assert abs(sol.v_best - 2.5) <= 1e-9
        assert sol.y_bar.probs[0] == 1.0
        assert abs(sol.D_bar.D[0, 0] - budget) <= 1e-3 + 1e-9


def test_feasible_solution_invariants():
    rng = np.random.default_rng(99)
    delta = 1e-3
    for trial in range(8):
        m = int(rng.integers(2, 6))
        n = int(rng.integers(2, 6))
        G = rng.uniform(-1.0, 1.0, size=(m, n))
        game = MatrixGame(G)
        budget = float(rng.uniform(0.0, 2.0))
        sol = solve_feasible(game, budget, delta)
        tag = f"trial {trial}"
        d = sol.D_bar.D[:, 0]
        assert np.abs(d).sum() <= budget + 1e-9, tag
        assert np.all(G @ sol.y_bar.probs + d >= sol.v_hat - 1e-8), tag

        # bracket: v_hat inducible, v_hat + delta not
        assert check_inducible(game, budget, sol.v_hat)[0], tag
        assert not check_inducible(game, budget,
                                   sol.v_hat + delta + 1e-6)[0], tag

        # against the direct LP optimum
        v_star, _ = max_inducible_value(game, budget)
        assert abs(sol.v_hat - v_star) <= delta + 1e-6, tag

        # the victim's actual value of the perturbed game sits in the
        # bracket (independent oracle)
        vp, _ = scipy_game_value(G + sol.D_bar.D)
        assert -1e-6 <= vp - sol.v_hat <= delta + 1e-6, tag

        assert sol.probes == bisection_count(game, budget, delta), tag


def test_gap_shrinks_with_delta():
    rng = np.random.default_rng(4242)
    for trial in range(3):
        G = rng.uniform(-1.0, 1.0, size=(5, 5))
        game = MatrixGame(G)
        for delta in (1e-1, 1e-2, 1e-3, 1e-4):
            sol = solve_feasible(game, 3.0, delta)
            vp, _ = scipy_game_value(G + sol.D_bar.D)
            assert -1e-6 <= vp - sol.v_hat <= delta + 1e-6, \
                f"trial {trial} delta {delta}"


def test_robustify_pennies(pennies):
    sol = solve_feasible(pennies, 0.4, 1e-3)
    rb = robustify(pennies, sol)
    assert sol.robust_bound == rb
    # nearly singleton victim set: the worst case sits a hair above -0.2
    assert -0.2 - 1e-9 <= rb <= -0.2 + 1e-2


def test_robustify_upper_bounds_optimistic_outcome():
    rng = np.random.default_rng(777)
    for trial in range(6):
        G = rng.uniform(-1.0, 1.0, size=(4, 4))
        game = MatrixGame(G)
        sol = solve_feasible(game, float(rng.uniform(0.2, 2.0)), 1e-3)
        rb = robustify(game, sol)
        gp = MatrixGame(G + sol.D_bar.D)
        resp = select_response(game, gp, sol.x_bar, "optimistic")
        opt = outcome(game, sol.x_bar, resp.y)
        assert rb >= opt - 1e-8, f"trial {trial}"
