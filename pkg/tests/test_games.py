"""Game types, the value LP, and both security policies."""

import numpy as np
import pytest

from honeyx.errors import DimensionMismatch, MalformedProblem
from honeyx.games import (MatrixGame, MixedStrategy, game_from_dict,
                          game_to_dict, load_game, outcome, solve_game,
                          vertex)

from oracles import scipy_game_value


def test_known_2x2():
    # [[3,1],[0,2]]: no saddle point, mixed value 1.5
    g = MatrixGame(np.array([[3.0, 1.0], [0.0, 2.0]]))
    s = solve_game(g)
    assert abs(s.value - 1.5) <= 1e-9
    assert np.allclose(s.col_policy.probs, [0.25, 0.75], atol=1e-9)
    assert np.allclose(s.row_policy.probs, [0.5, 0.5], atol=1e-9)
    ref, _ = scipy_game_value(g.payoffs)
    assert abs(s.value - ref) <= 1e-9


def test_matching_pennies(pennies):
    s = solve_game(pennies)
    assert abs(s.value) <= 1e-9
    assert np.allclose(s.col_policy.probs, [0.5, 0.5], atol=1e-9)
    assert np.allclose(s.row_policy.probs, [0.5, 0.5], atol=1e-9)


def test_single_cell():
    s = solve_game(MatrixGame(np.array([[2.75]])))
    assert abs(s.value - 2.75) <= 1e-12
    assert s.col_policy.probs[0] == 1.0
    assert s.row_policy.probs[0] == 1.0


def test_saddle_point_game():
    # row 2 caps the column player at (1, 2) whatever y is, so the pure
    # saddle sits at (row 2, col 2) with value 2
    g = MatrixGame(np.array([[4.0, 5.0], [1.0, 2.0]]))
    s = solve_game(g)
    assert abs(s.value - 2.0) <= 1e-9
    assert np.allclose(s.col_policy.probs, [0.0, 1.0], atol=1e-9)


def test_shift_equivariance():
    rng = np.random.default_rng(9)
    G = rng.uniform(-1.0, 1.0, size=(4, 3))
    base = solve_game(MatrixGame(G))
    for shift in (-2.5, 0.75, 10.0):
        s = solve_game(MatrixGame(G + shift))
        assert abs(s.value - (base.value + shift)) <= 1e-8
        assert np.allclose(s.col_policy.probs, base.col_policy.probs,
                           atol=1e-8)
        assert np.allclose(s.row_policy.probs, base.row_policy.probs,
                           atol=1e-8)


def test_random_games_match_scipy_and_guarantee():
    rng = np.random.default_rng(2024)
    for trial in range(30):
        m = int(rng.integers(1, 7))
        n = int(rng.integers(1, 8))
        G = rng.uniform(-2.0, 2.0, size=(m, n))
        s = solve_game(MatrixGame(G))
        ref, _ = scipy_game_value(G)
        assert abs(s.value - ref) <= 1e-7, f"trial {trial}"
        y = s.col_policy.probs
        x = s.row_policy.probs
        # security: y guarantees at least v against every row, x caps the
        # payment at v against every column
        assert np.min(G @ y) >= s.value - 1e-8, f"trial {trial}"
        assert np.max(x @ G) <= s.value + 1e-8, f"trial {trial}"
        assert abs(y.sum() - 1.0) <= 1e-9 and np.all(y >= -1e-12)
        assert abs(x.sum() - 1.0) <= 1e-9 and np.all(x >= -1e-12)


def test_vertex_and_outcome():
    g = MatrixGame(np.array([[3.0, 1.0], [0.0, 2.0]]))
    e0 = vertex(0, 2, "row")
    assert np.array_equal(e0.probs, [1.0, 0.0])
    assert e0.side == "row"
    y = MixedStrategy(np.array([0.25, 0.75]), "column")
    assert abs(outcome(g, e0, y) - 1.5) <= 1e-12
    with pytest.raises(IndexError):
        vertex(5, 2, "row")


def test_outcome_bilinear():
    rng = np.random.default_rng(77)
    G = rng.uniform(-1.0, 1.0, size=(3, 4))
    g = MatrixGame(G)
    x = rng.dirichlet(np.ones(3))
    y = rng.dirichlet(np.ones(4))
    got = outcome(g, MixedStrategy(x, "row"), MixedStrategy(y, "column"))
    assert abs(got - x @ G @ y) <= 1e-12


@pytest.mark.parametrize("bad", [
    np.array([[np.nan]]),
    np.zeros((0, 2)),
    np.zeros(3),
    np.array([[np.inf, 1.0]]),
])
def test_matrix_game_rejects(bad):
    with pytest.raises(MalformedProblem):
        MatrixGame(bad)


@pytest.mark.parametrize("probs,side", [
    (np.array([0.5, 0.6]), "row"),
    (np.array([-0.1, 1.1]), "row"),
    (np.array([0.5, 0.5]), "diag"),
])
def test_mixed_strategy_rejects(probs, side):
    with pytest.raises(MalformedProblem):
        MixedStrategy(probs, side)


def test_outcome_shape_mismatch():
    g = MatrixGame(np.array([[1.0, 2.0]]))
    with pytest.raises(DimensionMismatch):
        outcome(g, vertex(0, 1, "row"), vertex(0, 1, "column"))


def test_dict_roundtrip_and_file(tmp_path):
    g = MatrixGame(np.array([[3.0, 1.0], [0.0, 2.0]]))
    d = game_to_dict(g)
    assert d["rows"] == 2 and d["cols"] == 2
    g2 = game_from_dict(d)
    assert np.array_equal(g2.payoffs, g.payoffs)

    path = tmp_path / "game.json"
    path.write_text(
        '{"rows": 2, "cols": 2, "payoffs": [[1.0, -1.0], [-1.0, 1.0]]}')
    loaded = load_game(str(path))
    assert np.array_equal(loaded.payoffs, [[1.0, -1.0], [-1.0, 1.0]])

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(MalformedProblem):
        load_game(str(bad))

    wrong = tmp_path / "wrong.json"
    wrong.write_text('{"rows": 3, "cols": 2, "payoffs": [[1.0, 2.0]]}')
    with pytest.raises(MalformedProblem):
        load_game(str(wrong))
