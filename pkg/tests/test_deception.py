"""Stealth norm, dual-norm witness, and the inducible-value machinery.

The sampling checks draw admissible perturbations by scaling random
matrices onto the budget ball, which covers the boundary where the dual
bound is tight.
"""

import numpy as np
import pytest

from honeyx.deception import (DeceptionMatrix, check_inducible, dual_norm_max,
                              max_inducible_value, operator_one_norm, perturb)
from honeyx.errors import BudgetViolation, DimensionMismatch, MalformedProblem
from honeyx.games import MatrixGame, MixedStrategy, vertex


def test_operator_one_norm_examples():
    assert operator_one_norm(np.array([[1.0, -2.0], [3.0, 0.0]])) == 4.0
    assert operator_one_norm(np.zeros((3, 2))) == 0.0
    assert operator_one_norm(np.array([[-0.25]])) == 0.25


def test_deception_matrix_admissibility():
    D = np.array([[0.5, 0.0], [-0.5, 1.0]])  # column sums 1.0 and 1.0
    DeceptionMatrix(D, 1.0)                   # boundary is admissible
    with pytest.raises(BudgetViolation):
        DeceptionMatrix(D, 0.999)
    with pytest.raises(MalformedProblem):
        DeceptionMatrix(np.array([[np.nan, 0.0]]), 1.0)
    with pytest.raises(MalformedProblem):
        DeceptionMatrix(D, -0.5)


def test_perturb(pennies):
    dec = DeceptionMatrix(np.array([[0.4, 0.4], [0.0, 0.0]]), 0.4)
    gp = perturb(pennies, dec)
    assert np.allclose(gp.payoffs, [[1.4, -0.6], [-1.0, 1.0]])
    with pytest.raises(DimensionMismatch):
        perturb(pennies, DeceptionMatrix(np.zeros((3, 2)), 1.0))


def _sample_admissible(rng, m, n, budget):
    """Random D with operator 1-norm exactly `frac` of the budget."""
    D = rng.uniform(-1.0, 1.0, size=(m, n))
    norm = operator_one_norm(D)
    frac = rng.uniform(0.0, 1.0)
    return D * (budget * frac / norm)


def test_dual_norm_witness_and_dominance():
    rng = np.random.default_rng(404)
    for trial in range(5):
        m = int(rng.integers(1, 6))
        n = int(rng.integers(1, 6))
        budget = float(rng.uniform(0.1, 3.0))
        x = MixedStrategy(rng.dirichlet(np.ones(m)), "row")
        y = MixedStrategy(rng.dirichlet(np.ones(n)), "column")
        value, witness = dual_norm_max(x, y, budget)
        assert abs(value - budget * x.probs.max()) <= 1e-12
        assert operator_one_norm(witness.D) <= budget + 1e-9
        assert abs(x.probs @ witness.D @ y.probs - value) <= 1e-9
        for _ in range(200):
            D = _sample_admissible(rng, m, n, budget)
            assert x.probs @ D @ y.probs <= value + 1e-9


def test_dual_norm_zero_budget():
    x = vertex(0, 3, "row")
    y = vertex(1, 2, "column")
    value, witness = dual_norm_max(x, y, 0.0)
    assert value == 0.0
    assert np.array_equal(witness.D, np.zeros((3, 2)))


def test_check_inducible_pennies(pennies):
    ok, cert = check_inducible(pennies, 0.4, 0.2)
    assert ok
    # certificate really does place the victim's guarantee at the level
    assert np.all(pennies.payoffs @ cert.y.probs + cert.d >= 0.2 - 1e-8)
    assert np.abs(cert.d).sum() <= 0.4 + 1e-9
    ok2, cert2 = check_inducible(pennies, 0.4, 0.201)
    assert not ok2 and cert2 is None


def test_inducible_brackets():
    rng = np.random.default_rng(88)
    for trial in range(8):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(1, 5))
        G = rng.uniform(-2.0, 2.0, size=(m, n))
        game = MatrixGame(G)
        budget = float(rng.uniform(0.0, 2.0))
        lo = float(G.min()) - budget
        hi = float(G.max()) + budget
        assert check_inducible(game, budget, lo)[0], f"trial {trial}"
        assert not check_inducible(game, budget, hi + 1e-6)[0], f"trial {trial}"


def test_max_inducible_value_examples(pennies):
    v, cert = max_inducible_value(pennies, 0.4)
    assert abs(v - 0.2) <= 1e-8
    assert np.allclose(cert.y.probs, [0.4, 0.6], atol=1e-8)

    g1 = MatrixGame(np.array([[1.75]]))
    for budget in (0.0, 0.5, 2.0):
        v1, cert1 = max_inducible_value(g1, budget)
        assert abs(v1 - (1.75 + budget)) <= 1e-9
        assert abs(cert1.d[0] - budget) <= 1e-9


def test_max_inducible_consistency_and_monotonicity():
    rng = np.random.default_rng(13)
    for trial in range(6):
        G = rng.uniform(-1.0, 1.0, size=(3, 4))
        game = MatrixGame(G)
        prev = -np.inf
        for budget in (0.0, 0.5, 1.0, 2.0):
            v, cert = max_inducible_value(game, budget)
            assert v >= prev - 1e-9, f"trial {trial}: not monotone in budget"
            prev = v
            assert check_inducible(game, budget, v - 1e-6)[0], f"trial {trial}"
            assert not check_inducible(game, budget, v + 1e-6)[0], \
                f"trial {trial}"
            # downward closure: any level below an inducible one is inducible
            assert check_inducible(game, budget, v - 0.3)[0], f"trial {trial}"
            # certificate feasibility at the optimum
            assert np.all(G @ cert.y.probs + cert.d >= v - 1e-8)
            assert np.abs(cert.d).sum() <= budget + 1e-8


def test_zero_budget_inducible_is_game_value(pennies):
    # with no budget the best inducible level is the honest game value
    v, _ = max_inducible_value(pennies, 0.0)
    assert abs(v - 0.0) <= 1e-9
