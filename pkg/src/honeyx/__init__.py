"""Honey-X: payoff-matrix deception strategies for zero-sum games.

A deceiver announces a perturbed payoff matrix G + D, keeping the
perturbation's operator 1-norm within a stealth budget, and exploits the
victim's rational response to the announcement. The package computes game
values and security policies, globally optimal deceptions (spatial
branch-and-bound), fast feasible deceptions (binary search on the inducible
value), worst-case robustification bounds, and the experiment sweeps that
compare them.
"""

from . import errors
from .bench import (BenchRecord, ExperimentConfig, evaluate_deception,
                    sample_game, sweep_budget, sweep_size, sweep_tolerance)
from .binsearch import (FeasibleSolution, bisection_count, robustify,
                        solve_feasible, subrational_lp)
from .deception import (DeceptionMatrix, SubrationalCertificate,
                        check_inducible, dual_norm_max, max_inducible_value,
                        operator_one_norm, perturb)
from .exact import (BnbNode, ExactSolution, ExactStatus, mccormick_envelope,
                    solve_exact)
from .games import (GameSolution, MatrixGame, MixedStrategy, load_game,
                    outcome, solve_game, vertex)
from .lp import (KERNEL_BACKEND, LpProblem, LpSolution, LpStatus, solve_lp)
from .victim import (VictimResponse, is_rational_response,
                     robust_victim_value, select_response)

__version__ = "0.1.0"

__all__ = [
    "BenchRecord", "BnbNode", "DeceptionMatrix", "ExactSolution",
    "ExactStatus", "ExperimentConfig", "FeasibleSolution", "GameSolution",
    "KERNEL_BACKEND", "LpProblem", "LpSolution", "LpStatus", "MatrixGame",
    "MixedStrategy", "SubrationalCertificate", "VictimResponse",
    "bisection_count", "check_inducible", "dual_norm_max", "errors",
    "evaluate_deception", "is_rational_response", "load_game",
    "max_inducible_value", "mccormick_envelope", "operator_one_norm",
    "outcome", "perturb", "robust_victim_value", "robustify", "sample_game",
    "select_response", "solve_exact", "solve_feasible", "solve_game",
    "solve_lp", "subrational_lp", "sweep_budget", "sweep_size",
    "sweep_tolerance", "vertex",
]
