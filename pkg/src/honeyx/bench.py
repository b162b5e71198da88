"""Random instances, deception evaluation, and the experiment sweeps.

Games are sampled with a splitmix64 stream (entries uniform on [0,1),
row-major fill), so identical (m, n, seed) give bit-identical matrices on
any platform. Instance k of a sweep uses seed (base_seed + k) mod 2^64.

Each sweep emits one record per instance x parameter x method cell in
deterministic (instance, parameter, method) order; wall time covers the
solver call only and is the single non-reproducible column.
"""

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .binsearch import robustify, solve_feasible
from .deception import perturb
from .errors import HoneyxError, MalformedProblem
from .exact import solve_exact
from .games import MatrixGame, outcome, solve_game
from .victim import MODES, select_response

_MASK = (1 << 64) - 1
METHODS = ("exact", "binsearch", "binsearch_robust")


def _mix64(z):
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK
    z ^= z >> 31
    return z


def sample_game(m, n, seed):
    """m x n game with entries i.i.d. uniform on [0,1), splitmix64 stream."""
    if m < 1 or n < 1:
        raise MalformedProblem(f"game shape {m}x{n} must be positive")
    s = int(seed) & _MASK
    vals = np.empty(m * n)
    for k in range(m * n):
        s = (s + 0x9E3779B97F4A7C15) & _MASK
        vals[k] = (_mix64(s) >> 11) * 2.0 ** -53
    return MatrixGame(vals.reshape(m, n))


def evaluate_deception(game, x, dec, mode="optimistic"):
    """(outcome, improvement) for playing (x, D) against a rational victim.

    The victim sees G + D, responds per the mode, and the payment is scored
    on the true G; improvement is the honest value minus that payment.
    """
    if mode not in MODES:
        raise MalformedProblem(f"mode must be one of {MODES}, got {mode!r}")
    gp = perturb(game, dec)
    resp = select_response(game, gp, x, mode)
    out = outcome(game, x, resp.y)
    v_g = solve_game(game).value
    return out, v_g - out


@dataclass
class ExperimentConfig:
    m: int = 5
    n: int = 5
    samples: int = 20
    seed: int = 1
    budgets: tuple = (0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0)
    deltas: tuple = (1e-3,)
    methods: tuple = METHODS
    sizes: tuple = (2, 3, 4, 5)
    gap_tol: float = 1e-6
    node_limit: int = 10 ** 6
    time_limit: float = 600.0

    def validate(self):
        if self.m < 1 or self.n < 1 or self.samples < 1:
            raise MalformedProblem("m, n and samples must be >= 1")
        if not self.budgets or any(b < 0 for b in self.budgets):
            raise MalformedProblem("budgets must be nonempty and >= 0")
        if not self.deltas or any(d <= 0 for d in self.deltas):
            raise MalformedProblem("deltas must be nonempty and > 0")
        for meth in self.methods:
            if meth not in METHODS:
                raise MalformedProblem(f"unknown method {meth!r}")
        if not self.methods:
            raise MalformedProblem("methods must be nonempty")
        if any(s < 1 for s in self.sizes):
            raise MalformedProblem("sizes must be >= 1")


@dataclass
class BenchRecord:
    seed: int
    instance: int
    m: int
    n: int
    budget: float
    delta: float
    method: str
    honest_value: float
    outcome: float  # None when the cell failed
    improvement: float
    wall_time_ms: float
    status: str


_warmed = False


def _warm_up():
    """One small untimed solve so allocator/import effects stay out of the
    first timed cell."""
    global _warmed
    if not _warmed:
        solve_exact(MatrixGame(np.array([[0.0, 1.0], [1.0, 0.0]])), 0.0)
        _warmed = True


def _run_cell(game, method, budget, delta, cfg):
    """Returns (outcome, improvement, wall_ms, status) for one cell."""
    v_g = solve_game(game).value
    try:
        if method == "exact":
            t0 = time.perf_counter()
            sol = solve_exact(game, budget, cfg.gap_tol, cfg.node_limit,
                              cfg.time_limit)
            ms = (time.perf_counter() - t0) * 1e3
            out, _ = evaluate_deception(game, sol.x, sol.D, "optimistic")
            status = sol.status.value
        elif method == "binsearch":
            t0 = time.perf_counter()
            sol = solve_feasible(game, budget, delta)
            ms = (time.perf_counter() - t0) * 1e3
            out, _ = evaluate_deception(game, sol.x_bar, sol.D_bar,
                                        "optimistic")
            status = "ok"
        else:  # binsearch_robust
            t0 = time.perf_counter()
            sol = solve_feasible(game, budget, delta)
            out = robustify(game, sol)
            ms = (time.perf_counter() - t0) * 1e3
            status = "ok"
    except HoneyxError as exc:
        return v_g, None, None, None, f"error:{type(exc).__name__}"
    return v_g, out, v_g - out, ms, status


def _workers():
    raw = os.environ.get("HONEYX_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_cells(cells, cfg):
    """cells: list of (instance, m, n, budget, delta, method, game)."""
    _warm_up()
    nw = _workers()

    def work(cell):
        inst, m, n, budget, delta, method, game = cell
        v_g, out, imp, ms, status = _run_cell(game, method, budget, delta, cfg)
        return BenchRecord(cfg.seed, inst, m, n, budget, delta, method,
                           v_g, out, imp, ms, status)

    if nw == 1:
        return [work(c) for c in cells]
    with ThreadPoolExecutor(max_workers=nw) as pool:
        return list(pool.map(work, cells))


def _instance_game(m, n, cfg, k):
    return sample_game(m, n, (cfg.seed + k) & _MASK)


def sweep_budget(cfg):
    """Improvement vs budget at fixed size (the budget-sweep protocol)."""
    cfg.validate()
    delta = cfg.deltas[0]
    cells = []
    for k in range(cfg.samples):
        game = _instance_game(cfg.m, cfg.n, cfg, k)
        for budget in cfg.budgets:
            for method in cfg.methods:
                cells.append((k, cfg.m, cfg.n, budget, delta, method, game))
    return _run_cells(cells, cfg)


def sweep_size(cfg):
    """Runtime vs square size at fixed budget (the size-sweep protocol)."""
    cfg.validate()
    budget = cfg.budgets[0]
    delta = cfg.deltas[0]
    cells = []
    for k in range(cfg.samples):
        for size in cfg.sizes:
            game = _instance_game(size, size, cfg, k)
            for method in cfg.methods:
                cells.append((k, size, size, budget, delta, method, game))
    return _run_cells(cells, cfg)


def sweep_tolerance(cfg):
    """Improvement vs search tolerance at fixed budget and size."""
    cfg.validate()
    budget = cfg.budgets[0]
    cells = []
    for k in range(cfg.samples):
        game = _instance_game(cfg.m, cfg.n, cfg, k)
        for delta in cfg.deltas:
            for method in cfg.methods:
                cells.append((k, cfg.m, cfg.n, budget, delta, method, game))
    return _run_cells(cells, cfg)


CSV_HEADER = ("seed,instance,m,n,budget,delta,method,honest_value,outcome,"
              "improvement,wall_time_ms,status")
SUMMARY_HEADER = "param,method,mean_improvement,std_improvement,mean_time_ms"


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def records_to_csv(records):
    lines = [CSV_HEADER]
    for r in records:
        ms = "" if r.wall_time_ms is None else format(r.wall_time_ms, ".3f")
        lines.append(",".join([
            str(r.seed), str(r.instance), str(r.m), str(r.n),
            _fmt(float(r.budget)), _fmt(float(r.delta)), r.method,
            _fmt(r.honest_value), _fmt(r.outcome), _fmt(r.improvement),
            ms, r.status,
        ]))
    return "\n".join(lines) + "\n"


def summarize(records, param_attr):
    """Per (parameter, method) mean/std improvement and mean wall time.

    param_attr names the swept BenchRecord field ('budget', 'm' or 'delta');
    failed cells are left out of the statistics.
    """
    order = []
    groups = {}
    for r in records:
        key = (getattr(r, param_attr), r.method)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(r)
    rows = []
    for key in order:
        good = [r for r in groups[key] if r.improvement is not None]
        imps = np.array([r.improvement for r in good])
        times = np.array([r.wall_time_ms for r in good])
        mean = float(imps.mean()) if imps.size else None
        std = float(imps.std(ddof=1)) if imps.size > 1 else 0.0
        mt = float(times.mean()) if times.size else None
        rows.append((key[0], key[1], mean, std, mt))
    return rows


def summary_to_csv(rows):
    lines = [SUMMARY_HEADER]
    for param, method, mean, std, mt in rows:
        lines.append(",".join([
            _fmt(float(param)) if isinstance(param, float) else str(param),
            method, _fmt(mean), _fmt(std),
            "" if mt is None else format(mt, ".3f"),
        ]))
    return "\n".join(lines) + "\n"
