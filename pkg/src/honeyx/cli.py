"""Command line interface: solve, deceive, eval, bench.

Exit codes: 0 success, 2 malformed input or invalid flags, 3 numerical
solver failure. Structured results are JSON with a "schema": 1 marker and
floats at 17 significant digits; sweeps write the CSV schema from bench.
"""

import argparse
import sys

from . import serialize, svg
from .bench import (ExperimentConfig, records_to_csv, summarize,
                    summary_to_csv, sweep_budget, sweep_size, sweep_tolerance,
                    evaluate_deception)
from .binsearch import robustify, solve_feasible
from .deception import DeceptionMatrix, operator_one_norm
from .errors import HoneyxError, SolverFailure
from .exact import solve_exact
from .games import MixedStrategy, load_game, solve_game
from .serialize import (dumps, exact_solution_dict, feasible_solution_dict,
                        float_list, load_solution)


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, out_path):
    _emit(dumps(obj) + "\n", out_path)


def cmd_solve(args):
    game = load_game(args.game)
    gs = solve_game(game)
    _emit_json({
        "schema": 1,
        "value": float(gs.value),
        "row_policy": float_list(gs.row_policy.probs),
        "col_policy": float_list(gs.col_policy.probs),
    }, args.out)
    return 0


def cmd_deceive(args):
    game = load_game(args.game)
    if args.method == "exact":
        if args.robustify:
            raise argparse.ArgumentTypeError(
                "--robustify applies to --method binsearch only")
        sol = solve_exact(game, args.budget, args.gap_tol, args.node_limit,
                          args.time_limit)
        obj = exact_solution_dict(sol, args.budget)
    else:
        sol = solve_feasible(game, args.budget, args.tol)
        if args.robustify:
            robustify(game, sol)
        obj = feasible_solution_dict(sol, args.budget)
    _emit_json(obj, args.out)
    return 0


def cmd_eval(args):
    game = load_game(args.game)
    x, D, budget, _raw = load_solution(args.solution)
    if budget is None:
        budget = operator_one_norm(D)
    dec = DeceptionMatrix(D, float(budget))
    xs = MixedStrategy(x, "row")
    out, imp = evaluate_deception(game, xs, dec, args.mode)
    _emit_json({
        "schema": 1,
        "mode": args.mode,
        "outcome": float(out),
        "improvement": float(imp),
    }, args.out)
    return 0


def _bench_chart(which, rows, methods):
    series = []
    for method in methods:
        mine = [r for r in rows if r[1] == method and r[2] is not None]
        if not mine:
            continue
        if which == "size":
            series.append({
                "label": method,
                "xs": [float(r[0]) for r in mine],
                "ys": [max(float(r[4]), 1e-3) for r in mine],
            })
        else:
            series.append({
                "label": method,
                "xs": [float(r[0]) for r in mine],
                "ys": [float(r[2]) for r in mine],
                "stds": [float(r[3]) for r in mine],
            })
    if which == "budget":
        return svg.line_chart(series, "improvement vs budget", "budget",
                              "mean improvement")
    if which == "size":
        return svg.line_chart(series, "solve time vs size", "m = n",
                              "mean wall time (ms)", logy=True)
    return svg.line_chart(series, "improvement vs tolerance",
                          "search tolerance", "mean improvement", logx=True)


def cmd_bench(args):
    cfg = ExperimentConfig(
        m=args.m, n=args.n, samples=args.samples, seed=args.seed,
        budgets=tuple(args.budgets), deltas=tuple(args.deltas),
        methods=tuple(args.methods), sizes=tuple(args.sizes),
        gap_tol=args.gap_tol, node_limit=args.node_limit,
        time_limit=args.time_limit)
    if args.which == "budget":
        records = sweep_budget(cfg)
        param = "budget"
    elif args.which == "size":
        records = sweep_size(cfg)
        param = "m"
    else:
        records = sweep_tolerance(cfg)
        param = "delta"
    rows = summarize(records, param)

    if args.format == "json":
        payload = {
            "schema": 1,
            "records": [{
                "seed": r.seed, "instance": r.instance, "m": r.m, "n": r.n,
                "budget": float(r.budget), "delta": float(r.delta),
                "method": r.method, "honest_value": r.honest_value,
                "outcome": r.outcome, "improvement": r.improvement,
                "wall_time_ms": r.wall_time_ms, "status": r.status,
            } for r in records],
        }
        _emit_json(payload, args.out)
    else:
        _emit(records_to_csv(records), args.out)
        if args.out:
            stem = args.out[:-4] if args.out.endswith(".csv") else args.out
            with open(stem + "_summary.csv", "w", encoding="utf-8") as fh:
                fh.write(summary_to_csv(rows))
    if args.svg:
        target = args.svg if isinstance(args.svg, str) else None
        if target is None:
            if not args.out:
                raise argparse.ArgumentTypeError(
                    "--svg without a path needs --out to anchor the name")
            stem = args.out[:-4] if args.out.endswith(".csv") else args.out
            target = stem + ".svg"
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(_bench_chart(args.which, rows, cfg.methods))
    return 0


def _float_list_arg(raw):
    try:
        return [float(tok) for tok in raw.split(",") if tok != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number list {raw!r}") from exc


def _int_list_arg(raw):
    try:
        return [int(tok) for tok in raw.split(",") if tok != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {raw!r}") from exc


def _methods_arg(raw):
    return [tok for tok in raw.split(",") if tok != ""]


def build_parser():
    p = argparse.ArgumentParser(
        prog="honeyx",
        description="Payoff-matrix deception for zero-sum games: game "
                    "values, optimal and fast feasible deceptions, and "
                    "experiment sweeps.")
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="value and security policies of a game")
    ps.add_argument("game", help="game JSON file")
    ps.add_argument("--out", default=None)
    ps.set_defaults(func=cmd_solve)

    pd = sub.add_parser("deceive", help="compute a deception strategy")
    pd.add_argument("game")
    pd.add_argument("--method", choices=("exact", "binsearch"),
                    default="binsearch")
    pd.add_argument("--budget", type=float, required=True)
    pd.add_argument("--tol", type=float, default=1e-3,
                    help="binary search tolerance (binsearch only)")
    pd.add_argument("--robustify", action="store_true",
                    help="also report the worst-case bound")
    pd.add_argument("--gap-tol", type=float, default=1e-6)
    pd.add_argument("--node-limit", type=int, default=10 ** 6)
    pd.add_argument("--time-limit", type=float, default=600.0)
    pd.add_argument("--out", default=None)
    pd.set_defaults(func=cmd_deceive)

    pe = sub.add_parser("eval", help="score a solution file against a game")
    pe.add_argument("game")
    pe.add_argument("solution")
    pe.add_argument("--mode", choices=("optimistic", "pessimistic"),
                    default="optimistic")
    pe.add_argument("--out", default=None)
    pe.set_defaults(func=cmd_eval)

    pb = sub.add_parser("bench", help="run an experiment sweep")
    pb.add_argument("which", choices=("budget", "size", "tol"))
    pb.add_argument("--m", type=int, default=5)
    pb.add_argument("--n", type=int, default=5)
    pb.add_argument("--samples", type=int, default=20)
    pb.add_argument("--seed", type=int, default=1)
    pb.add_argument("--budgets", type=_float_list_arg,
                    default=[0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0])
    pb.add_argument("--deltas", type=_float_list_arg, default=[1e-3])
    pb.add_argument("--methods", type=_methods_arg,
                    default=["exact", "binsearch", "binsearch_robust"])
    pb.add_argument("--sizes", type=_int_list_arg, default=[2, 3, 4, 5])
    pb.add_argument("--gap-tol", type=float, default=1e-6)
    pb.add_argument("--node-limit", type=int, default=10 ** 6)
    pb.add_argument("--time-limit", type=float, default=600.0)
    pb.add_argument("--format", choices=("csv", "json"), default="csv")
    pb.add_argument("--svg", nargs="?", const=True, default=None,
                    help="also write a chart (optional path)")
    pb.add_argument("--out", default=None)
    pb.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SolverFailure as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 3
    except (HoneyxError, argparse.ArgumentTypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
