"""Deterministic JSON emission and the solution file codecs.

The standard json module emits floats via repr (shortest round-trip form);
output files here instead pin every float to 17 significant digits, which is
also round-trip exact for IEEE doubles but keeps byte output independent of
any future repr changes. Parsing accepts ordinary JSON.
"""

import json

import numpy as np

from .errors import MalformedProblem


def _emit(obj, parts):
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, (int, np.integer)):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not np.isfinite(v):
            raise MalformedProblem(f"cannot serialize non-finite number {v}")
        parts.append(format(v, ".17g"))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, dict):
        parts.append("{")
        for k, (key, val) in enumerate(obj.items()):
            if not isinstance(key, str):
                raise MalformedProblem(f"JSON object key {key!r} is not a string")
            if k:
                parts.append(",")
            parts.append(json.dumps(key))
            parts.append(":")
            _emit(val, parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for k, val in enumerate(obj):
            if k:
                parts.append(",")
            _emit(val, parts)
        parts.append("]")
    elif isinstance(obj, np.ndarray):
        _emit(obj.tolist(), parts)
    else:
        raise MalformedProblem(f"cannot serialize value of type {type(obj)}")


def dumps(obj):
    parts = []
    _emit(obj, parts)
    return "".join(parts)


def write_json(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
        fh.write("\n")


def float_list(arr):
    return [float(v) for v in np.asarray(arr).ravel()]


def float_matrix(arr):
    return [[float(v) for v in row] for row in np.asarray(arr)]


def exact_solution_dict(sol, budget):
    return {
        "schema": 1,
        "method": "exact",
        "budget": float(budget),
        "x": float_list(sol.x.probs),
        "D": float_matrix(sol.D.D),
        "y": float_list(sol.y.probs),
        "omega": float_list(sol.omega.probs),
        "v_p": float(sol.v_p),
        "objective": float(sol.objective),
        "gap": float(sol.gap),
        "nodes": int(sol.nodes_explored),
        "status": sol.status.value,
    }


def feasible_solution_dict(sol, budget):
    return {
        "schema": 1,
        "method": "binsearch",
        "budget": float(budget),
        "x": float_list(sol.x_bar.probs),
        "D": float_matrix(sol.D_bar.D),
        "y": float_list(sol.y_bar.probs),
        "v_hat": float(sol.v_hat),
        "v_best": float(sol.v_best),
        "delta": float(sol.delta),
        "robust_bound": (None if sol.robust_bound is None
                         else float(sol.robust_bound)),
    }


def deception_dict(dec):
    return {"schema": 1, "budget": float(dec.budget),
            "D": float_matrix(dec.D)}


def load_solution(path):
    """Parse a solution file into (x, D, budget, raw dict).

    Accepts either solver's schema; budget falls back to the operator
    1-norm of D when the field is absent.
    """
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedProblem(f"invalid solution JSON: {exc}") from exc
    if not isinstance(obj, dict) or "D" not in obj or "x" not in obj:
        raise MalformedProblem("solution JSON must contain 'x' and 'D'")
    x = np.asarray(obj["x"], dtype=float)
    D = np.asarray(obj["D"], dtype=float)
    budget = obj.get("budget")
    return x, D, budget, obj
