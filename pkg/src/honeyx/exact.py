"""Global deception solver: spatial branch-and-bound on a bilinear program.

The deceiver's problem (commit to a row mix x and an admissible D, victim
responds rationally to G + D, tie-break optimistic) collapses by strong
duality of the victim's LP into a single-level program over (x, D, y, omega,
v_p) with the bilinear blocks (G+D)y >= v_p 1 and (G+D)^T omega <= v_p 1.
Since the objective x^T G y is linear in x, some vertex e_i is optimal, so we
root one subtree per row vertex and run a single best-bound search over all
of them, sharing the incumbent.

The search lifts the products D_ij*y_j and D_ij*omega_i into auxiliary
variables bounded by McCormick envelopes over per-node interval boxes, bounds
nodes with the LP kernel, branches on the most violated product, and rounds
every relaxation into a feasible incumbent (clip D to the budget, resolve the
perturbed game, take the optimistic response).
"""

import heapq
import time
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .deception import DeceptionMatrix
from .errors import InvalidInterval, MalformedProblem, SolverFailure
from .games import MatrixGame, MixedStrategy, outcome, solve_game, vertex
from .lp import LpProblem, LpStatus, solve_lp
from .victim import select_response

DEFAULT_GAP_TOL = 1e-6
DEFAULT_NODE_LIMIT = 10 ** 6
DEFAULT_TIME_LIMIT = 600.0

_VIOL_TOL = 1e-8  # products closer than this to exact are not branched on
_SPLIT_MIN = 1e-9  # never split an interval narrower than this


class ExactStatus(Enum):
    PROVEN = "Proven"        # final gap <= gap_tol
    GAP_LIMIT = "GapLimit"   # search exhausted, gap stuck above gap_tol
    NODE_LIMIT = "NodeLimit"
    TIME_LIMIT = "TimeLimit"


@dataclass
class ExactSolution:
    x: MixedStrategy
    D: DeceptionMatrix
    y: MixedStrategy
    omega: MixedStrategy
    v_p: float
    objective: float
    gap: float
    nodes_explored: int
    status: ExactStatus


@dataclass
class BnbNode:
    """Interval boxes for (D, y, omega), the node's proven bound, and the
    cached relaxation point used for branching and rounding."""

    d_lo: np.ndarray
    d_hi: np.ndarray
    y_lo: np.ndarray
    y_hi: np.ndarray
    w_lo: np.ndarray
    w_hi: np.ndarray
    bound: float
    depth: int
    d_val: np.ndarray = None
    y_val: np.ndarray = None
    w_val: np.ndarray = None
    py_val: np.ndarray = None
    pw_val: np.ndarray = None


def mccormick_envelope(a_lo, a_hi, b_lo, b_hi):
    """Four envelope inequalities for w = a*b on [a_lo,a_hi] x [b_lo,b_hi].

    Each row (ca, cb, cw, rhs) means ca*a + cb*b + cw*w <= rhs. Two rows
    underestimate (w >= ...), two overestimate; when either interval is a
    point the pairs coincide and force w = a*b.
    """
    for v in (a_lo, a_hi, b_lo, b_hi):
        if not np.isfinite(v):
            raise InvalidInterval(f"interval endpoint {v} is not finite")
    if a_lo > a_hi or b_lo > b_hi:
        raise InvalidInterval(
            f"empty interval: a=[{a_lo},{a_hi}] b=[{b_lo},{b_hi}]")
    return [
        (b_lo, a_lo, -1.0, a_lo * b_lo),
        (b_hi, a_hi, -1.0, a_hi * b_hi),
        (-b_lo, -a_hi, 1.0, -a_hi * b_lo),
        (-b_hi, -a_lo, 1.0, -a_lo * b_hi),
    ]


def _solve_node(G, i, budget, vp_lo, vp_hi, anchor, node, feas_tol, opt_tol):
    """Solve the node's relaxation; fill its cache; return its objective or
    None when the box is infeasible.

    Besides the McCormick envelopes for wY = D_rj y_j and wW = D_rj w_r,
    the relaxation is strengthened with two families of valid cuts:

    * budget-times-y: lift t >= |D| with products q = t y and require
      sum_r q_rj <= budget * y_j and |wY| <= q. Without these the LP can
      spend more perturbation mass per column than any admissible D.
    * honest anchor: on the true feasible set v_p equals the perturbed
      game value, which the honest security policies (xh, yh) bracket by
      v_G - sum_rj yh_j t_rj <= v_p <= v_G + sum_rj xh_r t_rj. These pull
      v_p back toward v_G as the t boxes shrink; the omega-side envelopes
      alone let v_p sink far below any attainable perturbed value.
    """
    vg, xh, yh = anchor
    m, n = G.shape
    mn = m * n
    # variable layout: y | omega | v_p | D | t | wY | wW | q
    off_o = n
    off_v = n + m
    off_d = off_v + 1
    off_t = off_d + mn
    off_py = off_t + mn
    off_pw = off_py + mn
    off_q = off_pw + mn
    nv = off_q + mn

    d_lo = node.d_lo.ravel()
    d_hi = node.d_hi.ravel()
    t_lo = np.maximum(0.0, np.maximum(d_lo, -d_hi))
    t_hi = np.maximum(np.abs(d_lo), np.abs(d_hi))

    ar = np.arange(mn)
    kmat = ar.reshape(m, n)
    jidx = ar % n          # column of product k
    ridx = ar // n         # row of product k
    y_lo = node.y_lo
    y_hi = node.y_hi
    w_lo = node.w_lo
    w_hi = node.w_hi

    # row bases; every block is <=
    b_rat = 0                 # m: -(Gy)_r - sum_j wY_rj + v_p <= 0
    b_dual = b_rat + m        # n: (G^T w)_j + sum_r wW_rj - v_p <= 0
    b_abs_p = b_dual + n      # mn: D - t <= 0
    b_abs_m = b_abs_p + mn    # mn: -D - t <= 0
    b_bud = b_abs_m + mn      # n: sum_r t_rj <= budget
    b_env_y = b_bud + n       # 4*mn: envelopes for wY over D box x y box
    b_env_w = b_env_y + 4 * mn
    b_env_q = b_env_w + 4 * mn
    b_cmp_p = b_env_q + 4 * mn  # mn: wY - q <= 0
    b_cmp_m = b_cmp_p + mn      # mn: -wY - q <= 0
    b_rlt = b_cmp_m + mn        # n: sum_r q_rj - budget*y_j <= 0
    b_anc = b_rlt + n           # 2: anchor bracket on v_p
    nr = b_anc + 2

    A = np.zeros((nr, nv))
    b = np.zeros(nr)

    rows_m = np.arange(m)
    rows_n = np.arange(n)
    A[b_rat:b_rat + m, :n] = -G
    A[rows_m[:, None], off_py + kmat] = -1.0
    A[b_rat:b_rat + m, off_v] = 1.0
    A[b_dual:b_dual + n, off_o:off_o + m] = G.T
    A[b_dual + rows_n[:, None], off_pw + kmat.T] = 1.0
    A[b_dual:b_dual + n, off_v] = -1.0
    A[b_abs_p + ar, off_d + ar] = 1.0
    A[b_abs_p + ar, off_t + ar] = -1.0
    A[b_abs_m + ar, off_d + ar] = -1.0
    A[b_abs_m + ar, off_t + ar] = -1.0
    A[b_bud + rows_n[:, None], off_t + kmat.T] = 1.0
    b[b_bud:b_bud + n] = budget
    A[b_cmp_p + ar, off_py + ar] = 1.0
    A[b_cmp_p + ar, off_q + ar] = -1.0
    A[b_cmp_m + ar, off_py + ar] = -1.0
    A[b_cmp_m + ar, off_q + ar] = -1.0
    A[b_rlt + rows_n[:, None], off_q + kmat.T] = 1.0
    A[b_rlt + rows_n, rows_n] = -budget
    A[b_anc, off_t:off_t + mn] = -np.tile(yh, m)
    A[b_anc, off_v] = -1.0
    b[b_anc] = -vg
    A[b_anc + 1, off_t:off_t + mn] = -np.repeat(xh, n)
    A[b_anc + 1, off_v] = 1.0
    b[b_anc + 1] = vg

    def envelope_block(base, a_col, w_col, aL, aU, bL, bU, b_col):
        # same four rows as mccormick_envelope, one vectorized group each
        for g, (ca, cb, cw, rhs) in enumerate((
                (bL, aL, -1.0, aL * bL),
                (bU, aU, -1.0, aU * bU),
                (-bL, -aU, 1.0, -aU * bL),
                (-bU, -aL, 1.0, -aL * bU))):
            rr = base + g * mn + ar
            A[rr, a_col] = ca
            A[rr, b_col] = cb
            A[rr, w_col] = cw
            b[rr] = rhs

    envelope_block(b_env_y, off_d + ar, off_py + ar,
                   d_lo, d_hi, y_lo[jidx], y_hi[jidx], jidx)
    envelope_block(b_env_w, off_d + ar, off_pw + ar,
                   d_lo, d_hi, w_lo[ridx], w_hi[ridx], off_o + ridx)
    envelope_block(b_env_q, off_t + ar, off_q + ar,
                   t_lo, t_hi, y_lo[jidx], y_hi[jidx], jidx)

    lower = np.zeros(nv)
    upper = np.full(nv, np.inf)
    lower[:n] = y_lo
    upper[:n] = np.where(y_hi < 1.0, y_hi, np.inf)
    lower[off_o:off_o + m] = w_lo
    upper[off_o:off_o + m] = np.where(w_hi < 1.0, w_hi, np.inf)
    lower[off_v] = vp_lo
    upper[off_v] = vp_hi
    lower[off_d:off_d + mn] = d_lo
    upper[off_d:off_d + mn] = d_hi
    lower[off_t:off_t + mn] = t_lo
    upper[off_t:off_t + mn] = t_hi
    yl, yh = y_lo[jidx], y_hi[jidx]
    wl, wh = w_lo[ridx], w_hi[ridx]
    lower[off_py:off_py + mn] = np.minimum.reduce(
        [d_lo * yl, d_lo * yh, d_hi * yl, d_hi * yh])
    lower[off_pw:off_pw + mn] = np.minimum.reduce(
        [d_lo * wl, d_lo * wh, d_hi * wl, d_hi * wh])
    lower[off_q:off_q + mn] = np.minimum.reduce(
        [t_lo * yl, t_lo * yh, t_hi * yl, t_hi * yh])

    cost = np.zeros(nv)
    cost[:n] = G[i, :]
    a_eq = np.zeros((2, nv))
    a_eq[0, :n] = 1.0
    a_eq[1, off_o:off_o + m] = 1.0
    sol = solve_lp(LpProblem(cost, A, b, a_eq, np.ones(2), lower, upper),
                   feas_tol, opt_tol, validate=False)
    if sol.status is LpStatus.INFEASIBLE:
        return None
    if sol.status is not LpStatus.OPTIMAL:
        raise MalformedProblem(
            f"node relaxation ended with status {sol.status.value}")
    node.y_val = sol.x[:n].copy()
    node.w_val = sol.x[off_o:off_o + m].copy()
    node.d_val = sol.x[off_d:off_d + mn].reshape(m, n).copy()
    node.py_val = sol.x[off_py:off_py + mn].copy()
    node.pw_val = sol.x[off_pw:off_pw + mn].copy()
    return float(sol.objective)


def _clip_to_budget(D, budget):
    sums = np.abs(D).sum(axis=0)
    scale = np.where(sums > budget, np.divide(
        budget, sums, out=np.ones_like(sums), where=sums > 0.0), 1.0)
    return D * scale[None, :]


def solve_exact(game, budget, gap_tol=DEFAULT_GAP_TOL,
                node_limit=DEFAULT_NODE_LIMIT, time_limit=DEFAULT_TIME_LIMIT,
                feas_tol=1e-9, opt_tol=1e-9):
    """Best deception against an optimistic rational victim, with a proof.

    Roots one subtree per deceiver row vertex, then runs a single
    best-bound-first loop over the merged frontier, so the reported gap
    always reflects the worst open node regardless of which subtree it
    lives in. Node counts are the number of relaxations solved; stopping
    on the node cap is deterministic, stopping on the time cap is not
    (rerun determinism holds as long as the time cap never binds).
    """
    if budget < 0.0:
        raise MalformedProblem(f"budget must be >= 0, got {budget}")
    if gap_tol <= 0.0 or node_limit < 1:
        raise MalformedProblem("gap_tol must be > 0 and node_limit >= 1")
    G = game.payoffs
    m, n = G.shape
    vp_lo = float(G.min()) - budget
    vp_hi = float(G.max()) + budget
    t0 = time.perf_counter()
    gs0 = solve_game(game, feas_tol, opt_tol)
    anchor = (gs0.value, gs0.row_policy.probs, gs0.col_policy.probs)

    best = None  # (objective, x_idx, D_round, y, omega, v_p)
    nodes = 0
    status = ExactStatus.PROVEN

    def try_incumbent(i, d_val):
        nonlocal best
        D = _clip_to_budget(d_val, budget)
        gp = MatrixGame(G + D)
        gs = solve_game(gp, feas_tol, opt_tol)
        resp = select_response(game, gp, vertex(i, m, "row"))
        obj = outcome(game, vertex(i, m, "row"), resp.y)
        if best is None or obj < best[0]:
            best = (obj, i, D, resp.y, gs.row_policy, gs.value)

    def branch_choice(node):
        prod_y = np.abs(node.py_val -
                        node.d_val.ravel() * np.tile(node.y_val, m))
        w_rep = np.repeat(node.w_val, n)
        prod_w = np.abs(node.pw_val - node.d_val.ravel() * w_rep)
        viol = np.concatenate([prod_y, prod_w])
        k = int(np.argmax(viol))
        if viol[k] <= _VIOL_TOL:
            return None
        kind = "y" if k < m * n else "w"
        flat = k if k < m * n else k - m * n
        r, j = divmod(flat, n)
        wa = node.d_hi.ravel()[flat] - node.d_lo.ravel()[flat]
        va = float(node.d_val.ravel()[flat])
        if kind == "y":
            wb = node.y_hi[j] - node.y_lo[j]
            fcol = j
            vb = float(node.y_val[j])
        else:
            wb = node.w_hi[r] - node.w_lo[r]
            fcol = r
            vb = float(node.w_val[r])
        # Split the factor that is wider RELATIVE to its root box (D spans
        # 2*budget, the strategy factors span 1); ties go to the D factor,
        # since D couples both bilinear blocks and the budget rows. Absolute
        # widths would starve the D side and stall the bound. Fall back to
        # the other factor when the preferred one is already a point.
        wa_rel = wa / (2.0 * budget) if budget > 0.0 else 0.0
        if wb > wa_rel:
            order = ((kind, fcol, wb, vb), ("d", flat, wa, va))
        else:
            order = (("d", flat, wa, va), (kind, fcol, wb, vb))
        for which, idx, width, val in order:
            if width > _SPLIT_MIN:
                return which, idx, val
        return None

    def make_children(node, target):
        kids = []
        for half in (0, 1):
            kid = BnbNode(node.d_lo.copy(), node.d_hi.copy(),
                          node.y_lo.copy(), node.y_hi.copy(),
                          node.w_lo.copy(), node.w_hi.copy(),
                          node.bound, node.depth + 1)
            which, idx, val = target
            if which == "d":
                lo = kid.d_lo.ravel()
                hi = kid.d_hi.ravel()
            elif which == "y":
                lo, hi = kid.y_lo, kid.y_hi
            else:
                lo, hi = kid.w_lo, kid.w_hi
            # Split at the relaxation value, pulled at least 20% of the
            # width away from either edge. At the split point the envelope
            # is exact in both children, so the current violation cannot
            # survive; a pure midpoint split can leave it intact for many
            # levels when the LP solution hugs one edge of the box.
            width = hi[idx] - lo[idx]
            cut = min(max(val, lo[idx] + 0.2 * width), hi[idx] - 0.2 * width)
            if half == 0:
                hi[idx] = cut
            else:
                lo[idx] = cut
            kids.append(kid)
        return kids

    if budget == 0.0:
        # the D box is a single point, so the victim sees the true game and
        # the whole search collapses to one response LP per row vertex
        for i in range(m):
            try_incumbent(i, np.zeros((m, n)))
            nodes += 1
        obj_best, i_best, D_best, y_best, omega_best, vp_best = best
        return ExactSolution(
            x=vertex(i_best, m, "row"), D=DeceptionMatrix(D_best, budget),
            y=y_best, omega=omega_best, v_p=vp_best, objective=obj_best,
            gap=0.0, nodes_explored=nodes, status=ExactStatus.PROVEN)

    heap = []
    counter = 0
    prune_floor = np.inf
    unrooted = 0
    for i in range(m):
        if nodes >= node_limit:
            unrooted += 1
            continue
        root = BnbNode(np.full((m, n), -budget), np.full((m, n), budget),
                       np.zeros(n), np.ones(n),
                       np.zeros(m), np.ones(m), -np.inf, 0)
        obj = _solve_node(G, i, budget, vp_lo, vp_hi, anchor, root,
                          feas_tol, opt_tol)
        nodes += 1
        if obj is None:
            continue
        root.bound = obj
        try_incumbent(i, root.d_val)
        heapq.heappush(heap, (root.bound, counter, i, root))
        counter += 1

    while heap:
        if nodes >= node_limit:
            status = ExactStatus.NODE_LIMIT
            break
        if time_limit is not None and time.perf_counter() - t0 > time_limit:
            status = ExactStatus.TIME_LIMIT
            break
        bound, _, i, node = heapq.heappop(heap)
        if bound >= best[0] - gap_tol:
            # best-bound order: every remaining node is at least this good
            prune_floor = min(prune_floor, bound)
            heap = []
            break
        target = branch_choice(node)
        if target is None:
            prune_floor = min(prune_floor, bound)
            continue
        for kid in make_children(node, target):
            cobj = _solve_node(G, i, budget, vp_lo, vp_hi, anchor, kid,
                               feas_tol, opt_tol)
            nodes += 1
            if cobj is None:
                continue
            kid.bound = max(cobj, bound)
            if kid.bound >= best[0] - gap_tol:
                # no point rounding a box that is about to be discarded
                prune_floor = min(prune_floor, kid.bound)
                continue
            try_incumbent(i, kid.d_val)
            if kid.bound >= best[0] - gap_tol:
                prune_floor = min(prune_floor, kid.bound)
            else:
                heapq.heappush(heap, (kid.bound, counter, i, kid))
                counter += 1

    if best is None:
        raise SolverFailure("no feasible incumbent found; kernel breakdown")
    obj_best, i_best, D_best, y_best, omega_best, vp_best = best
    lb_candidates = [prune_floor]
    if heap:
        lb_candidates.append(min(entry[0] for entry in heap))
    if unrooted:
        lb_candidates.append(float(G.min()))
    lb = min(lb_candidates)
    gap = 0.0 if lb == np.inf else max(0.0, obj_best - lb)
    if gap <= gap_tol:
        status = ExactStatus.PROVEN
    elif status is ExactStatus.PROVEN:
        # exhausted the tree without a cap, yet slack fathoming (the product
        # violation tolerance) left the bound short of the incumbent
        status = ExactStatus.GAP_LIMIT
    return ExactSolution(
        x=vertex(i_best, m, "row"),
        D=DeceptionMatrix(D_best, budget),
        y=y_best,
        omega=omega_best,
        v_p=vp_best,
        objective=obj_best,
        gap=gap,
        nodes_explored=nodes,
        status=status,
    )
