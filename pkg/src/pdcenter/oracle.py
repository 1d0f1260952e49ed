"""Exhaustive center solver for tiny instances.

Used only to certify the fast algorithms.  For the bottleneck objective it
enumerates every clustering (one point of each color per cluster):

* with replacement / continuous: each cluster independently takes its best
  center (best input point; midrange box center under L-infinity, smallest
  enclosing circle under L2);
* without replacement: clusters are assigned distinct centers from the input
  multiset by a bottleneck assignment.  Clusterings are visited in order of
  their with-replacement value, which bounds them from below, so the search
  stops as soon as no remaining clustering can win.

For Wasserstein objectives the discrete modes enumerate the candidate center
multisets directly; the continuous mode solves a convex program per clustering.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .center import (
    BOTTLENECK,
    CenterSolution,
    Objective,
    SelectionMode,
    _lex_order,
    _point_sets,
    _union,
)
from .core import LINF, AugmentedSet, Metric, cost_matrix
from .matching import bottleneck_assignment, min_cost_assignment

DEFAULT_LIMIT = 10**7


def count_clusterings(n: int, m: int) -> int:
    return math.factorial(n) ** (m - 1)


def iter_clusterings(n: int, m: int):
    """Yield every clustering as an (n, m) index array; row j holds color-1 point j."""
    base = np.arange(n)
    for perms in itertools.product(itertools.permutations(range(n)), repeat=m - 1):
        yield np.column_stack([base, *perms])


def min_enclosing_circle(points) -> tuple[np.ndarray, float]:
    """Smallest enclosing circle of a handful of points (exhaustive over pairs and triples)."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 1:
        return pts[0].copy(), 0.0

    def radius(c):
        return float(np.sqrt(((pts - c) ** 2).sum(axis=1)).max())

    best_c, best_r = None, math.inf
    for i, j in itertools.combinations(range(len(pts)), 2):
        c = (pts[i] + pts[j]) / 2.0
        r = radius(c)
        if r < best_r:
            best_c, best_r = c, r
    for i, j, k in itertools.combinations(range(len(pts)), 3):
        a, b, c = pts[i], pts[j], pts[k]
        d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
        if d == 0:
            continue
        sa, sb, sc = a @ a, b @ b, c @ c
        o = np.array([
            (sa * (b[1] - c[1]) + sb * (c[1] - a[1]) + sc * (a[1] - b[1])) / d,
            (sa * (c[0] - b[0]) + sb * (a[0] - c[0]) + sc * (b[0] - a[0])) / d,
        ])
        r = radius(o)
        if r < best_r:
            best_c, best_r = o, r
    return best_c, best_r


def _norm_arg(metric: Metric):
    if metric.kind == "LInf":
        return "inf"
    return 2 if metric.kind == "L2" else metric.p


def _continuous_center(members: AugmentedSet, metric: Metric) -> tuple[np.ndarray, bool, float]:
    """Optimal free center of one cluster: ``(center, on_diagonal, radius)``."""
    pts, diag = members.pts, members.diag
    if diag.all():
        return pts[0].copy(), True, 0.0
    options = []
    if metric.kind == "LInf":
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        options.append(((lo + hi) / 2.0, False))
        if diag.any():
            # a diagonal center reaches the diagonal members for free
            off = pts[~diag]
            t = (off.min() + off.max()) / 2.0
            options.append((np.array([t, t]), True))
    elif diag.any():
        raise ValueError("diagonal members are only supported under L-infinity")
    elif metric._effective == "L2":
        options.append((min_enclosing_circle(pts)[0], False))
    else:
        import cvxpy as cp

        q = cp.Variable(2)
        prob = cp.Problem(cp.Minimize(cp.max(cp.hstack([cp.norm(q - x, metric.p) for x in pts]))))
        prob.solve(solver=cp.CLARABEL)
        options.append((np.asarray(q.value, float), False))

    best = None
    for c, g in options:
        r = float(cost_matrix(AugmentedSet(c, [g]), members, metric).max())
        if best is None or r < best[2]:
            best = (c, g, r)
    return best


def _check_size(count: int, limit: int):
    if count > limit:
        raise ValueError(f"instance too large for the exhaustive oracle: {count} > {limit} cases")


def brute_force_center(sets, mode: SelectionMode = SelectionMode.NO_REPLACEMENT, metric: Metric = LINF,
                       objective: Objective = BOTTLENECK, limit: int = DEFAULT_LIMIT) -> CenterSolution:
    """Globally optimal center for tiny instances (see module docstring)."""
    mode = SelectionMode(mode)
    ps = _point_sets(sets)
    if objective.is_bottleneck:
        return _brute_bottleneck(ps, mode, metric, limit)
    if mode is SelectionMode.CONTINUOUS:
        return _brute_wasserstein_continuous(ps, metric, objective, limit)
    return _brute_wasserstein_discrete(ps, mode, metric, objective, limit)


def _cluster_table(n: int, m: int) -> np.ndarray:
    """All n**m cluster tuples; row r is the base-n expansion of r."""
    return np.array(list(itertools.product(range(n), repeat=m)), dtype=np.int64).reshape(-1, m)


def _cluster_ids(clusterings: np.ndarray, n: int) -> np.ndarray:
    m = clusterings.shape[-1]
    weights = n ** np.arange(m - 1, -1, -1)
    return clusterings @ weights


def _brute_bottleneck(ps, mode, metric, limit) -> CenterSolution:
    n, m = len(ps[0]), len(ps)
    _check_size(count_clusterings(n, m), limit)
    pool = _union(ps)
    offsets = np.arange(m) * n
    table = _cluster_table(n, m)
    members = table + offsets

    # best free-choice radius and center for every possible cluster
    if mode is SelectionMode.CONTINUOUS:
        radius = np.empty(len(table))
        centers = np.empty((len(table), 2))
        cdiag = np.empty(len(table), bool)
        for r, idx in enumerate(members):
            sub = AugmentedSet(pool.pts[idx], pool.diag[idx])
            centers[r], cdiag[r], radius[r] = _continuous_center(sub, metric)
    else:
        order = _lex_order(pool)
        d = cost_matrix(pool, pool, metric)[order]
        spread = d[:, members].max(axis=2)
        arg = spread.argmin(axis=0)
        radius = spread[arg, np.arange(len(table))]
        witness = order[arg]

    all_clusterings = np.stack(list(iter_clusterings(n, m)))
    ids = _cluster_ids(all_clusterings, n)
    values = radius[ids].max(axis=1)

    if mode is SelectionMode.NO_REPLACEMENT:
        d_full = cost_matrix(pool, pool, metric)
        best_val, best_k, best_pick = math.inf, -1, None
        for k in np.argsort(values, kind="stable"):
            if values[k] >= best_val:
                break
            cover = d_full[:, members[ids[k]]].max(axis=2).T
            assign = bottleneck_assignment(cover)
            if assign.bottleneck_cost < best_val:
                best_val, best_k, best_pick = assign.bottleneck_cost, k, assign.pairs
        clusters = all_clusterings[best_k]
        return CenterSolution(pool.pts[best_pick].copy(), pool.diag[best_pick].copy(), clusters,
                              float(best_val), mode)

    k = int(np.argmin(values))
    chosen = ids[k]
    if mode is SelectionMode.CONTINUOUS:
        c_pts, c_diag = centers[chosen].copy(), cdiag[chosen].copy()
    else:
        c_pts, c_diag = pool.pts[witness[chosen]].copy(), pool.diag[witness[chosen]].copy()
    return CenterSolution(c_pts, c_diag, all_clusterings[k], float(values[k]), mode)


def _matched_value(q: AugmentedSet, ps, metric, p) -> tuple[float, np.ndarray]:
    cols, worst = [], 0.0
    for s in ps:
        c = cost_matrix(q, s, metric) ** p
        a = min_cost_assignment(c)
        worst = max(worst, a.total_cost ** (1.0 / p))
        cols.append(a.pairs)
    return worst, np.column_stack(cols)


def _brute_wasserstein_discrete(ps, mode, metric, objective, limit) -> CenterSolution:
    n = len(ps[0])
    pool = _union(ps)
    keys = [(float(x), float(y), bool(g)) for (x, y), g in zip(pool.pts, pool.diag)]
    if mode is SelectionMode.NO_REPLACEMENT:
        _check_size(math.comb(len(pool), n), limit)
        combos = itertools.combinations(range(len(pool)), n)
    else:
        first_of = {}
        for i, k in enumerate(keys):
            first_of.setdefault(k, i)
        distinct = [first_of[k] for k in sorted(first_of)]
        _check_size(math.comb(len(distinct) + n - 1, n), limit)
        combos = itertools.combinations_with_replacement(distinct, n)

    seen = set()
    best = (math.inf, None, None)
    for combo in combos:
        key = tuple(sorted(keys[i] for i in combo))
        if key in seen:
            continue
        seen.add(key)
        idx = np.array(combo)
        q = AugmentedSet(pool.pts[idx], pool.diag[idx])
        val, clusters = _matched_value(q, ps, metric, objective.p)
        if val < best[0]:
            best = (val, idx, clusters)
    val, idx, clusters = best
    return CenterSolution(pool.pts[idx].copy(), pool.diag[idx].copy(), clusters, float(val), mode, objective)


def _brute_wasserstein_continuous(ps, metric, objective, limit) -> CenterSolution:
    import cvxpy as cp

    n, m = len(ps[0]), len(ps)
    if any(s.diag.any() for s in ps):
        raise ValueError("continuous Wasserstein oracle does not handle diagonal members")
    _check_size(count_clusterings(n, m), limit)
    p = objective.p
    best = (math.inf, None, None)
    for clustering in iter_clusterings(n, m):
        q = cp.Variable((n, 2))
        t = cp.Variable()
        cons = []
        for i, s in enumerate(ps):
            target = s.pts[clustering[:, i]]
            dist = cp.hstack([cp.norm(q[j] - target[j], _norm_arg(metric)) for j in range(n)])
            cons.append(cp.sum(dist if p == 1 else cp.power(dist, p)) <= t)
        cp.Problem(cp.Minimize(t), cons).solve(solver=cp.CLARABEL)
        centers = np.asarray(q.value, float)
        val, clusters = _matched_value(AugmentedSet.raw(centers), ps, metric, p)
        if val < best[0]:
            best = (val, centers, clusters)
    val, centers, clusters = best
    return CenterSolution(centers, np.zeros(n, bool), clusters, float(val), SelectionMode.CONTINUOUS, objective)


def clustering_value(sets, clustering, mode: SelectionMode, metric: Metric = LINF) -> float:
    """Optimal bottleneck radius once the clustering is fixed."""
    mode = SelectionMode(mode)
    ps = _point_sets(sets)
    n, m = len(ps[0]), len(ps)
    pool = _union(ps)
    idx = np.asarray(clustering) + np.arange(m) * n
    if mode is SelectionMode.CONTINUOUS:
        return max(_continuous_center(AugmentedSet(pool.pts[r], pool.diag[r]), metric)[2] for r in idx)
    cover = cost_matrix(pool, pool, metric)[:, idx].max(axis=2).T
    if mode is SelectionMode.WITH_REPLACEMENT:
        return float(cover.min(axis=1).max())
    return bottleneck_assignment(cover).bottleneck_cost


def is_feasible(sets, mode: SelectionMode, radius: float, metric: Metric = LINF,
                limit: int = DEFAULT_LIMIT) -> bool:
    """Whether some clustering can be covered within ``radius`` (bottleneck objective)."""
    ps = _point_sets(sets)
    n, m = len(ps[0]), len(ps)
    _check_size(count_clusterings(n, m), limit)
    return any(clustering_value(ps, c, mode, metric) <= radius for c in iter_clusterings(n, m))
