"""Center point sets and center persistence diagrams.

Point-set level: exact solvers for two sets in each selection mode, and the
color-1 approximation for any number of sets (every cluster is centred on its
color-1 member, clusters come from optimal pairwise matchings against set 1;
its value is at most twice optimal by the triangle inequality).

Diagram level: every diagram is augmented with the diagonal projections of
all the others, a point-set algorithm runs on the augmented sets under
L-infinity with the diagonal-zero rule, and diagonal centers are dropped.
"""
from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .core import ATOL, LINF, AugmentedSet, Diagram, Metric, as_point_set, cost_matrix, validate_diagram
from .distances import augment, bottleneck_distance, wasserstein_distance
from .matching import FlowNetwork, bottleneck_assignment, min_cost_assignment


class SelectionMode(enum.Enum):
    NO_REPLACEMENT = "no-replacement"
    WITH_REPLACEMENT = "replacement"
    CONTINUOUS = "continuous"


@dataclass(frozen=True)
class Objective:
    kind: str = "bottleneck"
    p: float | None = None

    def __post_init__(self):
        if self.kind not in ("bottleneck", "wasserstein"):
            raise ValueError(f"unknown objective {self.kind!r}")
        if self.kind == "wasserstein" and (self.p is None or not math.isfinite(self.p) or self.p < 1):
            raise ValueError("Wasserstein objective needs a finite p >= 1")

    @classmethod
    def bottleneck(cls) -> Objective:
        return cls("bottleneck")

    @classmethod
    def wasserstein(cls, p: float) -> Objective:
        return cls("wasserstein", float(p))

    @property
    def is_bottleneck(self) -> bool:
        return self.kind == "bottleneck"

    def __str__(self) -> str:
        return self.kind if self.is_bottleneck else f"wasserstein(p={self.p:g})"


BOTTLENECK = Objective.bottleneck()


@dataclass
class CenterSolution:
    """A center for ``m`` equal-size point sets.

    ``clusters[j, i]`` is the index in set ``i`` (0-based color) of the point
    covered by center ``j``; column ``i`` is therefore the matching from the
    centers to set ``i``.
    """

    centers: np.ndarray
    center_diag: np.ndarray
    clusters: np.ndarray
    objective_value: float
    mode: SelectionMode
    objective: Objective = BOTTLENECK

    @property
    def per_set_matchings(self) -> list[np.ndarray]:
        return [self.clusters[:, i].copy() for i in range(self.clusters.shape[1])]

    @property
    def center_set(self) -> AugmentedSet:
        return AugmentedSet(self.centers, self.center_diag, 0)


@dataclass
class DiagramCenter:
    """Center persistence diagram plus the augmented-set solution behind it."""

    center: Diagram
    objective_value: float
    mode: SelectionMode
    objective: Objective
    solution: CenterSolution | None = None
    augmented: list[AugmentedSet] = field(default_factory=list)


def _point_sets(sets, require_nonempty: bool = True) -> list[AugmentedSet]:
    out = []
    for i, s in enumerate(sets, start=1):
        s = as_point_set(s, i)
        out.append(AugmentedSet(s.pts, s.diag, i))
    if len(out) < 2:
        raise ValueError("need at least two point sets")
    sizes = {len(s) for s in out}
    if len(sizes) != 1:
        raise ValueError(f"size mismatch: set sizes {[len(s) for s in out]}")
    if require_nonempty and sizes == {0}:
        raise ValueError("empty input")
    return out


def _union(sets: Sequence[AugmentedSet]) -> AugmentedSet:
    return AugmentedSet(np.concatenate([s.pts for s in sets]), np.concatenate([s.diag for s in sets]), 0)


def set_distance(q: AugmentedSet, s: AugmentedSet, metric: Metric, objective: Objective) -> float:
    """Matching distance between equal-size point sets under ``objective``."""
    c = cost_matrix(q, s, metric)
    if objective.is_bottleneck:
        return bottleneck_assignment(c).bottleneck_cost
    if c.size == 0:
        return 0.0
    return min_cost_assignment(c**objective.p).total_cost ** (1.0 / objective.p)


# ---------------------------------------------------------------- two sets


def no_replacement_network(d_in: np.ndarray, d_out: np.ndarray, radius: float) -> FlowNetwork:
    """Four-layer unit network deciding the two-set no-replacement problem.

    ``d_in[u, w]`` is the cost from point ``u`` of the first set to candidate
    ``w``; ``d_out[w, v]`` from candidate ``w`` to point ``v`` of the second
    set.  Node order: source, first set, candidates (in), candidates (out),
    second set, sink.  The single arc between the two copies of a candidate
    lets it serve as a center once.
    """
    n, k = d_in.shape
    s, first, c_in, c_out, second = 0, 1, 1 + n, 1 + n + k, 1 + n + 2 * k
    t = second + n
    u, w = np.nonzero(d_in <= radius)
    w2, v = np.nonzero(d_out <= radius)
    tails = np.concatenate([np.full(n, s), first + u, c_in + np.arange(k), c_out + w2, second + np.arange(n)])
    heads = np.concatenate([first + np.arange(n), c_in + w, c_out + np.arange(k), second + v, np.full(n, t)])
    arcs = np.column_stack([tails, heads]).astype(np.int64)
    return FlowNetwork(t + 1, arcs, s, t)


def _run_network(net: FlowNetwork) -> tuple[int, np.ndarray]:
    arcs = np.asarray(net.arcs, np.int64)
    value, flow = kernels.dinic_unit(net.node_count, np.ascontiguousarray(arcs[:, 0]),
                                     np.ascontiguousarray(arcs[:, 1]), net.source, net.sink)
    return int(value), arcs[flow.astype(bool)]


def center2_no_replacement(p1, p2, metric: Metric = LINF) -> CenterSolution:
    """Exact two-set center, centers drawn from the multiset p1 + p2 without reuse.

    Bisects the sorted candidate radii (costs between the union and itself)
    and accepts a radius when the four-layer network carries ``n`` units.
    """
    a, b = _point_sets([p1, p2])
    n = len(a)
    cand_set = _union([a, b])
    d_in = cost_matrix(a, cand_set, metric)
    d_out = cost_matrix(cand_set, b, metric)
    radii = np.unique(np.concatenate([d_in.ravel(), d_out.ravel()]))

    lo, hi = -1, len(radii) - 1
    best = None
    while hi - lo > 1:
        mid = (lo + hi) // 2
        value, used = _run_network(no_replacement_network(d_in, d_out, radii[mid]))
        if value == n:
            hi, best = mid, used
        else:
            lo = mid
    if best is None:
        best = _run_network(no_replacement_network(d_in, d_out, radii[hi]))[1]

    k = len(cand_set)
    c_in, c_out, second = 1 + n, 1 + n + k, 1 + n + 2 * k
    center_of = np.empty(n, np.int64)
    target_of = np.empty(k, np.int64)
    for x, y in best:
        if 1 <= x < c_in and c_in <= y < c_out:
            center_of[x - 1] = y - c_in
        elif c_out <= x < second and second <= y < second + n:
            target_of[x - c_out] = y - second
    clusters = np.column_stack([np.arange(n), target_of[center_of]])
    value = max(d_in[np.arange(n), center_of].max(), d_out[center_of, clusters[:, 1]].max())
    return CenterSolution(cand_set.pts[center_of].copy(), cand_set.diag[center_of].copy(), clusters,
                          float(value), SelectionMode.NO_REPLACEMENT)


def _lex_order(s: AugmentedSet) -> np.ndarray:
    return np.lexsort((s.diag, s.pts[:, 1], s.pts[:, 0]))


def pair_cover(a: AugmentedSet, b: AugmentedSet, cands: AugmentedSet, metric: Metric) -> tuple[np.ndarray, np.ndarray]:
    """For each pair (u in a, v in b): the best single candidate covering both.

    Returns ``(radius, witness)`` with ``radius[u, v] = min_w max(d(w,u), d(w,v))``;
    ties go to the lexicographically smallest witness.
    """
    order = _lex_order(cands)
    d_a = cost_matrix(cands, a, metric)[order]
    d_b = cost_matrix(cands, b, metric)[order]
    radius = np.empty((len(a), len(b)))
    witness = np.empty((len(a), len(b)), np.int64)
    step = max(1, 2_000_000 // max(1, d_a.shape[0] * len(b)))
    for start in range(0, len(a), step):
        block = np.maximum(d_a[:, start:start + step, None], d_b[:, None, :])
        arg = block.argmin(axis=0)
        witness[start:start + step] = order[arg]
        radius[start:start + step] = np.take_along_axis(block, arg[None], axis=0)[0]
    return radius, witness


def center2_with_replacement(p1, p2, metric: Metric = LINF) -> CenterSolution:
    """Exact two-set center with centers drawn from p1 + p2, reuse allowed.

    A pair is admissible at radius r when some input point is within r of
    both; the optimum is the bottleneck perfect matching over pair covers.
    """
    a, b = _point_sets([p1, p2])
    cand_set = _union([a, b])
    radius, witness = pair_cover(a, b, cand_set, metric)
    m = bottleneck_assignment(radius)
    n = len(a)
    w = witness[np.arange(n), m.pairs]
    clusters = np.column_stack([np.arange(n), m.pairs])
    return CenterSolution(cand_set.pts[w].copy(), cand_set.diag[w].copy(), clusters,
                          m.bottleneck_cost, SelectionMode.WITH_REPLACEMENT)


def center2_continuous(p1, p2, metric: Metric = LINF) -> CenterSolution:
    """Exact two-set continuous center: midpoints of a bottleneck matching."""
    a, b = _point_sets([p1, p2])
    m = bottleneck_assignment(cost_matrix(a, b, metric))
    centers = (a.pts + b.pts[m.pairs]) / 2.0
    clusters = np.column_stack([np.arange(len(a)), m.pairs])
    return CenterSolution(centers, a.diag & b.diag[m.pairs], clusters,
                          m.bottleneck_cost / 2.0, SelectionMode.CONTINUOUS)


# ---------------------------------------------------------------- m sets


def approx_center(sets, mode: SelectionMode = SelectionMode.NO_REPLACEMENT, metric: Metric = LINF,
                  objective: Objective = BOTTLENECK) -> CenterSolution:
    """Factor-2 center for m >= 2 equal-size sets, in any selection mode.

    Set 1 is matched optimally against every other set (bottleneck matchings,
    or min-sum matchings on powered costs for Wasserstein) and each color-1
    point becomes the center of its row.  The value is the largest of the
    m - 1 matching distances.
    """
    ps = _point_sets(sets)
    first = ps[0]
    n = len(first)
    cols = [np.arange(n)]
    values = []
    for other in ps[1:]:
        c = cost_matrix(first, other, metric)
        if objective.is_bottleneck:
            m = bottleneck_assignment(c)
            values.append(m.bottleneck_cost)
        else:
            m = min_cost_assignment(c**objective.p)
            values.append(m.total_cost ** (1.0 / objective.p))
        cols.append(m.pairs)
    return CenterSolution(first.pts.copy(), first.diag.copy(), np.column_stack(cols),
                          float(max(values)), SelectionMode(mode), objective)


# ---------------------------------------------------------------- diagrams


def _validated(diagrams) -> list[Diagram]:
    out = []
    for k, d in enumerate(diagrams, start=1):
        d = d if isinstance(d, Diagram) else Diagram(d)
        problems = validate_diagram(d)
        if problems:
            raise ValueError(f"diagram {k} invalid: " + "; ".join(problems))
        out.append(d)
    return out


def diagram_distance(a: Diagram, b: Diagram, objective: Objective) -> float:
    if objective.is_bottleneck:
        return bottleneck_distance(a, b)
    return wasserstein_distance(a, b, objective.p)


def lift_far_solution(raw: CenterSolution, augmented: list[AugmentedSet]) -> CenterSolution:
    """Embed a raw-set solution into the augmented sets.

    Original points lead every augmented set, so raw clusters keep their
    indices; the remaining diagonal members are grouped by position and
    centred on their color-1 member at cost zero.
    """
    n = raw.clusters.shape[0]
    total = len(augmented[0])
    extra = np.arange(n, total)
    clusters = np.vstack([raw.clusters, np.column_stack([extra] * len(augmented))])
    first = augmented[0]
    centers = np.vstack([raw.centers, first.pts[n:]])
    diag = np.concatenate([raw.center_diag, first.diag[n:]])
    return CenterSolution(centers, diag, clusters, raw.objective_value, raw.mode, raw.objective)


def center_diagrams(diagrams, mode: SelectionMode = SelectionMode.NO_REPLACEMENT,
                    objective: Objective = BOTTLENECK, algo: str = "approx",
                    limit: int | None = None) -> DiagramCenter:
    """Center persistence diagram of ``m >= 2`` diagrams.

    ``algo`` is ``"exact2"`` (m = 2, bottleneck only), ``"approx"`` or
    ``"brute"``.  The reported value is the exact largest diagram distance
    from the returned center to the inputs.
    """
    from .oracle import DEFAULT_LIMIT, brute_force_center

    mode = SelectionMode(mode)
    ds = _validated(diagrams)
    m = len(ds)
    if m < 2:
        raise ValueError("need at least two diagrams")
    if algo == "exact2":
        if m != 2:
            raise ValueError(f"exact2 needs exactly two diagrams, got {m}")
        if not objective.is_bottleneck:
            raise ValueError("exact2 supports the bottleneck objective only")
    elif algo not in ("approx", "brute"):
        raise ValueError(f"unknown algorithm {algo!r}")

    augmented = [augment(ds, i) for i in range(1, m + 1)]
    if len(augmented[0]) == 0:
        return DiagramCenter(Diagram(), 0.0, mode, objective, None, augmented)

    if algo == "exact2":
        solver = {
            SelectionMode.NO_REPLACEMENT: center2_no_replacement,
            SelectionMode.WITH_REPLACEMENT: center2_with_replacement,
            SelectionMode.CONTINUOUS: center2_continuous,
        }[mode]
        sol = solver(augmented[0], augmented[1], LINF)
    elif algo == "approx":
        sol = approx_center(augmented, mode, LINF, objective)
    else:
        sol = None
        sizes = {len(d) for d in ds}
        if len(sizes) == 1 and sizes != {0}:
            raw = brute_force_center([d.points for d in ds], mode, LINF, objective,
                                     limit=limit or DEFAULT_LIMIT)
            gap = min(float(np.min(d.points[:, 1] - d.points[:, 0])) for d in ds) / 2.0
            # a cluster mixing real and diagonal members costs at least gap / 2
            if raw.objective_value <= gap / 2.0:
                sol = lift_far_solution(raw, augmented)
        if sol is None:
            sol = brute_force_center(augmented, mode, LINF, objective, limit=limit or DEFAULT_LIMIT)

    keep = ~sol.center_diag
    center = Diagram(sol.centers[keep])
    value = max(diagram_distance(center, d, objective) for d in ds)
    return DiagramCenter(center, value, mode, objective, sol, augmented)


# ---------------------------------------------------------------- verification


@dataclass
class Evaluation:
    value: float
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _key(x: float, y: float, g: bool = False) -> tuple:
    return (float(x), float(y), bool(g))


def mode_violations(centers: AugmentedSet, pool: AugmentedSet, mode: SelectionMode) -> list[str]:
    """Check that ``centers`` could have been selected from ``pool`` under ``mode``."""
    mode = SelectionMode(mode)
    if mode is SelectionMode.CONTINUOUS:
        return []
    have = Counter(_key(x, y, g) for (x, y), g in zip(pool.pts, pool.diag))
    want = Counter(_key(x, y, g) for (x, y), g in zip(centers.pts, centers.diag))
    out = []
    for k, cnt in sorted(want.items()):
        if have[k] == 0:
            out.append(f"with_replacement_membership: center ({k[0]!r}, {k[1]!r}) is not an input point")
        elif mode is SelectionMode.NO_REPLACEMENT and cnt > have[k]:
            out.append(f"no_replacement_multiplicity: center ({k[0]!r}, {k[1]!r}) used {cnt} times, "
                       f"available {have[k]}")
    return out


def eval_center(solution, inputs, mode: SelectionMode | None = None, objective: Objective | None = None,
                metric: Metric = LINF) -> Evaluation:
    """Recompute a solution's objective from scratch and check its constraints.

    ``solution`` is a :class:`CenterSolution` over point sets, or a
    :class:`Diagram` / :class:`DiagramCenter` over diagrams.  For point sets
    the value is the largest optimal matching distance from the centers to
    each set (clusters are checked structurally, not trusted).
    """
    if isinstance(solution, (Diagram, DiagramCenter)):
        return _eval_diagram(solution, inputs, mode, objective)
    mode = SelectionMode(mode or solution.mode)
    objective = objective or solution.objective
    ps = _point_sets(inputs, require_nonempty=False)
    n, m = len(ps[0]), len(ps)
    violations = []
    q = solution.center_set
    if len(q) != n:
        violations.append(f"center_count: {len(q)} centers for sets of size {n}")
        return Evaluation(math.inf, violations)
    cl = np.asarray(solution.clusters)
    if cl.shape != (n, m):
        violations.append(f"cluster_shape: expected {(n, m)}, got {cl.shape}")
    else:
        for i in range(m):
            if sorted(cl[:, i].tolist()) != list(range(n)):
                violations.append(f"cluster_partition: color {i + 1} points not covered exactly once")
    violations += mode_violations(q, _union(ps), mode)
    value = max(set_distance(q, s, metric, objective) for s in ps) if n else 0.0
    return Evaluation(value, violations)


def _eval_diagram(solution, diagrams, mode, objective) -> Evaluation:
    if isinstance(solution, DiagramCenter):
        mode = mode or solution.mode
        objective = objective or solution.objective
        solution = solution.center
    mode = SelectionMode(mode or SelectionMode.CONTINUOUS)
    objective = objective or BOTTLENECK
    ds = _validated(diagrams)
    violations = [f"center_diagram: {p}" for p in validate_diagram(solution)]
    pool = AugmentedSet.raw(np.concatenate([d.points for d in ds]) if ds else np.zeros((0, 2)))
    violations += mode_violations(AugmentedSet.raw(solution.points), pool, mode)
    value = max(diagram_distance(solution, d, objective) for d in ds)
    return Evaluation(value, violations)


def within(value: float, radius: float) -> bool:
    return value <= radius + ATOL
