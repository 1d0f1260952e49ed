"""Bipartite matching, bottleneck and min-sum assignment, unit-capacity max flow."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .core import LINF, Metric, as_point_set, cost_matrix

# Engines refuse to build dense cost matrices beyond this many rows.
MAX_DENSE = 4096


@dataclass
class BipartiteGraph:
    left_size: int
    right_size: int
    adjacency: Sequence[Sequence[int]] = ()

    def __post_init__(self):
        adj = [sorted(set(int(v) for v in row)) for row in self.adjacency]
        adj += [[] for _ in range(self.left_size - len(adj))]
        if len(adj) != self.left_size:
            raise ValueError("adjacency has more rows than left vertices")
        for u, row in enumerate(adj):
            if row and (row[0] < 0 or row[-1] >= self.right_size):
                raise ValueError(f"left vertex {u} has an out-of-range neighbour")
        self.adjacency = adj

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        indptr = np.zeros(self.left_size + 1, np.int64)
        indptr[1:] = np.cumsum([len(r) for r in self.adjacency])
        indices = np.fromiter((v for r in self.adjacency for v in r), np.int64, int(indptr[-1]))
        return indptr, indices


@dataclass
class Matching:
    """``pairs[i]`` is the right index matched to left index ``i`` (-1 if none)."""

    pairs: np.ndarray
    bottleneck_cost: float | None = None
    total_cost: float | None = None

    @property
    def size(self) -> int:
        return int(np.count_nonzero(self.pairs >= 0))

    def as_dict(self) -> dict[int, int]:
        return {i: int(j) for i, j in enumerate(self.pairs) if j >= 0}


@dataclass
class FlowNetwork:
    node_count: int
    arcs: Sequence[tuple[int, int]]
    source: int
    sink: int

    def validate(self) -> list[str]:
        n = self.node_count
        problems = [f"{name} {end} is not a node"
                    for end, name in ((self.source, "source"), (self.sink, "sink")) if not 0 <= end < n]
        arcs = np.asarray(self.arcs, dtype=np.int64).reshape(-1, 2)
        for k in np.nonzero(((arcs < 0) | (arcs >= n)).any(axis=1))[0]:
            problems.append(f"arc {k} ({arcs[k, 0]}, {arcs[k, 1]}) references a missing node")
        for k in np.nonzero(arcs[:, 1] == self.source)[0]:
            problems.append(f"arc {k} enters the source")
        for k in np.nonzero(arcs[:, 0] == self.sink)[0]:
            problems.append(f"arc {k} leaves the sink")
        return problems


CostOracle = Callable[[int, int], float]


def max_cardinality_matching(g: BipartiteGraph) -> Matching:
    indptr, indices = g.csr()
    match_l = np.full(g.left_size, -1, np.int64)
    match_r = np.full(g.right_size, -1, np.int64)
    kernels.hopcroft_karp(g.left_size, g.right_size, indptr, indices, match_l, match_r)
    return Matching(match_l)


def _admissible(costs: np.ndarray, threshold: float) -> tuple[np.ndarray, np.ndarray]:
    mask = costs <= threshold
    indptr = np.zeros(costs.shape[0] + 1, np.int64)
    np.cumsum(mask.sum(axis=1), out=indptr[1:])
    return indptr, np.nonzero(mask)[1].astype(np.int64)


def perfect_at(costs: np.ndarray, threshold: float) -> bool:
    """Whether every row can be matched using only entries ``<= threshold``."""
    n, k = costs.shape
    indptr, indices = _admissible(costs, threshold)
    ml = np.full(n, -1, np.int64)
    mr = np.full(k, -1, np.int64)
    return kernels.hopcroft_karp(n, k, indptr, indices, ml, mr) == n


def bottleneck_assignment(costs: np.ndarray) -> Matching:
    """Match every row to a distinct column minimising the largest cost used.

    Works on rectangular matrices with at least as many columns as rows.  The
    search bisects over the sorted distinct entries, so the returned
    ``bottleneck_cost`` is always one of them.  Each infeasible probe's
    matching seeds the next probe, since it stays valid at higher thresholds.
    """
    costs = np.asarray(costs, dtype=float)
    n, k = costs.shape
    if n > k:
        raise ValueError("more rows than columns: no row-perfect matching exists")
    if n == 0:
        return Matching(np.zeros(0, np.int64), 0.0)

    cand = np.unique(costs)
    # every row (and, when square, every column) needs one admissible entry
    floor = costs.min(axis=1).max()
    if n == k:
        floor = max(floor, costs.min(axis=0).max())
    lo = int(np.searchsorted(cand, floor)) - 1
    hi = len(cand) - 1

    seed_l = np.full(n, -1, np.int64)
    seed_r = np.full(k, -1, np.int64)
    best = None
    while hi - lo > 1:
        mid = (lo + hi) // 2
        ml, mr = seed_l.copy(), seed_r.copy()
        indptr, indices = _admissible(costs, cand[mid])
        if kernels.hopcroft_karp(n, k, indptr, indices, ml, mr) == n:
            hi, best = mid, ml
        else:
            lo, seed_l, seed_r = mid, ml, mr
    if best is None:
        # the top candidate admits the complete graph
        indptr, indices = _admissible(costs, cand[hi])
        kernels.hopcroft_karp(n, k, indptr, indices, seed_l, seed_r)
        best = seed_l
    used = costs[np.arange(n), best]
    return Matching(best, float(used.max()))


def min_cost_assignment(costs: np.ndarray) -> Matching:
    costs = np.asarray(costs, dtype=float)
    n, k = costs.shape
    if n != k:
        raise ValueError(f"size mismatch: {n} x {k}")
    if n == 0:
        return Matching(np.zeros(0, np.int64), 0.0, 0.0)
    pairs = kernels.hungarian(np.ascontiguousarray(costs))
    used = costs[np.arange(n), pairs]
    return Matching(pairs, float(used.max()), math.fsum(used))


def _resolve(left, right, cost) -> np.ndarray:
    if isinstance(cost, np.ndarray):
        c = np.asarray(cost, dtype=float)
        if c.shape != (len(left), len(right)):
            raise ValueError("cost matrix shape does not match the point sequences")
        return c
    n, k = len(left), len(right)
    if n != k:
        raise ValueError(f"size mismatch: {n} left vs {k} right")
    if n > MAX_DENSE:
        raise ValueError(f"{n} points exceeds the dense engine limit of {MAX_DENSE}")
    if cost is None or isinstance(cost, Metric):
        return cost_matrix(as_point_set(left), as_point_set(right), cost or LINF)
    c = np.empty((n, k))
    for i in range(n):
        for j in range(k):
            c[i, j] = cost(i, j)
    return c


def bottleneck_perfect_matching(left, right, cost: Metric | CostOracle | np.ndarray | None = None) -> Matching:
    """Perfect matching between equal-size ``left`` and ``right`` minimising the max cost.

    ``cost`` is a :class:`Metric` (applied with the diagonal-zero rule to
    :class:`AugmentedSet` inputs), a callable ``(i, j) -> float``, or a
    precomputed matrix.  Defaults to L-infinity.
    """
    if len(left) != len(right):
        raise ValueError(f"size mismatch: {len(left)} left vs {len(right)} right")
    return bottleneck_assignment(_resolve(left, right, cost))


def min_cost_perfect_matching(left, right, cost: Metric | CostOracle | np.ndarray | None = None,
                              power: float = 1.0) -> Matching:
    """Exact min-sum perfect matching; edge costs are raised to ``power`` first.

    ``total_cost`` is the (compensated) sum of the powered costs.
    """
    if len(left) != len(right):
        raise ValueError(f"size mismatch: {len(left)} left vs {len(right)} right")
    c = _resolve(left, right, cost)
    return min_cost_assignment(c if power == 1 else c**power)


def max_flow_unit(net: FlowNetwork) -> tuple[int, set[tuple[int, int]]]:
    """Maximum s-t flow when every arc has capacity one.

    Returns the flow value and the set of arcs carrying a unit.
    """
    problems = net.validate()
    if problems:
        raise ValueError("malformed network: " + "; ".join(problems))
    arcs = np.asarray(net.arcs, dtype=np.int64).reshape(-1, 2)
    value, flow = kernels.dinic_unit(
        net.node_count, np.ascontiguousarray(arcs[:, 0]), np.ascontiguousarray(arcs[:, 1]),
        net.source, net.sink,
    )
    return int(value), {(int(a), int(b)) for (a, b), f in zip(arcs, flow) if f}
