"""Shared generators and reference computations for the test suite."""
import itertools
import math

import numpy as np

from pdcenter.core import Diagram

# lines recorded by the acceptance module, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def random_sets(rng, n, m, grid=False):
    """m point sets of n points; on a small integer grid to force ties."""
    if grid:
        return [rng.integers(0, 4, (n, 2)).astype(float) for _ in range(m)]
    return [rng.uniform(0, 5, (n, 2)) for _ in range(m)]


def random_diagram(rng, k, grid=False):
    if grid:
        pts = rng.integers(0, 6, (k, 2)).astype(float)
    else:
        pts = rng.uniform(0, 10, (k, 2))
    return Diagram(np.sort(pts, axis=1))


def partial_matchings(na, nb):
    """Every injection from a subset of a into b; the rest go to the diagonal."""
    for k in range(min(na, nb) + 1):
        for rows in itertools.combinations(range(na), k):
            for cols in itertools.permutations(range(nb), k):
                yield rows, cols


def exhaustive_distance(a: Diagram, b: Diagram, p=None) -> float:
    """Distance by enumerating partial matchings; p=None is bottleneck."""
    A, B = a.points, b.points
    half_a = (A[:, 1] - A[:, 0]) / 2.0
    half_b = (B[:, 1] - B[:, 0]) / 2.0
    best = math.inf
    for rows, cols in partial_matchings(len(A), len(B)):
        costs = [max(abs(A[r, 0] - B[c, 0]), abs(A[r, 1] - B[c, 1])) for r, c in zip(rows, cols)]
        costs += [half_a[i] for i in range(len(A)) if i not in rows]
        costs += [half_b[j] for j in range(len(B)) if j not in cols]
        if p is None:
            v = max(costs, default=0.0)
        else:
            v = math.fsum(x**p for x in costs) ** (1.0 / p)
        best = min(best, v)
    return best
