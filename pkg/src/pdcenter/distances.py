"""Bottleneck and p-Wasserstein distances between persistence diagrams.

Both reduce to an assignment problem between equal-size augmented sets:
each diagram's own points plus the diagonal projections of the other
diagram's points.  Two diagonal stand-ins are matched at no cost, and the
ground metric is always L-infinity.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .core import LINF, AugmentedSet, Diagram, cost_matrix, validate_diagram
from .matching import bottleneck_assignment, min_cost_assignment


def _as_diagram(d) -> Diagram:
    d = d if isinstance(d, Diagram) else Diagram(d)
    problems = validate_diagram(d)
    if problems:
        raise ValueError("invalid diagram: " + "; ".join(problems))
    return d


def augment(diagrams: Sequence[Diagram], i: int) -> AugmentedSet:
    """Points of diagram ``i`` (1-based) followed by projections of all others.

    Every member is colored ``i``; projections carry the diagonal flag.  The
    result has ``sum(len(d) for d in diagrams)`` members.
    """
    m = len(diagrams)
    if not 1 <= i <= m:
        raise IndexError(f"color {i} outside 1..{m}")
    pts = [np.asarray(diagrams[i - 1].points, float).reshape(-1, 2)]
    diag = [np.zeros(len(pts[0]), bool)]
    for k, d in enumerate(diagrams, start=1):
        if k == i:
            continue
        own = np.asarray(d.points, float).reshape(-1, 2)
        mid = (own[:, 0] + own[:, 1]) / 2.0
        pts.append(np.column_stack([mid, mid]))
        diag.append(np.ones(len(own), bool))
    return AugmentedSet(np.concatenate(pts), np.concatenate(diag), i)


def augmented_costs(a: Diagram, b: Diagram) -> np.ndarray:
    """L-infinity cost matrix between the two augmented sets of ``a`` and ``b``."""
    pair = [a, b]
    return cost_matrix(augment(pair, 1), augment(pair, 2), LINF)


def bottleneck_distance(a, b) -> float:
    a, b = _as_diagram(a), _as_diagram(b)
    return bottleneck_assignment(augmented_costs(a, b)).bottleneck_cost


def wasserstein_distance(a, b, p: float = 1.0) -> float:
    if not (math.isfinite(p) and p >= 1):
        raise ValueError(f"Wasserstein exponent must be finite and >= 1, got {p}")
    a, b = _as_diagram(a), _as_diagram(b)
    c = augmented_costs(a, b)
    if c.size == 0:
        return 0.0
    total = min_cost_assignment(c**p).total_cost
    return total ** (1.0 / p)
