import itertools
import math

import numpy as np
import pytest

from pdcenter.center import BOTTLENECK, Objective, SelectionMode, set_distance
from pdcenter.core import L2, LINF, AugmentedSet, Metric
from pdcenter.instances import gen_figure2, gen_tight
from pdcenter.oracle import (
    DEFAULT_LIMIT,
    brute_force_center,
    clustering_value,
    count_clusterings,
    is_feasible,
    iter_clusterings,
    min_enclosing_circle,
)

from helpers import random_sets


def by_center_enumeration(sets, mode, metric, objective=BOTTLENECK):
    """Optimum over every admissible center multiset, scored by matching distance."""
    pool = np.concatenate([np.asarray(s, float) for s in sets])
    n = len(sets[0])
    if mode is SelectionMode.NO_REPLACEMENT:
        picks = itertools.combinations(range(len(pool)), n)
    else:
        picks = itertools.combinations_with_replacement(range(len(pool)), n)
    best = math.inf
    for idx in picks:
        q = AugmentedSet.raw(pool[list(idx)])
        v = max(set_distance(q, AugmentedSet.raw(s), metric, objective) for s in sets)
        best = min(best, v)
    return best


def test_counts():
    assert count_clusterings(3, 3) == 36
    assert count_clusterings(4, 2) == 24
    assert sum(1 for _ in iter_clusterings(3, 3)) == 36
    c = next(iter_clusterings(3, 2))
    assert c.tolist() == [[0, 0], [1, 1], [2, 2]]


def test_size_limit():
    sets = [np.zeros((11, 2))] * 2
    assert count_clusterings(11, 2) > DEFAULT_LIMIT
    with pytest.raises(ValueError, match="too large"):
        brute_force_center(sets)
    with pytest.raises(ValueError, match="too large"):
        brute_force_center([np.zeros((3, 2))] * 3, limit=10)


def test_identical_sets_have_value_zero():
    s = [(0, 0), (1, 2), (3, 1)]
    for mode in SelectionMode:
        assert brute_force_center([s, s, s], mode, L2).objective_value == 0.0


def test_tight_continuous_is_half():
    r = brute_force_center(gen_tight(), SelectionMode.CONTINUOUS, LINF)
    assert r.objective_value == 0.5
    assert r.centers.tolist() == [[0.5, 0.5]]


def test_figure2_optimum_is_one():
    sets = gen_figure2()
    assert brute_force_center(sets, SelectionMode.NO_REPLACEMENT, L2).objective_value == 1.0
    assert by_center_enumeration(sets, SelectionMode.NO_REPLACEMENT, L2) == 1.0
    # every point lies on the unit circle or at its center
    r = np.hypot(*np.concatenate(sets).T)
    assert sorted(set(np.round(r, 12).tolist())) == [0.0, 1.0]


@pytest.mark.parametrize("mode", [SelectionMode.NO_REPLACEMENT, SelectionMode.WITH_REPLACEMENT])
@pytest.mark.parametrize("metric", [L2, LINF])
def test_discrete_oracle_matches_center_enumeration(mode, metric, rng):
    for trial in range(15):
        n, m = (2, 3) if trial % 2 else (3, 2)
        sets = random_sets(rng, n, m, grid=trial % 3 == 0)
        assert brute_force_center(sets, mode, metric).objective_value == by_center_enumeration(sets, mode, metric)


@pytest.mark.parametrize("p", [1, 2])
def test_wasserstein_discrete_matches_center_enumeration(p, rng):
    obj = Objective.wasserstein(p)
    for _ in range(8):
        sets = random_sets(rng, 2, 3)
        for mode in (SelectionMode.NO_REPLACEMENT, SelectionMode.WITH_REPLACEMENT):
            got = brute_force_center(sets, mode, L2, obj).objective_value
            assert got == pytest.approx(by_center_enumeration(sets, mode, L2, obj), abs=1e-12)


def test_continuous_oracle_beats_discrete(rng):
    for _ in range(20):
        sets = random_sets(rng, 2, 3)
        for metric in (L2, LINF):
            c = brute_force_center(sets, SelectionMode.CONTINUOUS, metric).objective_value
            d = brute_force_center(sets, SelectionMode.WITH_REPLACEMENT, metric).objective_value
            assert c <= d + 1e-12


def test_continuous_lp_uses_convex_solver():
    sets = [[(0, 0)], [(2, 0)]]
    r = brute_force_center(sets, SelectionMode.CONTINUOUS, Metric.lp(3))
    assert r.objective_value == pytest.approx(1.0, abs=1e-6)


def test_continuous_wasserstein_single_cluster():
    sets = [[(0, 0)], [(1, 0)], [(0, 1)]]
    r = brute_force_center(sets, SelectionMode.CONTINUOUS, LINF, Objective.wasserstein(1))
    assert r.objective_value == pytest.approx(0.5, abs=1e-6)


def test_min_enclosing_circle():
    c, r = min_enclosing_circle([(0, 0), (2, 0), (1, 0.1)])
    assert np.allclose(c, [1, 0]) and r == pytest.approx(1.0)
    c, r = min_enclosing_circle([(1, 0), (0, 1), (-1, 0)])
    assert np.allclose(c, [0, 0], atol=1e-12) and r == pytest.approx(1.0)
    c, r = min_enclosing_circle([(3, 4)])
    assert r == 0.0


def test_is_feasible_and_clustering_value():
    sets = gen_tight()
    assert is_feasible(sets, SelectionMode.CONTINUOUS, 0.5)
    assert not is_feasible(sets, SelectionMode.CONTINUOUS, 0.49)
    only = np.zeros((1, 3), int)
    assert clustering_value(sets, only, SelectionMode.WITH_REPLACEMENT) == 1.0
