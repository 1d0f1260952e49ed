import math

import numpy as np
import pytest

from pdcenter.core import (
    L2,
    LINF,
    AugmentedSet,
    AugPoint,
    Diagram,
    Metric,
    Point,
    as_point_set,
    cost_matrix,
    dist_point,
    project_to_diagonal,
    validate_diagram,
)


@pytest.mark.parametrize("metric,expected", [(L2, 5.0), (LINF, 4.0), (Metric.lp(1), 7.0)])
def test_dist_point_345(metric, expected):
    assert dist_point((0, 0), (3, 4), metric) == expected


def test_dist_point_self_is_zero():
    for metric in (L2, LINF, Metric.lp(3)):
        assert dist_point((1.5, 2.5), (1.5, 2.5), metric) == 0.0


def test_lp2_matches_l2_bitwise(rng):
    a, b = rng.normal(size=(20, 2)), rng.normal(size=(15, 2))
    assert np.array_equal(Metric.lp(2).pairwise(a, b), L2.pairwise(a, b))


def test_metric_rejects_bad_exponent():
    for p in (0.5, math.inf, None):
        with pytest.raises(ValueError):
            Metric("Lp", p)
    with pytest.raises(ValueError):
        Metric("L7")


def test_metric_triangle_inequality(rng):
    pts = rng.normal(size=(30, 2))
    for metric in (L2, LINF, Metric.lp(1.5)):
        d = metric.pairwise(pts, pts)
        assert np.all(d[:, :, None] <= d[:, None, :] + d.T[None, :, :] + 1e-12)


def test_project_to_diagonal():
    assert project_to_diagonal(Point(0, 2)) == Point(1, 1)
    assert project_to_diagonal((3, 3)) == Point(3, 3)
    # the L-infinity distance to the projection is half the persistence
    assert dist_point((0, 2), project_to_diagonal((0, 2)), LINF) == 1.0


def test_validate_diagram():
    assert validate_diagram(Diagram([(0, 1), (2, 2)])) == []
    assert validate_diagram(Diagram([(0, 1), (3, 2)])) == ["index 1: death < birth"]
    assert validate_diagram(Diagram([(0, math.nan)])) == ["index 0: non-finite coordinate"]
    assert validate_diagram(Diagram()) == []


def test_diagram_is_read_only_and_compares():
    d = Diagram([(0, 1), (1, 3)])
    with pytest.raises(ValueError):
        d.points[0, 0] = 5
    assert d == Diagram([[0.0, 1.0], [1.0, 3.0]])
    assert d != Diagram([(0, 1)])
    assert list(d) == [Point(0, 1), Point(1, 3)]
    with pytest.raises(ValueError):
        Diagram.checked([(2, 1)])
    with pytest.raises(ValueError):
        Diagram([(1, 2, 3)])


def test_augmented_set_requires_diagonal_members_on_the_line():
    AugmentedSet([(1, 1), (0, 2)], [True, False])
    with pytest.raises(ValueError):
        AugmentedSet([(1, 2)], [True])
    with pytest.raises(ValueError):
        AugmentedSet([(1, 1)], [True, False])


def test_as_point_set_from_augpoints():
    items = [AugPoint(Point(0, 0), 2, True), AugPoint(Point(1, 3), 2)]
    s = as_point_set(items)
    assert s.color == 2
    assert s.diag.tolist() == [True, False]
    assert s.points == items


def test_cost_matrix_diagonal_zero_rule():
    a = AugmentedSet([(0, 0), (0, 4)], [True, False])
    b = AugmentedSet([(5, 5), (0, 4)], [True, False])
    c = cost_matrix(a, b, LINF)
    assert c[0, 0] == 0.0  # both diagonal, however far apart
    assert c[1, 1] == 0.0
    assert c[0, 1] == 4.0
    assert c[1, 0] == 5.0
