import numpy as np
import pytest

from boobytrap.centroid import general_centroid, h_value, tree_centroid
from boobytrap.netmodel import NetworkError, Point, cycle, path, random_tree, star, symmetric_star


def test_symmetric_star():
    info = tree_centroid(symmetric_star(3))
    assert info.centroid == Point(node="c")
    assert info.radius == pytest.approx(1 / 3)
    assert info.profile == pytest.approx((1 / 3,) * 3)


def test_path_midpoint():
    info = tree_centroid(path())
    assert info.centroid.arc == "a0" and info.centroid.offset == pytest.approx(0.5)
    assert len(info.components) == 2 and info.radius == pytest.approx(0.5)


def test_interior_centroid_on_two_arc_path():
    info = tree_centroid(path(lengths=[0.8, 0.2]))
    assert info.centroid.arc == "a0" and info.centroid.offset == pytest.approx(0.5)


def test_unequal_star_centroid_is_the_center_by_grid_scan():
    net = star([0.45, 0.3, 0.25])
    info = tree_centroid(net)
    assert info.centroid == Point(node="c") and info.radius == pytest.approx(0.45)
    # independent scan of h over a 1e-4 grid along every arm
    best = min(
        (h_value(net, net.point(a.id, t)), a.id, t)
        for a in net.arcs
        for t in np.linspace(0, a.length, int(a.length * 1e4) + 1)
    )
    assert best[0] == pytest.approx(0.45, abs=1e-9)
    assert best[2] == 0.0


def test_no_centroid_on_loop_tail_and_looped_triangle(loop_tail, looped_triangle):
    assert general_centroid(loop_tail) is None
    assert general_centroid(looped_triangle) is None


def test_tree_centroid_refuses_cycles():
    with pytest.raises(NetworkError):
        tree_centroid(cycle())


def test_non_disconnecting_points_score_one():
    c = cycle()
    assert h_value(c, c.point("a0", 0.25)) == 1.0


@pytest.mark.parametrize("seed", range(40))
def test_random_tree_centroid_agrees_and_is_minimal(seed):
    net = random_tree(8, seed)
    info = tree_centroid(net)
    assert info == general_centroid(net)
    assert info.radius <= 0.5 + 1e-12
    assert sum(info.profile) == pytest.approx(1.0, abs=1e-9)
    grid = [net.point(a.id, t) for a in net.arcs for t in np.arange(0.0, a.length, 1e-3)]
    assert min(h_value(net, x) for x in grid) >= info.radius - 1e-6
