from fractions import Fraction

import pytest

from boobytrap import strategies as st
from boobytrap.netmodel import Network, NetworkError, cycle, path, random_tree, star, symmetric_star
from boobytrap.values import (
    ValueReport,
    classify_and_value,
    tree_bounds,
    value_centroid_symmetric,
    value_cycle_or_path,
    value_star,
)


def test_cycle_or_path():
    assert value_cycle_or_path(1) == 0.25
    assert value_cycle_or_path(2) == 0.125
    assert value_cycle_or_path(5, exact=True) == Fraction(1, 20)
    with pytest.raises(ValueError):
        value_cycle_or_path(0)


def test_tree_bounds():
    r = tree_bounds(path())
    assert r.kind == "exact" and r.value == pytest.approx(0.25)
    r = tree_bounds(symmetric_star(6))
    assert r.lower == pytest.approx(0.15) and r.upper == pytest.approx(0.15)
    with pytest.raises(NetworkError):
        tree_bounds(cycle())


def test_star_values():
    assert value_star([0.5, 0.3, 0.2]).value == pytest.approx(0.25)
    assert value_star([0.45, 0.3, 0.25]).value == pytest.approx(0.2475)
    assert value_star(symmetric_star(5)).value == pytest.approx(6 / 35)
    r = value_star([0.4, 0.3, 0.2, 0.1])
    assert r.kind == "bounds" and r.classification == "star-general"
    with pytest.raises(NetworkError):
        value_star([0.5, 0.5])


def test_centroid_symmetric():
    assert value_centroid_symmetric(symmetric_star(4)) == pytest.approx(0.2)
    assert value_centroid_symmetric(symmetric_star(5)) is None
    loops = Network.build(["o"], [(f"l{i}", "o", "o", 1) for i in range(4)])
    assert value_centroid_symmetric(loops) == pytest.approx(0.2)
    # two equal loops joined by a bridge: the bridge midpoint leaves two halves
    two_loops = Network.build(["o", "p"], [("l1", "o", "o", 1), ("l2", "p", "p", 1), ("b", "o", "p", 1)])
    assert value_centroid_symmetric(two_loops) == pytest.approx(0.25)
    assert value_centroid_symmetric(star([0.45, 0.3, 0.25])) is None


def test_classification(prism, loop_tail, looped_triangle):
    r = classify_and_value(prism)
    assert (r.kind, r.classification, r.value) == ("exact", "two-connected", pytest.approx(0.25))
    r = classify_and_value(loop_tail)
    assert (r.kind, r.classification) == ("exact", "half-partitionable")
    r = classify_and_value(looped_triangle)
    assert r.classification == "unknown" and "requires further investigation" in r.note
    assert classify_and_value(cycle(), 3).value == pytest.approx(1 / 12)
    assert classify_and_value(path(), 2).value == pytest.approx(1 / 8)


def test_witness_guarantees_match_reported_value(prism, loop_tail):
    nets = [path(), cycle(), prism, loop_tail, star([0.45, 0.3, 0.25])] + [symmetric_star(n) for n in range(3, 9)]
    for net in nets:
        r = classify_and_value(net)
        assert r.kind == "exact"
        assert r.witness_attacker.guarantee == pytest.approx(r.value, abs=1e-9)
        assert r.witness_defender.guarantee == pytest.approx(r.value, abs=1e-9)


def test_overlapping_routes_agree():
    s = symmetric_star(4)
    assert classify_and_value(s).value == pytest.approx(value_centroid_symmetric(s))
    assert classify_and_value(path()).value == pytest.approx(tree_bounds(path()).value)


def test_odd_star_matches_consolidation_formula():
    for n in range(3, 16, 2):
        assert value_star(symmetric_star(n)).value == pytest.approx(st.payoff_U((n + 3) // 2, [1 / n] * n), abs=1e-12)


def test_star_values_approach_one_over_n():
    values = [value_star(symmetric_star(n)).value for n in range(3, 30)]
    assert all(a > b for a, b in zip(values, values[1:]))
    n = 1000
    even = Fraction(n, n * n + 4)
    assert abs(n * float(even) - 1) < 1e-2


def test_report_validation():
    with pytest.raises(ValueError):
        ValueReport("bounds", 0.3, 0.2, "tree")
    with pytest.raises(ValueError):
        ValueReport("bounds", 0.1, 0.2, "planet")


@pytest.mark.parametrize("seed", range(30))
def test_tree_ratio_bound(seed):
    r = tree_bounds(random_tree(3 + seed % 20, seed))
    assert r.lower <= r.upper + 1e-12
    assert r.upper <= 27 / 25 * r.lower + 1e-9
