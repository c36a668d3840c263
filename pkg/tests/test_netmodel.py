import math

import pytest

from boobytrap.netmodel import (
    Fragment,
    Network,
    NetworkError,
    NetworkFormatError,
    Point,
    canonical,
    components_after_removal,
    contains,
    cycle,
    distance,
    format_network,
    format_subnetwork,
    generate,
    is_connected,
    measure,
    parse_network,
    parse_subnetwork,
    path,
    random_tree,
    star,
    subnetwork,
    symmetric_star,
)


def test_single_arc_path():
    net = parse_network("arc a n0 n1 1\n")
    assert len(net.nodes) == 2 and len(net.arcs) == 1
    assert net.total_length == pytest.approx(1.0, abs=1e-12)


def test_rescaling_records_factor():
    net = parse_network("node x\narc a x y 3\narc b y z 1  # tail\n")
    assert [a.length for a in net.arcs] == [0.75, 0.25]
    assert net.rescale_factor == 4


def test_fraction_lengths(prism):
    assert all(a.length == pytest.approx(1 / 9) for a in prism.arcs)
    assert prism.total_length == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize(
    "text, line",
    [
        ("arc a x y 1\narc a y z 1\n", 2),
        ("arc a x y 0\n", 1),
        ("arc a x y 1\narc b z w 1\n", None),
        ("arc a x y one\n", 1),
        ("edge a x y 1\n", 1),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(NetworkError) as info:
        parse_network(text)
    if line is not None and isinstance(info.value, NetworkFormatError):
        assert info.value.line == line


def test_format_round_trip(looped_triangle):
    again = parse_network(format_network(looped_triangle))
    assert [(a.id, a.u, a.v) for a in again.arcs] == [(a.id, a.u, a.v) for a in looped_triangle.arcs]
    assert all(math.isclose(a.length, b.length, abs_tol=1e-12) for a, b in zip(again.arcs, looped_triangle.arcs))


def test_generators():
    s = symmetric_star(4)
    assert s.star_center == "c" and all(a.length == 0.25 for a in s.arcs)
    c = cycle()
    assert len(c.nodes) == 1 and c.arcs[0].is_loop and c.arcs[0].length == 1
    assert random_tree(6, seed=7) == random_tree(6, seed=7)
    assert generate("symmetric-star", n=3) == symmetric_star(3)
    with pytest.raises(NetworkError):
        symmetric_star(2)
    with pytest.raises(NetworkError):
        star([])


def test_points_at_arc_ends_are_nodes():
    net = path()
    assert net.point("a0", 0.0) == Point(node="n0")
    assert net.point("a0", 1.0) == Point(node="n1")
    assert net.point("a0", 0.3).arc == "a0"


def test_distances():
    p = path()
    assert distance(p, p.point("a0", 0.2), p.point("a0", 0.7)) == pytest.approx(0.5)
    c = cycle()
    assert distance(c, c.point("a0", 0.1), c.point("a0", 0.8)) == pytest.approx(0.3)
    s = symmetric_star(3)
    assert distance(s, Point(node="l1"), Point(node="l2")) == pytest.approx(2 / 3)


def test_measure_and_whole(prism):
    assert measure(subnetwork(prism, [])) == 0
    assert measure(prism.whole()) == pytest.approx(1.0)


def test_connectivity_through_center():
    s = symmetric_star(3)
    tips = subnetwork(s, [Fragment("e1", 0.2, 1 / 3), Fragment("e2", 0.2, 1 / 3)])
    assert not is_connected(s, tips)
    joined = subnetwork(s, [Fragment("e1", 0.0, 1 / 3), Fragment("e2", 0.0, 1 / 3)])
    assert is_connected(s, joined)
    assert is_connected(s, subnetwork(s, [Fragment("e3", 0.1, 0.2)]))


def test_components():
    p = path()
    assert sorted(x for _, x in components_after_removal(p, p.point("a0", 0.3))) == pytest.approx([0.3, 0.7])
    s = symmetric_star(3)
    assert [x for _, x in components_after_removal(s, Point(node="c"))] == pytest.approx([1 / 3] * 3)
    c = cycle()
    assert [x for _, x in components_after_removal(c, c.point("a0", 0.4))] == pytest.approx([1.0])


def test_contains_is_closed_by_default():
    p = path()
    s = subnetwork(p, [Fragment("a0", 0.2, 0.5)])
    assert contains(s, p.point("a0", 0.3))
    assert contains(s, p.point("a0", 0.5))
    assert not contains(s, p.point("a0", 0.6))


def test_touching_fragments_merge():
    p = path()
    s = subnetwork(p, [Fragment("a0", 0.2, 0.4), Fragment("a0", 0.4, 0.5)])
    assert len(s.fragments) == 1 and s.measure == pytest.approx(0.3)
    assert canonical(p, canonical(p, s)) == canonical(p, s)


def test_subnetwork_text_round_trip(prism):
    s = subnetwork(prism, [Fragment("a6", 0.0, 1 / 18, True, False), Fragment("a1", 0.0, 1 / 9)], ["1"])
    assert parse_subnetwork(format_subnetwork(s), prism) == s


def test_disconnected_network_rejected():
    with pytest.raises(NetworkError):
        Network.build(["a", "b", "c"], [("x", "a", "b", 1)])


def test_fast_component_lengths_agree(loop_tail, looped_triangle):
    from boobytrap.netmodel import component_lengths_without_node, random_two_connected

    for net in [loop_tail, looped_triangle, random_tree(9, 3), random_two_connected(5, 3, 1), symmetric_star(4)]:
        for n in net.nodes:
            slow = [x for _, x in components_after_removal(net, Point(node=n))]
            assert component_lengths_without_node(net, n) == pytest.approx(slow, abs=1e-12)
