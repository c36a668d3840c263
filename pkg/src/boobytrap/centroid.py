"""Centroids: the disconnecting point whose largest remaining component is shortest."""

from __future__ import annotations

from dataclasses import dataclass

from .netmodel import (
    EPS,
    TOL,
    Network,
    NetworkError,
    Point,
    Subnetwork,
    bridges,
    component_lengths_without_node,
    components_after_removal,
    cut_nodes,
)


@dataclass(frozen=True)
class CentroidInfo:
    centroid: Point
    radius: float
    components: tuple[tuple[Subnetwork, float], ...]

    @property
    def profile(self) -> tuple[float, ...]:
        """Component lengths, longest first."""
        return tuple(length for _, length in self.components)


def _info(net: Network, x: Point) -> CentroidInfo:
    comps = tuple(components_after_removal(net, x))
    return CentroidInfo(x, comps[0][1], comps)


def _bridge_midpoint(net: Network, arc_id: str) -> Point | None:
    """Point on a bridge leaving equal lengths on both sides, if it is interior."""
    a = net.arc(arc_id)
    probe = net.point(a.id, a.length / 2)
    side_u = next(length for s, length in components_after_removal(net, probe) if s.contains(Point(node=a.u)))
    offset = 0.5 - (side_u - a.length / 2)
    if EPS < offset < a.length - EPS:
        return net.point(a.id, offset)
    return None


def general_centroid(net: Network) -> CentroidInfo | None:
    """The disconnecting point ``x`` with largest component at most 1/2, if any.

    Only cut nodes and bridge points disconnect, so those are the only
    candidates. On a bridge the best point balances both sides exactly, so it
    is solved in closed form. Points that do not disconnect count as leaving
    the whole network behind.
    """
    best: tuple[float, str, Point] | None = None
    for n in cut_nodes(net):
        h = component_lengths_without_node(net, n)[0]
        if h <= 0.5 + TOL and (best is None or h < best[0] - 1e-12 or (abs(h - best[0]) <= 1e-12 and n < best[1])):
            best = (h, n, Point(node=n))
    if best is not None:
        return _info(net, best[2])
    for a in bridges(net):
        x = _bridge_midpoint(net, a.id)
        if x is not None:
            return _info(net, x)
    return None


def tree_centroid(net: Network) -> CentroidInfo:
    """Centroid of a tree: a node if one leaves pieces of at most 1/2, else the
    point on the arc between the two nodes that face each other."""
    if not net.is_tree:
        raise NetworkError("network is not a tree")
    info = general_centroid(net)
    if info is None:
        raise NetworkError("tree without centroid; lengths are inconsistent")
    return info


def h_value(net: Network, x: Point) -> float:
    """Largest component length after removing ``x`` (1 if ``x`` does not disconnect)."""
    comps = components_after_removal(net, x)
    return 1.0 if len(comps) == 1 else comps[0][1]
