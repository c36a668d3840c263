"""Splitting a network into two connected halves of length 1/2 each."""

from __future__ import annotations

import re
from typing import Mapping

import numpy as np

from .netmodel import (
    EPS,
    TOL,
    Fragment,
    Network,
    NetworkError,
    Point,
    Subnetwork,
    bridges,
    components_without,
    cut_nodes,
    disjoint,
    is_connected,
    subnetwork,
    union,
)


def natural_key(s: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", s)]


def is_two_connected(net: Network) -> bool:
    """No single point disconnects the network (no cut node and no bridge)."""
    return not cut_nodes(net) and not bridges(net)


def st_numbering(net: Network, arc: str) -> dict[str, int]:
    """Label nodes 1..n so that ``s`` gets 1, ``t`` gets n and every other node
    has both a lower and a higher labelled neighbour.

    Uses the low-point list construction: depth-first search from ``s`` with
    ``(s, t)`` as the first tree edge, then a single preorder pass that inserts
    each node next to its parent.
    """
    a = net.arc(arc)
    if a.is_loop:
        raise NetworkError(f"arc {arc} is a self-loop")
    if not is_two_connected(net):
        raise NetworkError("network is not 2-connected")
    s, t = a.u, a.v
    adj: dict[str, list[str]] = {n: [] for n in net.nodes}
    for b in sorted(net.arcs, key=lambda b: natural_key(b.id)):
        if not b.is_loop:
            if b.v not in adj[b.u]:
                adj[b.u].append(b.v)
            if b.u not in adj[b.v]:
                adj[b.v].append(b.u)
    adj[s].remove(t)
    adj[s].insert(0, t)

    pre: dict[str, int] = {}
    parent: dict[str, str | None] = {s: None}
    low: dict[str, int] = {}
    order: list[str] = []
    stack = [(s, iter(adj[s]))]
    pre[s] = 0
    low[s] = 0
    order.append(s)
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if w not in pre:
                pre[w] = low[w] = len(order)
                order.append(w)
                parent[w] = v
                stack.append((w, iter(adj[w])))
                advanced = True
                break
            if w != parent[v]:
                low[v] = min(low[v], pre[w])
        if not advanced:
            stack.pop()
            p = parent[v]
            if p is not None:
                low[p] = min(low[p], low[v])

    # doubly linked list over node ids
    nxt: dict[str, str | None] = {s: t, t: None}
    prv: dict[str, str | None] = {s: None, t: s}
    minus = {s: True}

    def insert_before(x, ref):
        p = prv[ref]
        prv[x], nxt[x] = p, ref
        prv[ref] = x
        if p is not None:
            nxt[p] = x

    def insert_after(x, ref):
        n = nxt[ref]
        prv[x], nxt[x] = ref, n
        nxt[ref] = x
        if n is not None:
            prv[n] = x

    for v in order:
        if v in (s, t):
            continue
        p = parent[v]
        if minus[order[low[v]]]:
            insert_before(v, p)
            minus[p] = False
        else:
            insert_after(v, p)
            minus[p] = True
        minus.setdefault(v, True)

    labels, cur, i = {}, s, 1
    while cur is not None:
        labels[cur] = i
        cur, i = nxt[cur], i + 1
    return labels


def check_st_numbering(net: Network, labels: Mapping[str, int], s: str, t: str) -> bool:
    n = len(net.nodes)
    if sorted(labels.values()) != list(range(1, n + 1)):
        return False
    if labels[s] != 1 or labels[t] != n:
        return False
    for v in net.nodes:
        if v in (s, t):
            continue
        nbrs = [labels[a.other(v)] for a in net.incident[v] if not a.is_loop]
        if not nbrs or min(nbrs) > labels[v] or max(nbrs) < labels[v]:
            return False
    return True


def check_partition(net: Network, parts: tuple[Subnetwork, Subnetwork], tol: float = TOL) -> bool:
    """Both halves connected, of length 1/2, pointwise disjoint and covering ``net``."""
    a, b = parts
    if abs(a.measure - 0.5) > tol or abs(b.measure - 0.5) > tol:
        return False
    if not (is_connected(net, a) and is_connected(net, b)):
        return False
    if not disjoint(a, b):
        return False
    return set(a.nodes | b.nodes) == set(net.nodes)


def _semicircles(net: Network) -> tuple[Subnetwork, Subnetwork]:
    a = net.arcs[0]
    half = a.length / 2
    first = subnetwork(net, [Fragment(a.id, 0.0, half, True, False)], [a.u])
    second = subnetwork(net, [Fragment(a.id, half, a.length, True, False)])
    return first, second


def equal_bipartition_two_connected(
    net: Network, numbering: Mapping[str, int] | None = None
) -> tuple[Subnetwork, Subnetwork]:
    """Two connected halves of a 2-connected network.

    Nodes are absorbed in st-number order. Arcs joining the absorbed set to the
    next node are then added one at a time in ascending id order, and the arc
    that crosses 1/2 is cut. ``numbering`` may supply a precomputed valid
    st-numbering.
    """
    if not is_two_connected(net):
        raise NetworkError("network is not 2-connected")
    if len(net.nodes) == 1:
        if len(net.arcs) == 1:
            return _semicircles(net)
        raise NetworkError("network is not 2-connected")
    if numbering is None:
        first = min((a for a in net.arcs if not a.is_loop), key=lambda a: natural_key(a.id))
        numbering = st_numbering(net, first.id)
    ordered = sorted(net.nodes, key=lambda v: numbering[v])
    arcs_sorted = sorted(net.arcs, key=lambda a: natural_key(a.id))

    absorbed: set[str] = set()
    mass = 0.0
    for j, node in enumerate(ordered[:-1]):
        absorbed.add(node)
        mass += sum(a.length for a in net.incident[node] if a.other(node) in absorbed and a.other(node) != node)
        nxt = ordered[j + 1]
        joining = [a for a in arcs_sorted if not a.is_loop and nxt in (a.u, a.v) and a.other(nxt) in absorbed]
        gain = sum(a.length for a in joining)
        if mass + gain < 0.5 - EPS:
            continue
        inner = [a for a in net.arcs if a.u in absorbed and a.v in absorbed]
        frags = [Fragment(a.id, 0.0, a.length) for a in inner]
        for a in joining:
            need = 0.5 - mass
            if need <= EPS:
                break
            take = min(need, a.length)
            if a.u in absorbed:
                frags.append(Fragment(a.id, 0.0, take, True, False))
            else:
                frags.append(Fragment(a.id, a.length - take, a.length, False, True))
            mass += take
        half = subnetwork(net, frags, absorbed)
        rest = _complement(net, half)
        return half, rest
    raise NetworkError("sweep did not reach half the length")


def _complement(net: Network, s: Subnetwork) -> Subnetwork:
    frags = []
    for a in net.arcs:
        # pos is the current left end; inside says whether pos belongs to the complement
        pos, inside = 0.0, a.u not in s.nodes
        for f in s.on_arc(a.id):
            if f.lo > pos + EPS:
                frags.append(Fragment(a.id, pos, f.lo, inside, not f.lo_closed))
            elif inside and not f.lo_closed and EPS < pos < a.length - EPS:
                frags.append(Fragment(a.id, pos, pos))
            pos, inside = f.hi, not f.hi_closed
        if pos < a.length - EPS:
            frags.append(Fragment(a.id, pos, a.length, inside, a.v not in s.nodes))
    return subnetwork(net, frags, [n for n in net.nodes if n not in s.nodes])


def complement(net: Network, s: Subnetwork) -> Subnetwork:
    """Pointwise complement of ``s`` in ``net``."""
    return _complement(net, s)


def _single_cut_split(net: Network) -> tuple[Subnetwork, Subnetwork] | None:
    candidates = [Point(node=n) for n in cut_nodes(net)]
    for a in bridges(net):
        others = components_without(net, [net.point(a.id, a.length / 2)])
        side_u = next(length for s, length in others if s.contains(Point(node=a.u))) - a.length / 2
        offset = 0.5 - side_u
        if EPS < offset < a.length - EPS:
            candidates.append(net.point(a.id, offset))
    for x in candidates:
        for comp, length in components_without(net, [x]):
            if abs(length - 0.5) <= TOL:
                parts = (comp, complement(net, comp))
                if check_partition(net, parts):
                    return parts
    return None


def _grid_points(net: Network, grid: int, arcs) -> list[Point]:
    pts = [Point(node=n) for n in net.nodes]
    for a in arcs:
        steps = max(1, int(np.ceil(a.length * grid)))
        pts += [net.point(a.id, a.length * i / steps) for i in range(1, steps)]
    return pts


def _two_cut_split(net: Network, grid: int) -> tuple[Subnetwork, Subnetwork] | None:
    bridge_ids = {a.id for a in bridges(net)}
    cycle_arcs = [a for a in net.arcs if a.id not in bridge_ids]
    if not cycle_arcs:
        return None
    for x in _grid_points(net, grid, cycle_arcs):
        for a in cycle_arcs:
            breaks = [0.0, a.length]
            if x.arc == a.id:
                breaks.insert(1, x.offset)
            for lo, hi in zip(breaks, breaks[1:]):
                found = _solve_second_cut(net, x, a, lo, hi)
                if found is not None:
                    return found
    return None


def _solve_second_cut(net: Network, x: Point, a, lo: float, hi: float):
    # With the second cut y at offset o in (lo, hi), the component holding the
    # piece just before y grows like o and the one just after y shrinks like o;
    # every other component is constant. One probe at o1 fixes both lines.
    width = hi - lo
    if width <= 4 * EPS:
        return None
    o1 = lo + width / 2
    y1 = net.point(a.id, o1)
    comps = components_without(net, [x, y1])
    before = net.point(a.id, o1 - width / 4)
    after = net.point(a.id, o1 + width / 4)
    candidates = [o1] if any(abs(length - 0.5) <= TOL for _, length in comps) else []
    for comp, length in comps:
        has_before, has_after = comp.contains(before), comp.contains(after)
        if has_before and not has_after:
            candidates.append(0.5 - (length - o1))
        elif has_after and not has_before:
            candidates.append(length + o1 - 0.5)
    for o in candidates:
        if not lo + EPS < o < hi - EPS:
            continue
        y = net.point(a.id, o)
        if y == x or y.node is not None:
            continue
        for comp, length in components_without(net, [x, y]):
            if abs(length - 0.5) <= TOL:
                parts = (comp, complement(net, comp))
                if check_partition(net, parts):
                    return parts
    return None


def find_equal_split(net: Network, grid: int = 1000) -> tuple[Subnetwork, Subnetwork] | None:
    """Search for two connected halves of length 1/2.

    Tries every single cut point exactly, then every pair of cuts whose first
    point lies on a ``grid``-spaced lattice over the cycle arcs (the second cut
    is solved exactly). ``None`` means nothing was found at this grid; it does
    not prove that no equal split exists.
    """
    if grid < 2:
        raise ValueError("grid must be at least 2")
    if len(net.nodes) == 1 and len(net.arcs) == 1:
        return _semicircles(net)
    found = _single_cut_split(net)
    if found is not None:
        return found
    return _two_cut_split(net, grid)
