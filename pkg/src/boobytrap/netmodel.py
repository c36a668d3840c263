"""Measured networks: topology, lengths, points, subnetworks and the text format.

A network is a connected multigraph whose arcs carry positive lengths. Every
network handed out by this module is normalized so that the arcs sum to 1;
the original total is kept in ``rescale_factor``.

Subnetworks are finite unions of arc fragments plus an explicit set of nodes.
Fragment ends may be open or closed, which matters only on measure-zero sets
but lets us represent true partitions (one half owns the boundary point).
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

TOL = 1e-9
EPS = 1e-12


class NetworkError(ValueError):
    """Invalid network or subnetwork."""


class NetworkFormatError(NetworkError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Arc:
    id: str
    u: str
    v: str
    length: float

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, node: str) -> str:
        return self.v if node == self.u else self.u


@dataclass(frozen=True, order=True)
class Point:
    """A node, or an interior point of an arc at ``offset`` from its ``u`` end.

    Use :meth:`Network.point` to build interior points; it canonicalizes
    offsets that land on an arc end to the node form.
    """

    node: str | None = None
    arc: str | None = None
    offset: float = 0.0

    @classmethod
    def at(cls, node: str) -> "Point":
        return cls(node=node)

    @property
    def is_node(self) -> bool:
        return self.node is not None

    def __str__(self) -> str:
        if self.node is not None:
            return f"node {self.node}"
        return f"arc {self.arc} @ {self.offset:.12g}"


@dataclass(frozen=True, order=True)
class Fragment:
    arc: str
    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, offset: float) -> bool:
        if self.lo + EPS < offset < self.hi - EPS:
            return True
        if abs(offset - self.lo) <= EPS and self.lo_closed:
            return True
        return abs(offset - self.hi) <= EPS and self.hi_closed


@dataclass(frozen=True)
class Subnetwork:
    """Canonical union of fragments and nodes; build with :func:`subnetwork`."""

    fragments: tuple[Fragment, ...] = ()
    nodes: frozenset[str] = frozenset()

    @property
    def measure(self) -> float:
        return float(sum(f.hi - f.lo for f in self.fragments))

    def on_arc(self, arc_id: str) -> tuple[Fragment, ...]:
        return tuple(f for f in self.fragments if f.arc == arc_id)

    def contains(self, p: Point) -> bool:
        if p.node is not None:
            return p.node in self.nodes
        return any(f.contains(p.offset) for f in self.fragments if f.arc == p.arc)


@dataclass(frozen=True)
class Network:
    nodes: tuple[str, ...]
    arcs: tuple[Arc, ...]
    rescale_factor: float = 1.0
    _arc_index: dict = field(default=None, init=False, repr=False, compare=False)
    _node_index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_arc_index", {a.id: i for i, a in enumerate(self.arcs)})
        object.__setattr__(self, "_node_index", {n: i for i, n in enumerate(self.nodes)})
        if len(self._arc_index) != len(self.arcs):
            raise NetworkError("duplicate arc id")
        if len(self._node_index) != len(self.nodes):
            raise NetworkError("duplicate node id")
        if not self.arcs:
            raise NetworkError("network has no arcs")
        for a in self.arcs:
            if a.u not in self._node_index or a.v not in self._node_index:
                raise NetworkError(f"arc {a.id} references an unknown node")
            if not a.length > 0:
                raise NetworkError(f"arc {a.id} has nonpositive length")
        if _count_groups(self.nodes, [(a.u, a.v) for a in self.arcs]) != 1:
            raise NetworkError("network is disconnected")

    # -- construction -----------------------------------------------------

    @classmethod
    def build(cls, nodes: Iterable[str], arcs: Iterable[tuple], normalize: bool = True) -> "Network":
        """Build from ``(id, u, v, length)`` tuples; lengths may be Fractions."""
        arcs = list(arcs)
        nodes = list(dict.fromkeys(nodes))
        seen = set(nodes)
        for _, u, v, _ in arcs:
            for x in (u, v):
                if x not in seen:
                    seen.add(x)
                    nodes.append(x)
        for aid, _, _, length in arcs:
            if not length > 0:
                raise NetworkError(f"arc {aid} has nonpositive length")
        total = sum(Fraction(length) for *_, length in arcs) if arcs else Fraction(0)
        scale = total if normalize and total > 0 else Fraction(1)
        built = tuple(Arc(str(i), str(u), str(v), float(Fraction(length) / scale)) for i, u, v, length in arcs)
        return cls(tuple(str(n) for n in nodes), built, float(scale))

    # -- lookup -----------------------------------------------------------

    def arc(self, arc_id: str) -> Arc:
        try:
            return self.arcs[self._arc_index[arc_id]]
        except KeyError:
            raise NetworkError(f"unknown arc {arc_id!r}") from None

    def arc_position(self, arc_id: str) -> int:
        return self._arc_index[arc_id]

    def node_position(self, node: str) -> int:
        return self._node_index[node]

    def has_node(self, node: str) -> bool:
        return node in self._node_index

    @property
    def total_length(self) -> float:
        return float(sum(a.length for a in self.arcs))

    @cached_property
    def incident(self) -> dict[str, tuple[Arc, ...]]:
        out: dict[str, list[Arc]] = {n: [] for n in self.nodes}
        for a in self.arcs:
            out[a.u].append(a)
            if not a.is_loop:
                out[a.v].append(a)
        return {n: tuple(v) for n, v in out.items()}

    def degree(self, node: str) -> int:
        return sum(2 if a.is_loop else 1 for a in self.incident[node])

    def point(self, arc_id: str, offset: float) -> Point:
        a = self.arc(arc_id)
        if offset < -TOL or offset > a.length + TOL:
            raise NetworkError(f"offset {offset} outside arc {arc_id}")
        if offset <= EPS:
            return Point(node=a.u)
        if offset >= a.length - EPS:
            return Point(node=a.v)
        return Point(arc=arc_id, offset=float(offset))

    def check_point(self, p: Point) -> None:
        if p.node is not None:
            if p.node not in self._node_index:
                raise NetworkError(f"unknown node {p.node!r}")
            return
        a = self.arc(p.arc)
        if not 0 < p.offset < a.length:
            raise NetworkError(f"offset {p.offset} not interior to arc {p.arc}")

    # -- shape predicates -------------------------------------------------

    @cached_property
    def is_tree(self) -> bool:
        return len(self.arcs) == len(self.nodes) - 1 and not any(a.is_loop for a in self.arcs)

    @cached_property
    def is_path(self) -> bool:
        return self.is_tree and all(self.degree(n) <= 2 for n in self.nodes)

    @cached_property
    def is_cycle(self) -> bool:
        return len(self.arcs) == len(self.nodes) and all(self.degree(n) == 2 for n in self.nodes)

    @cached_property
    def star_center(self) -> str | None:
        """The center node if this is a star with at least 3 arcs."""
        if not self.is_tree or len(self.arcs) < 3:
            return None
        hubs = [n for n in self.nodes if self.degree(n) > 1]
        if len(hubs) == 1 and self.degree(hubs[0]) == len(self.arcs):
            return hubs[0]
        return None

    def star_arms(self) -> list[tuple[Arc, bool]]:
        """Arms of a star as ``(arc, center_is_u)``, longest first."""
        c = self.star_center
        if c is None:
            raise NetworkError("network is not a star")
        arms = [(a, a.u == c) for a in self.arcs]
        return sorted(arms, key=lambda t: -t[0].length)

    def whole(self) -> Subnetwork:
        return Subnetwork(tuple(Fragment(a.id, 0.0, a.length) for a in self.arcs), frozenset(self.nodes))

    # -- metric -----------------------------------------------------------

    @cached_property
    def _node_distances(self) -> dict[str, dict[str, float]]:
        adj: dict[str, list[tuple[str, float]]] = {n: [] for n in self.nodes}
        for a in self.arcs:
            if not a.is_loop:
                adj[a.u].append((a.v, a.length))
                adj[a.v].append((a.u, a.length))
        out = {}
        for s in self.nodes:
            dist = {s: 0.0}
            heap = [(0.0, s)]
            while heap:
                d, x = heapq.heappop(heap)
                if d > dist[x]:
                    continue
                for y, w in adj[x]:
                    nd = d + w
                    if nd < dist.get(y, np.inf):
                        dist[y] = nd
                        heapq.heappush(heap, (nd, y))
            out[s] = dist
        return out

    def _seeds(self, p: Point) -> list[tuple[str, float]]:
        if p.node is not None:
            return [(p.node, 0.0)]
        a = self.arc(p.arc)
        return [(a.u, p.offset), (a.v, a.length - p.offset)]


def _count_groups(items: Sequence[str], links: Iterable[tuple[str, str]]) -> int:
    parent = {x: x for x in items}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in links:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(x) for x in items})


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def groups(self) -> list[list]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


# -- subnetworks -----------------------------------------------------------


def subnetwork(
    net: Network,
    fragments: Iterable[Fragment | tuple] = (),
    nodes: Iterable[str] = (),
) -> Subnetwork:
    """Canonicalize fragments and nodes into a :class:`Subnetwork`.

    Fragments may be given as ``Fragment`` or ``(arc, lo, hi[, lo_closed, hi_closed])``.
    A closed fragment end sitting on an arc end pulls that node into the set;
    touching or overlapping fragments on one arc are merged.
    """
    node_set = set(nodes)
    for n in node_set:
        if not net.has_node(n):
            raise NetworkError(f"unknown node {n!r}")
    per_arc: dict[str, list[Fragment]] = {}
    for f in fragments:
        if not isinstance(f, Fragment):
            f = Fragment(*f)
        a = net.arc(f.arc)
        lo, hi = max(0.0, float(f.lo)), min(a.length, float(f.hi))
        if lo <= EPS:
            lo = 0.0
        if hi >= a.length - EPS:
            hi = a.length
        if hi < lo - EPS:
            continue
        if hi - lo <= EPS:
            if not (f.lo_closed and f.hi_closed):
                continue
            lo = hi = lo if lo not in (0.0, a.length) else lo
            if lo == 0.0:
                node_set.add(a.u)
                continue
            if lo == a.length:
                node_set.add(a.v)
                continue
        lo_c, hi_c = f.lo_closed, f.hi_closed
        if lo == 0.0 and lo_c:
            node_set.add(a.u)
        if hi == a.length and hi_c:
            node_set.add(a.v)
        per_arc.setdefault(f.arc, []).append(Fragment(f.arc, lo, hi, lo_c, hi_c))

    out: list[Fragment] = []
    for arc_id in sorted(per_arc, key=net.arc_position):
        a = net.arc(arc_id)
        frs = sorted(per_arc[arc_id], key=lambda f: (f.lo, not f.lo_closed))
        merged: list[Fragment] = []
        for f in frs:
            if merged:
                cur = merged[-1]
                touching = f.lo < cur.hi - EPS or (abs(f.lo - cur.hi) <= EPS and (cur.hi_closed or f.lo_closed))
                if touching:
                    if f.hi > cur.hi + EPS:
                        hi, hi_c = f.hi, f.hi_closed
                    elif abs(f.hi - cur.hi) <= EPS:
                        hi, hi_c = cur.hi, cur.hi_closed or f.hi_closed
                    else:
                        hi, hi_c = cur.hi, cur.hi_closed
                    lo_c = cur.lo_closed or (abs(f.lo - cur.lo) <= EPS and f.lo_closed)
                    merged[-1] = Fragment(arc_id, cur.lo, hi, lo_c, hi_c)
                    continue
            merged.append(f)
        for f in merged:
            lo_c = (a.u in node_set) if f.lo == 0.0 else f.lo_closed
            hi_c = (a.v in node_set) if f.hi == a.length else f.hi_closed
            out.append(Fragment(arc_id, f.lo, f.hi, lo_c, hi_c))
    return Subnetwork(tuple(out), frozenset(node_set))


def canonical(net: Network, s: Subnetwork) -> Subnetwork:
    return subnetwork(net, s.fragments, s.nodes)


def union(net: Network, *parts: Subnetwork) -> Subnetwork:
    return subnetwork(net, [f for p in parts for f in p.fragments], [n for p in parts for n in p.nodes])


def measure(s: Subnetwork) -> float:
    return s.measure


def contains(s: Subnetwork, p: Point) -> bool:
    return s.contains(p)


def is_connected(net: Network, s: Subnetwork) -> bool:
    """Topological connectivity; a fragment joins a node only if the node is in ``s``."""
    uf = _UnionFind()
    for n in s.nodes:
        uf.add(("n", n))
    for i, f in enumerate(s.fragments):
        a = net.arc(f.arc)
        uf.add(("f", i))
        if f.lo == 0.0 and a.u in s.nodes:
            uf.union(("f", i), ("n", a.u))
        if f.hi == a.length and a.v in s.nodes:
            uf.union(("f", i), ("n", a.v))
    return len(uf.groups()) <= 1


def disjoint(a: Subnetwork, b: Subnetwork) -> bool:
    """True when ``a`` and ``b`` share no point at all (not even a boundary point)."""
    if a.nodes & b.nodes:
        return False
    for f in a.fragments:
        for g in b.fragments:
            if f.arc != g.arc:
                continue
            if min(f.hi, g.hi) - max(f.lo, g.lo) > EPS:
                return False
            for x in (g.lo, g.hi):
                if f.contains(x) and g.contains(x):
                    return False
    return True


def intersection_measure(a: Subnetwork, b: Subnetwork) -> float:
    total = 0.0
    for f in a.fragments:
        for g in b.fragments:
            if f.arc == g.arc:
                total += max(0.0, min(f.hi, g.hi) - max(f.lo, g.lo))
    return total


def distance(net: Network, p: Point, q: Point) -> float:
    net.check_point(p)
    net.check_point(q)
    if p == q:
        return 0.0
    nd = net._node_distances
    best = np.inf
    for x, dx in net._seeds(p):
        for y, dy in net._seeds(q):
            best = min(best, dx + nd[x].get(y, np.inf) + dy)
    if p.arc is not None and p.arc == q.arc:
        best = min(best, abs(p.offset - q.offset))
    return float(best)


def components_after_removal(net: Network, x: Point) -> list[tuple[Subnetwork, float]]:
    """Connected components of the network with ``x`` removed, longest first."""
    return components_without(net, [x])


def components_without(net: Network, points: Iterable[Point]) -> list[tuple[Subnetwork, float]]:
    """Connected components left after deleting every point in ``points``."""
    removed_nodes: set[str] = set()
    cuts: dict[str, set[float]] = {}
    for p in points:
        net.check_point(p)
        if p.node is not None:
            removed_nodes.add(p.node)
        else:
            cuts.setdefault(p.arc, set()).add(p.offset)
    uf = _UnionFind()
    for n in net.nodes:
        if n not in removed_nodes:
            uf.add(("n", n))
    frags: list[Fragment] = []
    for a in net.arcs:
        bounds = [0.0] + sorted(cuts.get(a.id, ())) + [a.length]
        last = len(bounds) - 2
        for i in range(last + 1):
            lo_node = a.u if i == 0 and a.u not in removed_nodes else None
            hi_node = a.v if i == last and a.v not in removed_nodes else None
            key = ("f", len(frags))
            frags.append(Fragment(a.id, bounds[i], bounds[i + 1], lo_node is not None, hi_node is not None))
            uf.add(key)
            for n in (lo_node, hi_node):
                if n is not None:
                    uf.union(key, ("n", n))
    out = []
    for group in uf.groups():
        nodes = [x[1] for x in group if x[0] == "n"]
        s = subnetwork(net, [frags[x[1]] for x in group if x[0] == "f"], nodes)
        out.append((s, s.measure))
    out.sort(key=lambda t: -t[1])
    return out


def component_lengths_without_node(net: Network, node: str) -> list[float]:
    """Lengths of the components left after deleting ``node``, longest first.

    Same answer as ``components_after_removal`` at a node, without building
    the subnetworks.
    """
    parent = {n: n for n in net.nodes if n != node}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    loose: list[float] = []
    for a in net.arcs:
        if a.u != node and a.v != node:
            ra, rb = find(a.u), find(a.v)
            if ra != rb:
                parent[ra] = rb
        elif a.u == node and a.v == node:
            loose.append(a.length)
    totals: dict[str, float] = {}
    for a in net.arcs:
        if a.u == node and a.v == node:
            continue
        end = a.v if a.u == node else a.u
        r = find(end)
        totals[r] = totals.get(r, 0.0) + a.length
    return sorted(list(totals.values()) + loose, reverse=True)


def largest_component(net: Network, x: Point) -> float:
    """``h(x)``: length of the largest component left after removing ``x``."""
    return components_after_removal(net, x)[0][1]


def bridges(net: Network) -> list[Arc]:
    out = []
    for a in net.arcs:
        if a.is_loop:
            continue
        others = [(b.u, b.v) for b in net.arcs if b.id != a.id]
        if _count_groups(net.nodes, others) > 1:
            out.append(a)
    return out


def cut_nodes(net: Network) -> list[str]:
    return [n for n in net.nodes if len(component_lengths_without_node(net, n)) > 1]


# -- walks along paths and cycles -------------------------------------------


@dataclass(frozen=True)
class Walk:
    """Arc-length parametrization of a path or cycle network by ``s`` in [0, 1]."""

    steps: tuple[tuple[str, bool], ...]
    closed: bool
    start: str

    @classmethod
    def of(cls, net: Network) -> "Walk":
        if net.is_cycle:
            start = net.nodes[0]
            closed = True
        elif net.is_path:
            start = next(n for n in net.nodes if net.degree(n) == 1)
            closed = False
        else:
            raise NetworkError("network is neither a path nor a cycle")
        steps, used, cur = [], set(), start
        while len(steps) < len(net.arcs):
            a = next(b for b in net.incident[cur] if b.id not in used)
            used.add(a.id)
            forward = a.u == cur
            steps.append((a.id, forward))
            cur = a.v if forward else a.u
        return cls(tuple(steps), closed, start)

    def _bounds(self, net: Network) -> list[tuple[str, bool, float, float]]:
        out, s = [], 0.0
        for aid, fwd in self.steps:
            length = net.arc(aid).length
            out.append((aid, fwd, s, s + length))
            s += length
        return out

    def point_at(self, net: Network, s: float) -> Point:
        if self.closed:
            s = s % 1.0
        s = min(max(s, 0.0), 1.0)
        for aid, fwd, a0, a1 in self._bounds(net):
            if s <= a1 + EPS:
                t = min(max(s - a0, 0.0), a1 - a0)
                return net.point(aid, t if fwd else (a1 - a0) - t)
        aid, fwd, a0, a1 = self._bounds(net)[-1]
        return net.point(aid, (a1 - a0) if fwd else 0.0)

    def coordinate(self, net: Network, p: Point) -> float:
        for aid, fwd, a0, a1 in self._bounds(net):
            a = net.arc(aid)
            if p.arc == aid:
                return a0 + (p.offset if fwd else a.length - p.offset)
            if p.node is not None:
                first = a.u if fwd else a.v
                if p.node == first:
                    return a0
        if p.node is not None and not self.closed:
            return 1.0
        raise NetworkError(f"point {p} not on walk")

    def interval(
        self, net: Network, lo: float, hi: float, lo_closed: bool = True, hi_closed: bool = True
    ) -> Subnetwork:
        """Subnetwork covering walk coordinates [lo, hi] (wrapping on cycles)."""
        if self.closed and hi - lo >= 1.0 - EPS:
            return net.whole()
        if self.closed:
            width = hi - lo
            lo = lo % 1.0
            hi = lo + width
            if hi > 1.0 + EPS:
                a = self.interval(net, lo, 1.0, lo_closed, True)
                b = self.interval(net, 0.0, hi - 1.0, True, hi_closed)
                return union(net, a, b)
            hi = min(hi, 1.0)
        frags, nodes = [], []
        for aid, fwd, a0, a1 in self._bounds(net):
            x0, x1 = max(lo, a0), min(hi, a1)
            if x1 < x0 - EPS:
                continue
            c0 = lo_closed if abs(x0 - lo) <= EPS else True
            c1 = hi_closed if abs(x1 - hi) <= EPS else True
            length = a1 - a0
            if fwd:
                frags.append(Fragment(aid, x0 - a0, x1 - a0, c0, c1))
            else:
                frags.append(Fragment(aid, length - (x1 - a0), length - (x0 - a0), c1, c0))
        return subnetwork(net, frags, nodes)


# -- text format -----------------------------------------------------------

_TOKEN = re.compile(r"\S+")


def _parse_length(tok: str, line: int, col: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise NetworkFormatError(f"bad length {tok!r}", line, col) from None


def parse_network(text: str) -> Network:
    """Parse the line-oriented ``node``/``arc`` format; lengths are normalized."""
    nodes: list[str] = []
    arcs: list[tuple[str, str, str, Fraction]] = []
    arc_ids: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        if not toks:
            continue
        kw, col = toks[0]
        if kw == "node":
            if len(toks) != 2:
                raise NetworkFormatError("expected 'node <id>'", lineno, col)
            if toks[1][0] not in nodes:
                nodes.append(toks[1][0])
        elif kw == "arc":
            if len(toks) != 5:
                raise NetworkFormatError("expected 'arc <id> <u> <v> <length>'", lineno, col)
            aid = toks[1][0]
            if aid in arc_ids:
                raise NetworkFormatError(f"duplicate arc id {aid!r}", lineno, toks[1][1])
            length = _parse_length(toks[4][0], lineno, toks[4][1])
            if length <= 0:
                raise NetworkFormatError(f"nonpositive length {toks[4][0]}", lineno, toks[4][1])
            arc_ids.add(aid)
            arcs.append((aid, toks[2][0], toks[3][0], length))
        else:
            raise NetworkFormatError(f"unknown keyword {kw!r}", lineno, col)
    if not arcs:
        raise NetworkError("network has no arcs")
    return Network.build(nodes, arcs)


def format_network(net: Network, original_lengths: bool = False) -> str:
    lines = [f"node {n}" for n in net.nodes]
    scale = net.rescale_factor if original_lengths else 1.0
    lines += [f"arc {a.id} {a.u} {a.v} {a.length * scale!r}" for a in net.arcs]
    return "\n".join(lines) + "\n"


_FLAGS = {"[]": (True, True), "[)": (True, False), "(]": (False, True), "()": (False, False)}


def format_subnetwork(s: Subnetwork) -> str:
    lines = []
    for f in s.fragments:
        flag = next(k for k, v in _FLAGS.items() if v == (f.lo_closed, f.hi_closed))
        suffix = "" if flag == "[]" else f" {flag}"
        lines.append(f"frag {f.arc} {f.lo!r} {f.hi!r}{suffix}")
    lines += [f"node {n}" for n in sorted(s.nodes)]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_subnetwork(text: str, net: Network) -> Subnetwork:
    frags, nodes = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(raw.split("#", 1)[0])]
        if not toks:
            continue
        kw, col = toks[0]
        if kw == "node" and len(toks) == 2:
            nodes.append(toks[1][0])
        elif kw == "frag" and len(toks) in (4, 5):
            flags = _FLAGS.get(toks[4][0]) if len(toks) == 5 else (True, True)
            if flags is None:
                raise NetworkFormatError(f"bad end flags {toks[4][0]!r}", lineno, toks[4][1])
            lo = float(_parse_length(toks[2][0], lineno, toks[2][1]))
            hi = float(_parse_length(toks[3][0], lineno, toks[3][1]))
            frags.append(Fragment(toks[1][0], lo, hi, *flags))
        else:
            raise NetworkFormatError("expected 'frag <arc> <lo> <hi> [flags]' or 'node <id>'", lineno, col)
    return subnetwork(net, frags, nodes)


def load_network(path) -> Network:
    with open(path, encoding="utf-8") as fh:
        return parse_network(fh.read())


# -- generators ------------------------------------------------------------


def cycle(n_arcs: int = 1) -> Network:
    if n_arcs < 1:
        raise NetworkError("a cycle needs at least one arc")
    nodes = [f"n{i}" for i in range(n_arcs)]
    arcs = [(f"a{i}", nodes[i], nodes[(i + 1) % n_arcs], 1) for i in range(n_arcs)]
    return Network.build(nodes, arcs)


def path(n_arcs: int = 1, lengths: Sequence[float] | None = None) -> Network:
    if lengths is None:
        lengths = [1] * n_arcs
    if not lengths:
        raise NetworkError("empty length list")
    nodes = [f"n{i}" for i in range(len(lengths) + 1)]
    return Network.build(nodes, [(f"a{i}", nodes[i], nodes[i + 1], x) for i, x in enumerate(lengths)])


def star(lengths: Sequence[float]) -> Network:
    if not lengths:
        raise NetworkError("empty length list")
    if len(lengths) < 3:
        raise NetworkError("a star needs at least 3 arcs")
    if any(not x > 0 for x in lengths):
        raise NetworkError("star lengths must be positive")
    arcs = [(f"e{i + 1}", "c", f"l{i + 1}", x) for i, x in enumerate(lengths)]
    return Network.build(["c"], arcs)


def symmetric_star(n: int) -> Network:
    if n < 3:
        raise NetworkError("a star needs at least 3 arcs")
    return star([Fraction(1, n)] * n)


def random_tree(n: int, seed: int, lengths: str = "uniform") -> Network:
    """Random labelled tree on ``n`` nodes (Pruefer code) with random arc lengths."""
    if n < 2:
        raise NetworkError("a tree needs at least 2 nodes")
    rng = np.random.default_rng(seed)
    if n == 2:
        edges = [(0, 1)]
    else:
        import networkx as nx

        code = [int(x) for x in rng.integers(0, n, size=n - 2)]
        edges = sorted(tuple(sorted(e)) for e in nx.from_prufer_sequence(code).edges())
    if lengths == "uniform":
        ws = rng.uniform(0.05, 1.0, size=len(edges))
    else:
        ws = rng.exponential(1.0, size=len(edges)) + 1e-3
    nodes = [f"v{i}" for i in range(n)]
    return Network.build(nodes, [(f"a{i}", nodes[u], nodes[v], float(w)) for i, ((u, v), w) in enumerate(zip(edges, ws))])


def random_two_connected(n: int, chords: int, seed: int) -> Network:
    """A cycle on ``n`` nodes plus ``chords`` random extra arcs (parallel arcs allowed)."""
    if n < 2:
        raise NetworkError("need at least 2 nodes")
    rng = np.random.default_rng(seed)
    nodes = [f"v{i}" for i in range(n)]
    arcs = [(f"a{i}", nodes[i], nodes[(i + 1) % n], float(rng.uniform(0.05, 1.0))) for i in range(n)]
    for j in range(chords):
        u, v = rng.choice(n, size=2, replace=False)
        arcs.append((f"a{n + j}", nodes[int(u)], nodes[int(v)], float(rng.uniform(0.05, 1.0))))
    return Network.build(nodes, arcs)


def generate(kind: str, **params) -> Network:
    """Dispatch to a named generator: cycle, path, star, symmetric_star, random_tree."""
    makers = {
        "cycle": cycle,
        "path": path,
        "star": star,
        "symmetric_star": symmetric_star,
        "random_tree": random_tree,
        "random_two_connected": random_two_connected,
    }
    try:
        return makers[kind.replace("-", "_")](**params)
    except KeyError:
        raise NetworkError(f"unknown network kind {kind!r}") from None
