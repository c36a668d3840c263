"""Exact best replies on a cell grid.

The attacker's reply is a connected union of closed cells. On paths and
cycles those are runs of consecutive cells along the walk, few enough to
score one by one. Elsewhere we enumerate a skeleton: the set ``T`` of nodes
the reply touches and the arcs ``W`` it takes whole. Everything else is a
prefix or suffix of an arc hanging off ``T``, chosen independently per arc.
Scores are increasing in length and decreasing in every trap-mass feature,
so each arc only contributes its Pareto front of (length, masses), and fronts
combine by Minkowski sums.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .. import strategies as st
from ..netmodel import EPS, Network, NetworkError, Point, Subnetwork, Walk
from .cells import CellGrid

Score = Callable[[np.ndarray], np.ndarray]


class SkeletonLimit(OverflowError):
    """Too many node sets for the skeleton search."""


# -- Pareto fronts ---------------------------------------------------------------


def pareto(P: np.ndarray) -> np.ndarray:
    """Row indices of ``P`` not dominated (column 0 maximized, the rest minimized)."""
    n, d = P.shape
    if n <= 1:
        return np.arange(n)
    order = np.lexsort(tuple(P[:, j] for j in range(d - 1, 0, -1)) + (-P[:, 0],))
    Q = P[order]
    if d == 1:
        return order[:1]
    if d == 2:
        run = np.minimum.accumulate(Q[:, 1])
        prev = np.concatenate([[np.inf], run[:-1]])
        return order[Q[:, 1] < prev - 1e-15]
    keep = []
    kept_rows = np.empty((0, d))
    for i in range(n):
        row = Q[i]
        if len(kept_rows) and np.any(np.all(kept_rows[:, 1:] <= row[1:] + 1e-15, axis=1)):
            continue
        keep.append(i)
        kept_rows = np.vstack([kept_rows, row])
    return order[np.array(keep, dtype=int)]


def merge(A: np.ndarray, B: np.ndarray):
    """Pareto front of the Minkowski sum, with source row indices."""
    S = (A[:, None, :] + B[None, :, :]).reshape(-1, A.shape[1])
    keep = pareto(S)
    return S[keep], keep // len(B), keep % len(B)


# -- per-arc option fronts -----------------------------------------------------------


@dataclass
class _ArcTable:
    first: int
    count: int
    prefix: np.ndarray  # (count+1, D): features of the first i cells
    suffix: np.ndarray  # (count+1, D): features of the last j cells
    max_pre: int  # prefix cells usable before the first forbidden cell
    max_suf: int

    @property
    def full_ok(self) -> bool:
        return self.max_pre == self.count

    def front(self, pre: bool, suf: bool, full: bool):
        """Front over prefixes (if ``pre``), suffixes (if ``suf``), both, and optionally the whole arc."""
        c = self.count
        labels, rows = [], []
        imax = min(self.max_pre, c - 1) if pre else 0
        jmax = min(self.max_suf, c - 1) if suf else 0
        for i in range(imax + 1):
            top = min(jmax, c - 1 - i)
            for j in range(top + 1):
                labels.append((i, j))
        rows = np.array([self.prefix[i] + self.suffix[j] for i, j in labels])
        if full and self.full_ok:
            labels.append((c, 0))
            rows = np.vstack([rows, self.prefix[c]])
        keep = pareto(rows)
        return rows[keep], [labels[i] for i in keep]

    def cells(self, label) -> list[int]:
        i, j = label
        out = list(range(self.first, self.first + min(i, self.count)))
        out += list(range(self.first + self.count - j, self.first + self.count))
        return sorted(set(out))


def _tables(grid: CellGrid, feats: np.ndarray, forbidden: np.ndarray) -> list[_ArcTable]:
    out = []
    for ac in grid.arcs:
        idx = np.arange(ac.first, ac.first + ac.count)
        f = feats[idx]
        zero = np.zeros((1, feats.shape[1]))
        prefix = np.vstack([zero, np.cumsum(f, axis=0)])
        suffix = np.vstack([zero, np.cumsum(f[::-1], axis=0)])
        bad = np.flatnonzero(forbidden[idx])
        max_pre = int(bad[0]) if len(bad) else ac.count
        max_suf = int(ac.count - 1 - bad[-1]) if len(bad) else ac.count
        out.append(_ArcTable(ac.first, ac.count, prefix, suffix, max_pre, max_suf))
    return out


def _connected(nodes: Sequence[str], edges) -> bool:
    nodes = list(nodes)
    if len(nodes) <= 1:
        return True
    seen, stack = {nodes[0]}, [nodes[0]]
    adj: dict[str, list[str]] = {n: [] for n in nodes}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(nodes)


def _node_sets(net: Network, banned: set[str], limit: int) -> list[frozenset[str]]:
    """Connected node sets avoiding ``banned`` (arcs only connect through non-loop arcs)."""
    nodes = [n for n in net.nodes if n not in banned]
    pos = {n: i for i, n in enumerate(nodes)}
    adj = [0] * len(nodes)
    for a in net.arcs:
        if not a.is_loop and a.u in pos and a.v in pos:
            adj[pos[a.u]] |= 1 << pos[a.v]
            adj[pos[a.v]] |= 1 << pos[a.u]
    out = []
    for v in range(len(nodes)):
        allowed = ~((2 << v) - 1)
        start = 1 << v
        stack = [(start, adj[v] & allowed, adj[v] | start)]
        out.append(start)
        while stack:
            sub, ext, nb = stack[-1]
            if not ext:
                stack.pop()
                continue
            low = ext & -ext
            w = low.bit_length() - 1
            ext ^= low
            stack[-1] = (sub, ext, nb)
            new = sub | low
            out.append(new)
            if len(out) > limit:
                raise SkeletonLimit(f"more than {limit} connected node sets")
            stack.append((new, ext | (adj[w] & ~nb & allowed), nb | adj[w]))
    return [frozenset(nodes[i] for i in range(len(nodes)) if s >> i & 1) for s in out]


@dataclass(order=True)
class _Leaf:
    score: float
    key: int
    T: frozenset = None
    W: tuple = ()


def skeleton_best(
    grid: CellGrid,
    feats: np.ndarray,
    score: Score,
    forbidden: np.ndarray | None = None,
    banned_nodes: set[str] | None = None,
    node_feats: dict[str, np.ndarray] | None = None,
    top: int = 1,
    node_set_limit: int = 200_000,
) -> list[tuple[float, list[int]]]:
    """Best connected cell sets for a monotone ``score`` of summed cell features.

    ``feats[c]`` is the feature row of cell ``c``; column 0 must be its length.
    ``node_feats`` adds a row for every node the set touches.
    Returns up to ``top`` (score, cells) pairs from distinct skeletons, best first.
    """
    net = grid.net
    forbidden = np.zeros(grid.size, dtype=bool) if forbidden is None else forbidden
    banned = set(banned_nodes or ())
    tables = _tables(grid, feats, forbidden)
    node_feats = node_feats or {}
    leaves: list[_Leaf] = []
    counter = 0

    def offer(value, T, W, extra=None):
        nonlocal counter
        counter += 1
        item = _Leaf(value, counter, T, W)
        if extra is not None:
            item.W = extra
        if len(leaves) < top:
            heapq.heappush(leaves, item)
        elif value > leaves[0].score:
            heapq.heapreplace(leaves, item)

    # sets touching no node: a run of interior cells on a single arc
    for ai, t in enumerate(tables):
        c = t.count
        for lo in range(1, c - 1):
            for hi in range(lo, c - 1):
                if forbidden[t.first + lo : t.first + hi + 1].any():
                    break
                vec = t.prefix[hi + 1] - t.prefix[lo]
                offer(float(score(vec[None, :])[0]), None, None, extra=("run", ai, lo, hi))

    arc_index = {a.id: i for i, a in enumerate(net.arcs)}
    for T in _node_sets(net, banned, node_set_limit):
        hanging, inside = [], []
        for a in net.arcs:
            ai = arc_index[a.id]
            if a.is_loop:
                if a.u in T:
                    hanging.append((ai, True, True, True))
            elif a.u in T and a.v in T:
                inside.append(ai)
            elif a.u in T:
                hanging.append((ai, True, False, False))
            elif a.v in T:
                hanging.append((ai, False, True, False))
        base = np.zeros((1, feats.shape[1]))
        if node_feats:
            base = base + sum((node_feats[v] for v in T if v in node_feats), np.zeros(feats.shape[1]))
        for ai, pre, suf, full in hanging:
            base = merge(base, tables[ai].front(pre, suf, full)[0])[0]
        pieces = {ai: tables[ai].front(True, True, False)[0] for ai in inside}
        ends = {ai: (net.arcs[ai].u, net.arcs[ai].v) for ai in inside}

        def dfs(i, front, whole):
            rest = [ends[aj] for aj in inside[i:] if tables[aj].full_ok]
            if not _connected(T, [ends[aj] for aj in whole] + rest):
                return
            if i == len(inside):
                offer(float(score(front).max()), T, tuple(whole))
                return
            ai = inside[i]
            if tables[ai].full_ok:
                dfs(i + 1, front + tables[ai].prefix[-1], whole + [ai])
            dfs(i + 1, merge(front, pieces[ai])[0], whole)

        dfs(0, base, [])

    out = []
    for leaf in sorted(leaves, reverse=True):
        out.append((leaf.score, _rebuild(grid, tables, feats, score, leaf, node_feats)))
    return out


def _rebuild(grid, tables, feats, score, leaf: _Leaf, node_feats) -> list[int]:
    net = grid.net
    if leaf.T is None:
        _, ai, lo, hi = leaf.W
        return list(range(tables[ai].first + lo, tables[ai].first + hi + 1))
    T, whole = leaf.T, set(leaf.W)
    parts = []
    for ai, a in enumerate(net.arcs):
        t = tables[ai]
        if ai in whole:
            parts.append((ai, None, [(t.count, 0)]))
        elif a.is_loop and a.u in T:
            parts.append((ai,) + t.front(True, True, True))
        elif not a.is_loop and a.u in T and a.v in T:
            parts.append((ai,) + t.front(True, True, False))
        elif not a.is_loop and a.u in T:
            parts.append((ai,) + t.front(True, False, False))
        elif not a.is_loop and a.v in T:
            parts.append((ai,) + t.front(False, True, False))
    front = np.zeros((1, feats.shape[1]))
    front = front + sum((node_feats[v] for v in T if v in node_feats), np.zeros(feats.shape[1]))
    trace = []
    for ai, rows, labels in parts:
        if rows is None:
            rows = tables[ai].prefix[-1][None, :]
        front, ia, ib = merge(front, rows)
        trace.append((ai, labels, ia, ib))
    row = int(np.argmax(score(front)))
    cells: list[int] = []
    for ai, labels, ia, ib in reversed(trace):
        cells += tables[ai].cells(labels[ib[row]])
        row = ia[row]
    if not cells:
        # the node alone: any one cell touching it keeps the reply nonempty but it scores 0
        return []
    return sorted(cells)


# -- attacker best reply to a defender strategy --------------------------------------


def _walk_runs(grid: CellGrid, walk: Walk) -> list[list[int]]:
    order: list[int] = []
    for aid, fwd in walk.steps:
        ac = next(x for x in grid.arcs if x.arc == aid)
        ids = list(range(ac.first, ac.first + ac.count))
        order += ids if fwd else ids[::-1]
    n = len(order)
    runs = []
    if walk.closed:
        runs.append(order)
        for s in range(n):
            for length in range(1, n):
                runs.append([order[(s + i) % n] for i in range(length)])
    else:
        for s in range(n):
            for e in range(s, n):
                runs.append(order[s : e + 1])
    return runs


def _defender_score(grid: CellGrid, ds: st.DefenderStrategy):
    """Features and per-split scores for a strategy made of atoms and uniform rules."""
    regions: list[Subnetwork] = []
    uniform_terms: list[tuple[int, float, int]] = []
    fixed_rules: list[tuple[float, tuple[Point, ...]]] = []
    for p, rule in ds.mixture:
        if isinstance(rule, st.IndependentUniform):
            if rule.region not in regions:
                regions.append(rule.region)
            uniform_terms.append((regions.index(rule.region), p, rule.count))
        elif isinstance(rule, st.FixedPoints):
            fixed_rules.append((p, rule.points))
        else:
            raise NetworkError("comb placements need a path or cycle network")
    feats = np.column_stack([grid.lengths] + [grid.region_weights(r) for r in regions])
    atoms = sorted({x for _, pts in fixed_rules for x in pts})
    return feats, uniform_terms, fixed_rules, atoms


def best_response_attacker(net: Network, ds: st.DefenderStrategy, m: int) -> tuple[Subnetwork, float]:
    """Connected union of closed grid cells maximizing the attacker's expected payoff."""
    grid = CellGrid(net, m)
    if net.is_path or net.is_cycle:
        best_s, best_v = None, -1.0
        for run in _walk_runs(grid, Walk.of(net)):
            s = grid.to_subnetwork(run)
            v = st.expected_payoff(net, ds, s)
            if v > best_v:
                best_s, best_v = s, v
        return best_s, best_v

    feats, uniform_terms, fixed_rules, atoms = _defender_score(grid, ds)
    best_cells, best_v = None, -1.0
    for r in range(len(atoms) + 1):
        for hit in combinations(atoms, r):
            hit = set(hit)
            avoided = [x for x in atoms if x not in hit]
            forbidden = np.zeros(grid.size, dtype=bool)
            for x in avoided:
                forbidden[grid.cells_containing(x)] = True
            banned = {x.node for x in avoided if x.node is not None}
            const = sum(p for p, pts in fixed_rules if not (set(pts) & hit))

            def score(P, const=const):
                total = np.full(len(P), const)
                for col, p, k in uniform_terms:
                    total = total + p * np.clip(1.0 - P[:, 1 + col], 0.0, None) ** k
                return P[:, 0] * total

            found = skeleton_best(grid, feats, score, forbidden, banned, top=1)
            if found and found[0][0] > best_v:
                best_v, best_cells = found[0]
    s = grid.to_subnetwork(best_cells or [])
    return s, st.expected_payoff(net, ds, s)


# -- defender best reply to an attacker strategy ------------------------------------------


def best_response_defender(net: Network, attacker: st.AttackerStrategy, m: int, k: int = 1) -> tuple[tuple[Point, ...], float]:
    """Trap positions on the grid minimizing the attacker's expected payoff."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if isinstance(attacker, st.SlidingInterval):
        # windows of length l behind each trap can be made disjoint while k l <= 1
        w = attacker.walk
        pts = tuple(w.point_at(net, i / k) for i in range(k))
        return pts, st.attacker_expected_payoff(net, attacker, pts)
    grid = CellGrid(net, m)
    pts = grid.grid_points()
    values = np.array([p * s.measure for p, s in attacker.entries])
    hits = np.array([[s.contains(x) for _, s in attacker.entries] for x in pts], dtype=float)
    total = values.sum()
    if k == 1:
        pay = total - hits @ values
        i = int(np.argmin(pay))
        return (pts[i],), float(pay[i])
    if k == 2:
        single = hits @ values
        both = (hits * values) @ hits.T
        pay = total - (single[:, None] + single[None, :] - both)
        i, j = np.unravel_index(int(np.argmin(pay)), pay.shape)
        return (pts[i], pts[j]), float(pay[i, j])
    best = (np.inf, ())
    if len(pts) > 200:
        raise OverflowError("exhaustive search over trap triples is limited to 200 grid points")
    for combo in combinations(range(len(pts)), k):
        covered = hits[list(combo)].max(axis=0)
        v = total - covered @ values
        if v < best[0]:
            best = (v, tuple(pts[i] for i in combo))
    return best[1], float(best[0])
