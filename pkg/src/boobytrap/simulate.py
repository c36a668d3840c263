"""Seeded Monte Carlo play of a defender strategy against an attacker strategy.

Trials run in fixed batches. Batch ``b`` draws from ``Philox(seed)`` jumped
``b`` times, so the result depends only on the seed and the batch size, never
on how batches are spread over workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import strategies as st
from .abstractgame import Z99
from .netmodel import EPS, Network, Point, Subnetwork, Walk

BATCH = 10_000

__all__ = ["PlayResult", "stream", "sample_defender", "sample_attacker", "play"]


def stream(seed: int, batch: int = 0) -> np.random.Generator:
    """Independent generator for one batch of trials."""
    return np.random.Generator(np.random.Philox(seed).jumped(batch))


# -- points as arrays ----------------------------------------------------------------


@dataclass
class _Points:
    """Trap locations for many trials: ``arc[i, j]``, ``offset[i, j]`` and ``node[i, j]`` (-1 if none)."""

    arc: np.ndarray
    offset: np.ndarray
    node: np.ndarray


def _node_ids(net: Network) -> dict[str, int]:
    return {n: i for i, n in enumerate(net.nodes)}


def _fixed(net: Network, p: Point) -> tuple[int, float, int]:
    if p.node is not None:
        a = net.incident[p.node][0]
        return net.arc_position(a.id), (0.0 if a.u == p.node else a.length), _node_ids(net)[p.node]
    return net.arc_position(p.arc), p.offset, -1


def _uniform_on(net: Network, region: Subnetwork, rng: np.random.Generator, shape) -> tuple[np.ndarray, np.ndarray]:
    frs = [f for f in region.fragments if f.hi - f.lo > EPS]
    widths = np.array([f.hi - f.lo for f in frs])
    pick = rng.choice(len(frs), size=shape, p=widths / widths.sum())
    lo = np.array([f.lo for f in frs])[pick]
    arcs = np.array([net.arc_position(f.arc) for f in frs])[pick]
    return arcs, lo + rng.random(shape) * widths[pick]


def _walk_table(net: Network, walk: Walk):
    bounds = walk._bounds(net)
    starts = np.array([b[2] for b in bounds])
    ends = np.array([b[3] for b in bounds])
    arcs = np.array([net.arc_position(b[0]) for b in bounds])
    fwd = np.array([b[1] for b in bounds])
    return starts, ends, arcs, fwd


def _along_walk(net: Network, walk: Walk, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    starts, ends, arcs, fwd = _walk_table(net, walk)
    s = s % 1.0 if walk.closed else np.clip(s, 0.0, 1.0)
    i = np.clip(np.searchsorted(ends, s, side="left"), 0, len(ends) - 1)
    t = np.clip(s - starts[i], 0.0, ends[i] - starts[i])
    off = np.where(fwd[i], t, (ends[i] - starts[i]) - t)
    return arcs[i], off


def _sample_many(net: Network, ds: st.DefenderStrategy, rng: np.random.Generator, n: int) -> _Points:
    k = ds.k
    probs = np.array([p for p, _ in ds.mixture])
    which = rng.choice(len(probs), size=n, p=probs / probs.sum())
    arc = np.zeros((n, k), dtype=int)
    off = np.zeros((n, k))
    node = np.full((n, k), -1, dtype=int)
    for r, (_, rule) in enumerate(ds.mixture):
        rows = np.flatnonzero(which == r)
        if not len(rows):
            continue
        if isinstance(rule, st.FixedPoints):
            for j, p in enumerate(rule.points):
                arc[rows, j], off[rows, j], node[rows, j] = _fixed(net, p)
        elif isinstance(rule, st.IndependentUniform):
            a, o = _uniform_on(net, rule.region, rng, (len(rows), k))
            arc[rows], off[rows] = a, o
        else:
            u = rng.random(len(rows)) / k
            s = u[:, None] + np.arange(k)[None, :] / k
            a, o = _along_walk(net, rule.walk, s)
            arc[rows], off[rows] = a, o
    return _Points(arc, off, node)


def _to_points(net: Network, pts: _Points, i: int) -> list[Point]:
    nodes = net.nodes
    out = []
    for j in range(pts.arc.shape[1]):
        if pts.node[i, j] >= 0:
            out.append(Point(node=nodes[pts.node[i, j]]))
        else:
            out.append(net.point(net.arcs[pts.arc[i, j]].id, float(pts.offset[i, j])))
    return out


def sample_defender(net: Network, ds: st.DefenderStrategy, rng: np.random.Generator) -> list[Point]:
    """One draw of the ``k`` trap positions."""
    return _to_points(net, _sample_many(net, ds, rng, 1), 0)


def sample_attacker(net: Network, attacker: st.AttackerStrategy, rng: np.random.Generator) -> Subnetwork:
    """One draw of the attacked set."""
    if isinstance(attacker, st.FiniteMixture):
        probs = np.array([p for p, _ in attacker.entries])
        return attacker.entries[int(rng.choice(len(probs), p=probs / probs.sum()))][1]
    c = float(rng.random())
    return attacker.walk.interval(net, c, c + attacker.length)


# -- vectorized hit tests --------------------------------------------------------------------


def _contains(net: Network, s: Subnetwork, pts: _Points) -> np.ndarray:
    """Whether each trap lies in ``s``, honoring open fragment ends: shape (trials, k)."""
    ids = _node_ids(net)
    node_in = np.zeros(len(net.nodes) + 1, dtype=bool)
    for n in s.nodes:
        node_in[ids[n]] = True
    hit = np.where(pts.node >= 0, node_in[pts.node], False)
    for f in s.fragments:
        on = (pts.node < 0) & (pts.arc == net.arc_position(f.arc))
        above = pts.offset > f.lo + EPS if not f.lo_closed else pts.offset >= f.lo - EPS
        below = pts.offset < f.hi - EPS if not f.hi_closed else pts.offset <= f.hi + EPS
        hit |= on & above & below
    return hit


def _walk_coordinates(net: Network, walk: Walk, pts: _Points) -> np.ndarray:
    starts, ends, arcs, fwd = _walk_table(net, walk)
    where = np.full(len(net.arcs), -1)
    where[arcs] = np.arange(len(arcs))
    i = where[pts.arc]
    length = ends[i] - starts[i]
    coord = starts[i] + np.where(fwd[i], pts.offset, length - pts.offset)
    for n_id in np.unique(pts.node[pts.node >= 0]):
        coord[pts.node == n_id] = walk.coordinate(net, Point(node=net.nodes[n_id]))
    return coord


def _batch_payoffs(net, ds, attacker, rng, n) -> np.ndarray:
    traps = _sample_many(net, ds, rng, n)
    if isinstance(attacker, st.FiniteMixture):
        probs = np.array([p for p, _ in attacker.entries])
        which = rng.choice(len(probs), size=n, p=probs / probs.sum())
        pay = np.zeros(n)
        for e, (_, s) in enumerate(attacker.entries):
            rows = np.flatnonzero(which == e)
            if not len(rows):
                continue
            sub = _Points(traps.arc[rows], traps.offset[rows], traps.node[rows])
            caught = _contains(net, s, sub).any(axis=1)
            pay[rows] = np.where(caught, 0.0, s.measure)
        return pay
    c = rng.random(n)
    coord = _walk_coordinates(net, attacker.walk, traps)
    gap = (coord - c[:, None]) % 1.0
    caught = ((gap <= attacker.length + EPS) | (gap >= 1.0 - EPS)).any(axis=1)
    return np.where(caught, 0.0, attacker.length)


@dataclass(frozen=True)
class PlayResult:
    mean: float
    halfwidth: float
    trials: int
    batch_means: tuple[float, ...]

    def contains(self, value: float) -> bool:
        return abs(self.mean - value) <= self.halfwidth


def play(net: Network, ds: st.DefenderStrategy, attacker: st.AttackerStrategy, trials: int, seed: int, batch: int = BATCH) -> PlayResult:
    """Mean attacker payoff over ``trials`` plays with its 99% confidence half-width."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    total = total_sq = 0.0
    means = []
    for b, start in enumerate(range(0, trials, batch)):
        n = min(batch, trials - start)
        pay = _batch_payoffs(net, ds, attacker, stream(seed, b), n)
        total += float(pay.sum())
        total_sq += float((pay * pay).sum())
        means.append(float(pay.mean()))
    mean = total / trials
    var = max(0.0, total_sq / trials - mean * mean) * trials / max(1, trials - 1)
    return PlayResult(mean, Z99 * (var / trials) ** 0.5, trials, tuple(means))
