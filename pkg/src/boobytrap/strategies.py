"""Mixed strategies for both players, the consolidation payoffs and exact
evaluation of a strategy against a fixed reply.

Probabilities, lengths and guarantees are floats. A strategy's ``guarantee``
is the bound its constructor promises: for the defender an upper bound on the
attacker's expected payoff, for the attacker a lower bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence, Union

from . import abstractgame
from .centroid import CentroidInfo
from .netmodel import (
    EPS,
    TOL,
    Fragment,
    Network,
    NetworkError,
    Point,
    Subnetwork,
    Walk,
    disjoint,
    intersection_measure,
    is_connected,
    star,
    subnetwork,
    symmetric_star,
    union,
)

TIE = 1e-12


# -- placement rules and strategies -----------------------------------------


@dataclass(frozen=True)
class FixedPoints:
    points: tuple[Point, ...]

    @property
    def count(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class IndependentUniform:
    """``count`` traps, each independently uniform over ``region``."""

    region: Subnetwork
    count: int = 1


@dataclass(frozen=True)
class ShiftedComb:
    """Traps at ``u + i/count`` along ``walk`` with one shift ``u`` uniform on [0, 1/count)."""

    walk: Walk
    count: int


PlacementRule = Union[FixedPoints, IndependentUniform, ShiftedComb]


@dataclass(frozen=True)
class DefenderStrategy:
    k: int
    mixture: tuple[tuple[float, PlacementRule], ...]
    guarantee: float | None = None
    label: str = ""

    def __post_init__(self):
        total = sum(p for p, _ in self.mixture)
        if abs(total - 1.0) > 1e-12 or any(p < 0 for p, _ in self.mixture):
            raise ValueError(f"mixture probabilities must be nonnegative and sum to 1 (got {total})")
        for _, rule in self.mixture:
            if rule.count != self.k:
                raise ValueError(f"rule places {rule.count} traps, expected {self.k}")
            if isinstance(rule, IndependentUniform) and rule.region.measure <= 0:
                raise ValueError("uniform region must have positive length")


@dataclass(frozen=True)
class FiniteMixture:
    entries: tuple[tuple[float, Subnetwork], ...]
    guarantee: float | None = None
    label: str = ""

    def __post_init__(self):
        total = sum(p for p, _ in self.entries)
        if abs(total - 1.0) > 1e-12 or any(p < 0 for p, _ in self.entries):
            raise ValueError(f"mixture probabilities must be nonnegative and sum to 1 (got {total})")


@dataclass(frozen=True)
class SlidingInterval:
    """An interval of fixed ``length`` at a uniformly random position on a cycle."""

    length: float
    walk: Walk
    guarantee: float | None = None
    label: str = ""

    def __post_init__(self):
        if not 0 < self.length < 1:
            raise ValueError("interval length must lie in (0, 1)")
        if not self.walk.closed:
            raise ValueError("sliding intervals need a cycle")


AttackerStrategy = Union[FiniteMixture, SlidingInterval]


def _mixture(entries):
    """Drop zero-probability entries and renormalize rounding drift."""
    kept = [(float(p), x) for p, x in entries if p > 0]
    total = sum(p for p, _ in kept)
    return tuple((p / total, x) for p, x in kept)


# -- consolidation payoffs ---------------------------------------------------


def _check_profile(a: Sequence[float]) -> list[float]:
    a = [float(x) for x in a]
    if not a or any(x <= 0 for x in a):
        raise ValueError("component lengths must be positive")
    return a


def payoff_V(t: int, a: Sequence[float]) -> float:
    """Equalized payoff when the attacker plays each of the ``t`` longest components alone."""
    a = _check_profile(a)
    if not 2 <= t <= len(a):
        raise ValueError(f"t must lie in 2..{len(a)}")
    return (t - 1) / sum(1 / x for x in a[:t])


def payoff_U(t: int, a: Sequence[float]) -> float:
    """Equalized payoff when components ``t..n`` are merged through the centroid."""
    a = _check_profile(a)
    if not 2 <= t <= len(a):
        raise ValueError(f"t must lie in 2..{len(a)}")
    return (t - 1) / (sum(1 / x for x in a[: t - 1]) + 1 / sum(a[t - 1 :]))


def payoff_W(S: Sequence[int], a: Sequence[float]) -> float:
    """Equalized payoff when the components ranked in ``S`` (1-based) are merged."""
    a = _check_profile(a)
    S = set(S)
    if not S:
        raise ValueError("S must be nonempty")
    if not S <= set(range(1, len(a) + 1)):
        raise ValueError("S must index components 1..n")
    merged = sum(a[j - 1] for j in S)
    rest = [a[j - 1] for j in range(1, len(a) + 1) if j not in S]
    return len(rest) / (sum(1 / x for x in rest) + 1 / merged)


def best_consolidation(a: Sequence[float]) -> tuple[int, float]:
    """Best merge point ``t`` among 2..ceil(n/2)+1, ties going to the smaller ``t``."""
    a = _check_profile(a)
    n = len(a)
    if n < 2:
        raise ValueError("need at least two components")
    best_t, best = 2, payoff_U(2, a)
    for t in range(3, min(n, math.ceil(n / 2) + 1) + 1):
        u = payoff_U(t, a)
        if u > best + TIE:
            best_t, best = t, u
    return best_t, best


def brute_force_consolidation(a: Sequence[float]) -> float:
    """Max of ``payoff_W`` over every nonempty subset; exponential, for checking."""
    n = len(a)
    return max(payoff_W(S, a) for r in range(1, n + 1) for S in combinations(range(1, n + 1), r))


# -- attacker constructors ---------------------------------------------------


def attacker_partition_strategy(info: CentroidInfo, net: Network) -> FiniteMixture:
    """Take component ``i < t`` alone, or components ``t..n`` plus the centroid,
    with probabilities that make every defender point equally bad."""
    comps = info.components
    if len(comps) < 2:
        raise ValueError("centroid must leave at least two components")
    if info.radius >= 0.5 - TOL:
        raise ValueError("radius is 1/2; use attacker_two_half")
    a = [length for _, length in comps]
    t, value = best_consolidation(a)
    merged_len = sum(a[t - 1 :])
    denom = sum(1 / x for x in a[: t - 1]) + 1 / merged_len
    x = info.centroid
    centroid_part = subnetwork(net, nodes=[x.node]) if x.node else subnetwork(net, [Fragment(x.arc, x.offset, x.offset)])
    merged = union(net, centroid_part, *[s for s, _ in comps[t - 1 :]])
    entries = [((1 / length) / denom, s) for s, length in comps[: t - 1]]
    entries.append(((1 / merged_len) / denom, merged))
    return FiniteMixture(_mixture(entries), guarantee=value, label=f"partition t={t}")


def attacker_two_half(net: Network, parts: tuple[Subnetwork, Subnetwork]) -> FiniteMixture:
    """Each half with probability 1/2."""
    a, b = parts
    if abs(a.measure - 0.5) > TOL or abs(b.measure - 0.5) > TOL:
        raise ValueError("parts must each have length 1/2")
    if not (is_connected(net, a) and is_connected(net, b)):
        raise ValueError("parts must be connected")
    if not disjoint(a, b):
        raise ValueError("parts must not share a point")
    return FiniteMixture(((0.5, a), (0.5, b)), guarantee=0.25, label="two halves")


def attacker_cycle(net: Network, k: int) -> SlidingInterval:
    if k < 1:
        raise ValueError("k must be at least 1")
    return SlidingInterval(1 / (2 * k), Walk.of(net), guarantee=1 / (4 * k), label="sliding interval")


def attacker_path(net: Network, k: int) -> FiniteMixture:
    """One of ``2k`` equal consecutive intervals, uniformly."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if not net.is_path:
        raise NetworkError("network is not a path")
    w = Walk.of(net)
    m = 2 * k
    entries = [(1 / m, w.interval(net, i / m, (i + 1) / m, True, i == m - 1)) for i in range(m)]
    return FiniteMixture(tuple(entries), guarantee=1 / (4 * k), label="path intervals")


# -- defender constructors ---------------------------------------------------


def defender_uniform(net: Network, k: int) -> DefenderStrategy:
    if k < 1:
        raise ValueError("k must be at least 1")
    return DefenderStrategy(
        k, ((1.0, IndependentUniform(net.whole(), k)),), guarantee=float(abstractgame.value_euclidean(k)), label="uniform"
    )


def defender_centroid_strategy(info: CentroidInfo, net: Network) -> DefenderStrategy:
    a1 = info.radius
    p = 4 * a1 / (1 + 4 * a1 * a1)
    entries = _mixture([(p, IndependentUniform(net.whole(), 1)), (1 - p, FixedPoints((info.centroid,)))])
    return DefenderStrategy(1, entries, guarantee=a1 / (1 + 4 * a1 * a1), label="centroid")


def defender_cycle(net: Network, k: int) -> DefenderStrategy:
    """Traps ``1/k`` apart around the cycle, the whole pattern rotated uniformly at random."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if not net.is_cycle:
        raise NetworkError("network is not a cycle")
    return DefenderStrategy(k, ((1.0, ShiftedComb(Walk.of(net), k)),), guarantee=1 / (4 * k), label="equal spacing")


def defender_path_comb(net: Network, k: int) -> DefenderStrategy:
    if k < 1:
        raise ValueError("k must be at least 1")
    if not net.is_path:
        raise NetworkError("network is not a path")
    return DefenderStrategy(k, ((1.0, ShiftedComb(Walk.of(net), k)),), guarantee=1 / (4 * k), label="comb")


def _near_center(net: Network, center: str, radii: dict[str, float]) -> Subnetwork:
    frags = []
    for a in net.arcs:
        r = radii[a.id]
        frags.append(Fragment(a.id, 0.0, r) if a.u == center else Fragment(a.id, a.length - r, a.length))
    return subnetwork(net, frags, [center])


def defender_odd_star(n: int, net: Network | None = None) -> DefenderStrategy:
    """Atom at the center plus a uniform trap on a small ball around it."""
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be an odd integer >= 3")
    net = net or symmetric_star(n)
    center = net.star_center
    if center is None or len(net.arcs) != n:
        raise NetworkError(f"network is not a star with {n} arcs")
    atom = (n * n - 4 * n + 3) / (n * n + 3)
    spread = 4 * n / (n * n + 3)
    radius = 4 / (n * (n * n - 1))
    region = _near_center(net, center, {a.id: radius for a in net.arcs})
    entries = _mixture([(atom, FixedPoints((Point(node=center),))), (spread, IndependentUniform(region, 1))])
    return DefenderStrategy(1, entries, guarantee=(n * n - 1) / (n * (n * n + 3)), label="odd star")


def defender_three_arc_star(net_or_lengths: Network | Sequence[float]) -> DefenderStrategy:
    """Pick arm ``j`` with probability ``a_j``; the trap is uniform on the first
    ``a_j**2 / (1 - a_j)`` of that arm measured from the center."""
    net = net_or_lengths if isinstance(net_or_lengths, Network) else star(list(net_or_lengths))
    center = net.star_center
    if center is None or len(net.arcs) != 3:
        raise NetworkError("network is not a three-arc star")
    arms = net.star_arms()
    a1 = arms[0][0].length
    if a1 >= 0.5 - TOL:
        raise ValueError("longest arm is at least 1/2; use the uniform defender")
    entries = []
    for arc, _ in arms:
        a = arc.length
        region = _near_center(net, center, {b.id: (a * a / (1 - a) if b.id == arc.id else 0.0) for b in net.arcs})
        region = subnetwork(net, [f for f in region.fragments if f.arc == arc.id], [center])
        entries.append((a, IndependentUniform(region, 1)))
    return DefenderStrategy(1, _mixture(entries), guarantee=a1 * (1 - a1), label="three-arc star")


def abstract_euclidean_attacker(k: int, m: int) -> abstractgame.EuclideanAttacker:
    return abstractgame.euclidean_attacker(k, m)


# -- exact evaluation ----------------------------------------------------------


def _walk_intervals(net: Network, walk: Walk, s: Subnetwork) -> list[tuple[float, float]]:
    out = []
    for aid, fwd, a0, a1 in walk._bounds(net):
        for f in s.on_arc(aid):
            if fwd:
                out.append((a0 + f.lo, a0 + f.hi))
            else:
                length = a1 - a0
                out.append((a0 + length - f.hi, a0 + length - f.lo))
    return out


def _union_length(intervals: list[tuple[float, float]]) -> float:
    total, cur_lo, cur_hi = 0.0, None, None
    for lo, hi in sorted(intervals):
        if cur_hi is None or lo > cur_hi:
            if cur_hi is not None:
                total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        else:
            cur_hi = max(cur_hi, hi)
    if cur_hi is not None:
        total += cur_hi - cur_lo
    return total


def _folded(intervals: list[tuple[float, float]], period: float) -> list[tuple[float, float]]:
    """Map intervals onto [0, period) modulo ``period``."""
    out = []
    for lo, hi in intervals:
        if hi - lo >= period - EPS:
            return [(0.0, period)]
        base = math.floor(lo / period) * period
        lo, hi = lo - base, hi - base
        if hi <= period:
            out.append((lo, hi))
        else:
            out += [(lo, period), (0.0, hi - period)]
    return out


def no_trap_probability(net: Network, rule: PlacementRule, s: Subnetwork) -> float:
    """Probability that ``rule`` puts no trap inside ``s``."""
    if isinstance(rule, FixedPoints):
        return 0.0 if any(s.contains(p) for p in rule.points) else 1.0
    if isinstance(rule, IndependentUniform):
        share = intersection_measure(s, rule.region) / rule.region.measure
        return max(0.0, 1.0 - share) ** rule.count
    if isinstance(rule, ShiftedComb):
        period = 1.0 / rule.count
        hit = _union_length(_folded(_walk_intervals(net, rule.walk, s), period))
        return max(0.0, 1.0 - hit / period)
    raise TypeError(f"unknown placement rule {rule!r}")


def expected_payoff(net: Network, ds: DefenderStrategy, s: Subnetwork) -> float:
    """Attacker's expected payoff for taking ``s`` against ``ds``."""
    return s.measure * sum(p * no_trap_probability(net, rule, s) for p, rule in ds.mixture)


def attacker_expected_payoff(net: Network, attacker: AttackerStrategy, points: Sequence[Point]) -> float:
    """Attacker's expected payoff against traps fixed at ``points``."""
    if isinstance(attacker, FiniteMixture):
        return sum(p * s.measure for p, s in attacker.entries if not any(s.contains(x) for x in points))
    w, length = attacker.walk, attacker.length
    windows = []
    for x in points:
        c = w.coordinate(net, x)
        windows.append((c - length, c))
    covered = _union_length(_folded(windows, 1.0))
    return length * (1.0 - covered)


@dataclass(frozen=True)
class Marginal:
    """Single-trap location law: point atoms plus piecewise-constant densities."""

    atoms: tuple[tuple[Point, float], ...]
    pieces: tuple[tuple[str, float, float, float], ...] = field(default=())

    def total(self) -> float:
        return sum(m for _, m in self.atoms) + sum((hi - lo) * d for _, lo, hi, d in self.pieces)


def marginal(net: Network, ds: DefenderStrategy) -> Marginal:
    """Canonical location law of a one-trap strategy (for comparing strategies)."""
    if ds.k != 1:
        raise ValueError("marginal is defined for one trap")
    atoms: dict[Point, float] = {}
    dens: dict[str, list[tuple[float, float, float]]] = {}
    for p, rule in ds.mixture:
        if isinstance(rule, FixedPoints):
            atoms[rule.points[0]] = atoms.get(rule.points[0], 0.0) + p
            continue
        region = net.whole() if isinstance(rule, ShiftedComb) else rule.region
        d = p / region.measure
        for f in region.fragments:
            if f.hi - f.lo > EPS:
                dens.setdefault(f.arc, []).append((f.lo, f.hi, d))
    pieces = []
    for arc_id in sorted(dens, key=net.arc_position):
        cuts = sorted({x for lo, hi, _ in dens[arc_id] for x in (lo, hi)})
        merged: list[list[float]] = []
        for lo, hi in zip(cuts, cuts[1:]):
            mid = (lo + hi) / 2
            d = sum(dd for a, b, dd in dens[arc_id] if a <= mid <= b)
            if d <= EPS:
                continue
            if merged and abs(merged[-1][1] - lo) <= EPS and abs(merged[-1][2] - d) <= 1e-9:
                merged[-1][1] = hi
            else:
                merged.append([lo, hi, d])
        pieces += [(arc_id, lo, hi, d) for lo, hi, d in merged]
    kept = tuple(sorted(((pt, m) for pt, m in atoms.items() if m > EPS), key=lambda t: str(t[0])))
    return Marginal(kept, tuple(pieces))


def same_marginal(a: Marginal, b: Marginal, tol: float = 1e-12) -> bool:
    if len(a.atoms) != len(b.atoms) or len(a.pieces) != len(b.pieces):
        return False
    for (p, m), (q, n) in zip(a.atoms, b.atoms):
        if p != q or abs(m - n) > tol:
            return False
    for x, y in zip(a.pieces, b.pieces):
        if x[0] != y[0] or any(abs(u - v) > tol for u, v in zip(x[1:], y[1:])):
            return False
    return True


# -- documents -----------------------------------------------------------------


def _point_doc(p: Point) -> dict:
    return {"node": p.node} if p.node is not None else {"arc": p.arc, "offset": p.offset}


def _point_from(doc: dict) -> Point:
    return Point(node=doc["node"]) if "node" in doc else Point(arc=doc["arc"], offset=float(doc["offset"]))


def _sub_doc(s: Subnetwork) -> dict:
    return {
        "fragments": [[f.arc, f.lo, f.hi, f.lo_closed, f.hi_closed] for f in s.fragments],
        "nodes": sorted(s.nodes),
    }


def _sub_from(doc: dict, net: Network) -> Subnetwork:
    return subnetwork(net, [Fragment(a, float(lo), float(hi), bool(c0), bool(c1)) for a, lo, hi, c0, c1 in doc["fragments"]], doc["nodes"])


def _walk_doc(w: Walk) -> dict:
    return {"steps": [[a, f] for a, f in w.steps], "closed": w.closed, "start": w.start}


def _walk_from(doc: dict) -> Walk:
    return Walk(tuple((a, bool(f)) for a, f in doc["steps"]), bool(doc["closed"]), doc["start"])


def to_document(strategy: DefenderStrategy | AttackerStrategy) -> dict:
    """JSON-ready description of a strategy."""
    if isinstance(strategy, DefenderStrategy):
        rules = []
        for p, rule in strategy.mixture:
            if isinstance(rule, FixedPoints):
                body = {"rule": "fixed", "points": [_point_doc(x) for x in rule.points]}
            elif isinstance(rule, IndependentUniform):
                body = {"rule": "uniform", "region": _sub_doc(rule.region), "count": rule.count}
            else:
                body = {"rule": "comb", "walk": _walk_doc(rule.walk), "count": rule.count}
            rules.append({"probability": p, **body})
        return {"player": "defender", "k": strategy.k, "label": strategy.label, "guarantee": strategy.guarantee, "mixture": rules}
    if isinstance(strategy, FiniteMixture):
        return {
            "player": "attacker",
            "type": "mixture",
            "label": strategy.label,
            "guarantee": strategy.guarantee,
            "entries": [{"probability": p, "set": _sub_doc(s)} for p, s in strategy.entries],
        }
    return {
        "player": "attacker",
        "type": "sliding",
        "label": strategy.label,
        "guarantee": strategy.guarantee,
        "length": strategy.length,
        "walk": _walk_doc(strategy.walk),
    }


def from_document(doc: dict, net: Network) -> DefenderStrategy | AttackerStrategy:
    try:
        if doc["player"] == "defender":
            mixture = []
            for r in doc["mixture"]:
                if r["rule"] == "fixed":
                    rule = FixedPoints(tuple(_point_from(x) for x in r["points"]))
                    for x in rule.points:
                        net.check_point(x)
                elif r["rule"] == "uniform":
                    rule = IndependentUniform(_sub_from(r["region"], net), int(r["count"]))
                elif r["rule"] == "comb":
                    rule = ShiftedComb(_walk_from(r["walk"]), int(r["count"]))
                else:
                    raise ValueError(f"unknown rule {r['rule']!r}")
                mixture.append((float(r["probability"]), rule))
            return DefenderStrategy(int(doc["k"]), tuple(mixture), doc.get("guarantee"), doc.get("label", ""))
        if doc.get("type") == "sliding":
            return SlidingInterval(float(doc["length"]), _walk_from(doc["walk"]), doc.get("guarantee"), doc.get("label", ""))
        entries = tuple((float(e["probability"]), _sub_from(e["set"], net)) for e in doc["entries"])
        return FiniteMixture(entries, doc.get("guarantee"), doc.get("label", ""))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed strategy document: {exc}") from None
