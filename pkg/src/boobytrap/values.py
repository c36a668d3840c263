"""Closed-form values, certified bounds and network classification."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import strategies as st
from .abstractgame import value_euclidean
from .bipartition import equal_bipartition_two_connected, find_equal_split, is_two_connected
from .centroid import CentroidInfo, general_centroid, tree_centroid
from .bipartition import complement
from .netmodel import TOL, Network, NetworkError, star

__all__ = [
    "ValueReport",
    "value_euclidean",
    "value_cycle_or_path",
    "tree_bounds",
    "value_star",
    "value_centroid_symmetric",
    "classify_and_value",
]

CLASSIFICATIONS = (
    "euclidean-abstract",
    "cycle",
    "path",
    "two-connected",
    "half-partitionable",
    "tree",
    "star-even",
    "star-odd",
    "star-3",
    "star-general",
    "centroid-network",
    "unknown",
)


@dataclass(frozen=True)
class ValueReport:
    kind: str
    lower: float
    upper: float
    classification: str
    witness_attacker: st.AttackerStrategy | None = None
    witness_defender: st.DefenderStrategy | None = None
    note: str = ""

    @property
    def value(self) -> float | None:
        return self.lower if self.kind == "exact" else None

    def __post_init__(self):
        if self.lower > self.upper + 1e-12:
            raise ValueError("lower bound exceeds upper bound")
        if self.classification not in CLASSIFICATIONS:
            raise ValueError(f"unknown classification {self.classification!r}")


def value_cycle_or_path(k: int, exact: bool = False) -> float | Fraction:
    """``1/(4k)``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    v = Fraction(1, 4 * k)
    return v if exact else float(v)


def _report(classification, attacker, defender, note=""):
    lo = attacker.guarantee if attacker is not None else 0.0
    hi = defender.guarantee
    kind = "exact" if attacker is not None and abs(hi - lo) <= 1e-12 else "bounds"
    if kind == "exact":
        lo = hi
    return ValueReport(kind, lo, hi, classification, attacker, defender, note)


def _half_split_at_centroid(net: Network, info: CentroidInfo):
    """Halves from a centroid whose largest component is exactly 1/2."""
    big = info.components[0][0]
    return big, complement(net, big)


def _centroid_bounds(net: Network, info: CentroidInfo, classification: str) -> ValueReport:
    if info.radius >= 0.5 - TOL:
        attacker = st.attacker_two_half(net, _half_split_at_centroid(net, info))
        return _report(classification, attacker, st.defender_uniform(net, 1))
    attacker = st.attacker_partition_strategy(info, net)
    defender = st.defender_centroid_strategy(info, net)
    return _report(classification, attacker, defender)


def tree_bounds(net: Network) -> ValueReport:
    """One trap on a tree: exact 1/4 if the centroid splits it in half, else
    the consolidation lower bound and the centroid-strategy upper bound."""
    if not net.is_tree:
        raise NetworkError("network is not a tree")
    info = tree_centroid(net)
    return _centroid_bounds(net, info, "path" if net.is_path else "tree")


def _as_star(a: Network | Sequence[float]) -> Network:
    if isinstance(a, Network):
        if a.star_center is None:
            raise NetworkError("network is not a star with at least 3 arcs")
        return a
    if len(a) < 3:
        raise NetworkError("fewer than 3 arcs; that is a path")
    return star(list(a))


def value_star(a: Network | Sequence[float]) -> ValueReport:
    """One trap on a star given by its network or its arm lengths."""
    net = _as_star(a)
    arms = net.star_arms()
    lengths = [arc.length for arc, _ in arms]
    n, a1 = len(lengths), lengths[0]
    info = tree_centroid(net)
    if a1 >= 0.5 - TOL:
        return _centroid_bounds(net, info, "star-general")
    symmetric = max(lengths) - min(lengths) <= TOL
    if symmetric and n % 2 == 0:
        return _report("star-even", st.attacker_partition_strategy(info, net), st.defender_centroid_strategy(info, net))
    if symmetric:
        return _report("star-odd", st.attacker_partition_strategy(info, net), st.defender_odd_star(n, net))
    if n == 3:
        return _report("star-3", st.attacker_partition_strategy(info, net), st.defender_three_arc_star(net))
    return _centroid_bounds(net, info, "star-general")


def value_centroid_symmetric(net: Network) -> float | None:
    """``n/(n**2 + 4)`` when the centroid cuts the network into an even number
    ``n`` of equal pieces; ``None`` otherwise."""
    info = general_centroid(net)
    if info is None:
        return None
    prof = info.profile
    n = len(prof)
    if n < 2 or n % 2 or any(abs(x - 1 / n) > 1e-9 for x in prof):
        return None
    return n / (n * n + 4)


def classify_and_value(net: Network, k: int = 1, grid: int = 1000) -> ValueReport:
    """Most specific known result for ``k`` traps on ``net``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if net.is_cycle:
        return _report("cycle", st.attacker_cycle(net, k), st.defender_cycle(net, k))
    if net.is_path:
        return _report("path", st.attacker_path(net, k), st.defender_path_comb(net, k))
    if k >= 2:
        return _report(
            "unknown",
            None,
            st.defender_uniform(net, k),
            note="no closed form for several traps here; use the oracle",
        )
    if is_two_connected(net):
        halves = equal_bipartition_two_connected(net)
        return _report("two-connected", st.attacker_two_half(net, halves), st.defender_uniform(net, 1))
    halves = find_equal_split(net, grid)
    if halves is not None:
        return _report("half-partitionable", st.attacker_two_half(net, halves), st.defender_uniform(net, 1))
    if net.star_center is not None:
        return value_star(net)
    if net.is_tree:
        return tree_bounds(net)
    info = general_centroid(net)
    if info is not None:
        return _centroid_bounds(net, info, "centroid-network")
    return _report(
        "unknown",
        None,
        st.defender_uniform(net, 1),
        note=f"no centroid and no equal split found at grid {grid}; requires further investigation (try the oracle)",
    )
