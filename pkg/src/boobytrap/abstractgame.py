"""The trap game on an abstract space where only measure matters.

Any measurable set is available to the attacker, so geometry drops out: the
attacker's partition strategy is described by cell counts alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

Z99 = 2.5758293035489


def value_euclidean(k: int, exact: bool = False) -> float | Fraction:
    """``k**k / (k+1)**(k+1)``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    v = Fraction(k**k, (k + 1) ** (k + 1))
    return v if exact else float(v)


def euclidean_attacker_bound(k: int, m: int) -> float:
    """Payoff the attacker secures by taking ``r = ceil(m/(k+1))`` of ``m`` equal cells at random."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if m < k + 1:
        raise ValueError("need m >= k + 1 cells")
    r = -(-m // (k + 1))
    out = r / m
    for i in range(k):
        out *= max(0.0, 1 - r / (m - i))
    return out


def euclidean_defender_bound(k: int, x: float) -> float:
    """Attacker payoff for a set of measure ``x`` against ``k`` uniform traps."""
    if not 0 <= x <= 1:
        raise ValueError("x must lie in [0, 1]")
    return x * (1 - x) ** k


@dataclass(frozen=True)
class EuclideanAttacker:
    k: int
    m: int
    r: int
    guarantee: float


def euclidean_attacker(k: int, m: int) -> EuclideanAttacker:
    bound = euclidean_attacker_bound(k, m)
    return EuclideanAttacker(k, m, -(-m // (k + 1)), bound)


def simulate_euclidean(k: int, m: int, trials: int, seed: int) -> tuple[float, float]:
    """Play ``k`` iid uniform traps against the r-of-m attacker.

    Returns the mean payoff and its 99% confidence half-width.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if m < k + 1:
        raise ValueError("need m >= k + 1 cells")
    if trials < 1:
        raise ValueError("trials must be positive")
    r = -(-m // (k + 1))
    batch = max(1, min(trials, 4_000_000 // m))
    total = total_sq = 0.0
    done, b = 0, 0
    root = np.random.Philox(seed)
    while done < trials:
        n = min(batch, trials - done)
        rng = np.random.Generator(root.jumped(b))
        traps = rng.integers(0, m, size=(n, k))
        keys = rng.random((n, m))
        chosen = np.zeros((n, m), dtype=bool)
        idx = np.argpartition(keys, r - 1, axis=1)[:, :r]
        np.put_along_axis(chosen, idx, True, axis=1)
        hit = np.take_along_axis(chosen, traps, axis=1).any(axis=1)
        pay = np.where(hit, 0.0, r / m)
        total += pay.sum()
        total_sq += (pay * pay).sum()
        done += n
        b += 1
    mean = total / trials
    var = max(0.0, total_sq / trials - mean * mean)
    return mean, Z99 * math.sqrt(var / trials)
