"""Deterministic tables of the closed-form values, as CSV text."""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from .abstractgame import value_euclidean
from .values import value_cycle_or_path

FAMILIES = ("euclidean-k", "cycle-k", "symmetric-star", "ratio-sweep")


def fraction_text(x: float | Fraction, max_den: int = 10**6) -> str:
    """``p/q`` when ``x`` is a fraction with a small denominator, otherwise a decimal."""
    if isinstance(x, Fraction):
        if x.denominator <= max_den:
            return str(x)
        return repr(float(x))
    f = Fraction(x).limit_denominator(max_den)
    if abs(float(f) - x) <= 2e-15 * max(1.0, abs(x)):
        return str(f)
    return repr(float(x))


def symmetric_star_value(n: int) -> Fraction:
    """One-trap value of the star with ``n`` equal arms."""
    if n < 3:
        raise ValueError("a star needs at least 3 arms")
    if n % 2 == 0:
        return Fraction(n, n * n + 4)
    return Fraction(n * n - 1, n * (n * n + 3))


def tree_ratio(a1: float) -> float:
    """Upper over lower tree bound when the largest centroid component has length ``a1``."""
    return 1.0 / ((1.0 - a1) * (1.0 + 4.0 * a1 * a1))


def parse_range(text: str) -> range:
    """``"3..12"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise ValueError(f"bad range {text!r}; expected like 3..12") from None
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def ratio_sweep(steps: int) -> list[tuple[float, float]]:
    """``(a1, ratio)`` for ``a1 = i / (2 * steps)``, ``i = 0 .. steps - 1``."""
    if steps < 1:
        raise ValueError("steps must be positive")
    return [(i / (2 * steps), tree_ratio(i / (2 * steps))) for i in range(steps)]


def table(family: str, span: range | None = None, steps: int = 6000) -> str:
    if family == "euclidean-k":
        span = span or range(1, 7)
        if span.start < 1:
            raise ValueError("k must be at least 1")
        rows = [(k, fraction_text(value_euclidean(k, exact=True)), repr(float(value_euclidean(k, exact=True)))) for k in span]
        return _csv(("k", "value", "decimal"), rows)
    if family == "cycle-k":
        span = span or range(1, 7)
        if span.start < 1:
            raise ValueError("k must be at least 1")
        rows = [(k, fraction_text(value_cycle_or_path(k, exact=True)), repr(value_cycle_or_path(k))) for k in span]
        return _csv(("k", "value", "decimal"), rows)
    if family == "symmetric-star":
        span = span or range(3, 13)
        rows = []
        for n in span:
            v = symmetric_star_value(n)
            rows.append((n, "even" if n % 2 == 0 else "odd", fraction_text(v), repr(float(v))))
        return _csv(("n", "parity", "value", "decimal"), rows)
    if family == "ratio-sweep":
        return _csv(("a1", "ratio"), [(f"{a:.12g}", f"{r:.12g}") for a, r in ratio_sweep(steps)])
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
