"""Pure-Python and numpy versions of the compiled kernels."""

from __future__ import annotations

import numpy as np


def enumerate_connected(adj: np.ndarray, cap: int) -> np.ndarray:
    n = len(adj)
    if n > 64:
        raise OverflowError("bitmask enumeration supports at most 64 vertices")
    nbr = [int(x) for x in adj]
    out: list[int] = []
    for v in range(n):
        allowed = ~((2 << v) - 1)
        start = 1 << v
        stack = [(start, nbr[v] & allowed, nbr[v] | start)]
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
            if len(out) >= cap:
                raise OverflowError(f"more than {cap} connected sets")
            new = sub | low
            out.append(new)
            stack.append((new, ext | (nbr[w] & ~nb & allowed), nb | nbr[w]))
    return np.array(out, dtype=np.uint64)


def _byte_tables(weights: np.ndarray) -> np.ndarray:
    n = len(weights)
    w = np.zeros(64)
    w[:n] = weights
    bits = (np.arange(256)[:, None] >> np.arange(8)[None, :]) & 1
    return np.stack([bits @ w[8 * b : 8 * b + 8] for b in range(8)])


def mask_sums(masks: np.ndarray, weights: np.ndarray) -> np.ndarray:
    tables = _byte_tables(np.asarray(weights, dtype=np.float64))
    masks = np.asarray(masks, dtype=np.uint64)
    total = np.zeros(len(masks))
    for b in range(8):
        total += tables[b][((masks >> np.uint64(8 * b)) & np.uint64(255)).astype(np.intp)]
    return total


def scan_best(masks: np.ndarray, measures: np.ndarray, y: np.ndarray) -> tuple[int, float]:
    vals = np.asarray(measures) * (1.0 - mask_sums(masks, y))
    if len(vals) == 0:
        return -1, -1.0
    i = int(np.argmax(vals))
    return i, float(vals[i])
