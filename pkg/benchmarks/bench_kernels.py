"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from boobytrap.netmodel import symmetric_star
from boobytrap.oracle import _pykernels
from boobytrap.oracle.cells import CellGrid

try:
    from boobytrap.oracle import _kernels
except ImportError:
    _kernels = None

CASES = [("star(3), mesh 30", 3, 30), ("star(5), mesh 40", 5, 40)]


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", _pykernels)] + ([("compiled", _kernels)] if _kernels else [])
    if _kernels is None:
        print("compiled kernels not built; timing the fallback only")
    print(f"{'case':<20} {'kernel':<20} " + " ".join(f"{name:>10}" for name, _ in backends) + "   speedup")
    for label, n, m in CASES:
        grid = CellGrid(symmetric_star(n), m)
        adj = grid.adjacency_masks()
        masks = _pykernels.enumerate_connected(adj, 10**7)
        y = np.random.default_rng(0).dirichlet(np.ones(grid.size))
        measures = _pykernels.mask_sums(masks, grid.lengths)
        jobs = {
            "enumerate_connected": lambda mod: mod.enumerate_connected(adj, 10**7),
            "mask_sums": lambda mod: mod.mask_sums(masks, grid.lengths),
            "scan_best": lambda mod: mod.scan_best(masks, measures, y),
        }
        for kernel, job in jobs.items():
            ts = [best_of(lambda: job(mod), args.repeat) for _, mod in backends]
            speed = f"{ts[0] / ts[1]:8.1f}x" if len(ts) > 1 else ""
            print(f"{label:<20} {kernel:<20} " + " ".join(f"{t * 1e3:8.1f}ms" for t in ts) + f"  {speed}")
        print(f"{'':<20} ({len(masks)} connected sets over {grid.size} cells)")


if __name__ == "__main__":
    main()
