"""The discretized game and its numerical value."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..netmodel import Network, Walk
from . import kernels
from .cells import CellGrid
from .game import MatrixGameSolution, _solve_lp, certify, solve_matrix_game
from .response import SkeletonLimit, _walk_runs, skeleton_best

DEFAULT_CAP = 2_000_000
# one-trap games with more connected sets than this switch to column generation
DENSE_LIMIT = 100_000
MAX_DEFENDER_PURES = 20_000
MAX_MATRIX_ENTRIES = 20_000_000


class EnumerationLimit(OverflowError):
    """The exhaustive game would be too large."""


@dataclass(frozen=True)
class DiscretizedGame:
    grid: CellGrid
    k: int
    defender_pures: tuple[tuple[int, ...], ...]  # indices into grid.trap_positions
    attacker_masks: np.ndarray  # uint64 bitmasks over cells
    measures: np.ndarray
    payoff: np.ndarray  # rows: defender pures, columns: attacker pures

    @property
    def cells(self):
        return self.grid.cells

    def defender_points(self, r: int):
        return tuple(self.grid.trap_positions[p][0] for p in self.defender_pures[r])

    def attacker_cells(self, j: int) -> list[int]:
        return self.grid.cells_of(int(self.attacker_masks[j]))


def _defender_pures(size: int, k: int) -> tuple[tuple[int, ...], ...]:
    if k < 1:
        raise ValueError("k must be at least 1")
    if math.comb(size, k) > MAX_DEFENDER_PURES:
        raise EnumerationLimit(f"{math.comb(size, k)} trap placements exceed the limit of {MAX_DEFENDER_PURES}")
    return tuple(combinations(range(size), k))


def _payoff(grid: CellGrid, pures, masks: np.ndarray, measures: np.ndarray) -> np.ndarray:
    hits = [sum(1 << c for c in cells) for _, cells in grid.trap_positions]
    out = np.empty((len(pures), len(masks)))
    for r, placement in enumerate(pures):
        trap = 0
        for p in placement:
            trap |= hits[p]
        out[r] = np.where(masks & np.uint64(trap), 0.0, measures)
    return out


def discretize(net: Network, m: int, k: int = 1, cap: int = DEFAULT_CAP) -> DiscretizedGame:
    """Traps at cell midpoints or nodes against every connected union of closed cells."""
    grid = CellGrid(net, m)
    pures = _defender_pures(len(grid.trap_positions), k)
    masks = kernels.enumerate_connected(grid.adjacency_masks(), cap)
    if len(masks) > cap:
        raise EnumerationLimit(f"more than {cap} connected cell sets")
    if len(pures) * len(masks) > MAX_MATRIX_ENTRIES:
        raise EnumerationLimit(f"a {len(pures)} x {len(masks)} payoff matrix exceeds {MAX_MATRIX_ENTRIES} entries")
    measures = kernels.mask_sums(masks, grid.lengths)
    return DiscretizedGame(grid, k, pures, masks, measures, _payoff(grid, pures, masks, measures))


# -- column generation -----------------------------------------------------------


def _walk_order(grid: CellGrid) -> list[list[int]]:
    return _walk_runs(grid, Walk.of(grid.net))


def _reply_oracle(grid: CellGrid):
    """Best connected cell sets against a one-trap mix over cells."""
    net = grid.net
    if net.is_path or net.is_cycle:
        runs = _walk_order(grid)
        members = np.zeros((len(runs), grid.size))
        for i, run in enumerate(runs):
            members[i, run] = 1.0
        lengths = members @ grid.lengths
        members = (members @ grid.hit_matrix().T > 0).astype(float)

        def reply(x: np.ndarray, top: int):
            vals = lengths * (1.0 - members @ x)
            order = np.argsort(-vals, kind="stable")[:top]
            return [(float(vals[i]), runs[i]) for i in order]

        return reply

    n = grid.size
    node_index = {p.node: i for i, (p, _) in enumerate(grid.trap_positions) if p.node is not None}

    def reply(x: np.ndarray, top: int):
        feats = np.column_stack([grid.lengths, x[:n]])
        nodes = {v: np.array([0.0, x[i]]) for v, i in node_index.items()}
        return skeleton_best(grid, feats, lambda P: P[:, 0] * (1.0 - P[:, 1]), node_feats=nodes, top=top)

    return reply


def _column_generation(grid: CellGrid, tol: float, max_iters: int, batch: int = 8) -> MatrixGameSolution:
    reply = _reply_oracle(grid)
    n = grid.size
    H = grid.hit_matrix()
    rows = len(H)
    columns: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()

    def add(cells):
        key = tuple(sorted(cells))
        if key and key not in seen:
            seen.add(key)
            columns.append(key)

    for c in range(n):
        add([c])
    for _, cells in reply(np.full(rows, 1.0 / rows), batch):
        add(cells)
    best = None
    for it in range(1, max_iters + 1):
        Z = np.zeros((n, len(columns)))
        for j, cells in enumerate(columns):
            Z[list(cells), j] = 1.0
        A = np.where(H @ Z > 0, 0.0, grid.lengths @ Z)
        x, y = _solve_lp(A)
        lower = float((A @ y).min())
        replies = reply(x, batch)
        upper = max(replies[0][0], float((x @ A).max()))
        gap = upper - lower
        if best is None or gap < best[0]:
            best = (gap, lower, upper, x, y, tuple(columns), it)
        if gap <= tol:
            break
        before = len(columns)
        for _, cells in replies:
            add(cells)
        if len(columns) == before:
            break
    gap, lower, upper, x, y, cols, it = best
    return MatrixGameSolution((lower + upper) / 2, x, y, gap, gap <= tol, "column generation", it, lower, upper, cols)


def oracle_value(net: Network, k: int = 1, m: int = 40, tol: float = 1e-6, cap: int = DEFAULT_CAP, max_iters: int = 500) -> MatrixGameSolution:
    """Value of the discretized game, certified by exploitability.

    Small games build the whole matrix. With one trap and more than 64 cells
    or many connected sets, attacker columns are generated from exact best
    replies instead, which certifies the value of the same full matrix.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    grid = CellGrid(net, m)
    try:
        game = discretize(net, m, k, min(cap, DENSE_LIMIT) if k == 1 else cap)
    except (OverflowError, EnumerationLimit):
        if k != 1:
            raise
        try:
            return _column_generation(grid, tol, max_iters)
        except SkeletonLimit as exc:
            raise EnumerationLimit(str(exc)) from exc
    return solve_matrix_game(game.payoff, tol=tol)


__all__ = ["DiscretizedGame", "EnumerationLimit", "discretize", "oracle_value", "certify", "DEFAULT_CAP"]
