"""Cutting a network into short cells and describing cell sets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..netmodel import EPS, Fragment, Network, Point, Subnetwork, subnetwork


@dataclass(frozen=True)
class ArcCells:
    arc: str
    first: int
    count: int
    u: str
    v: str


class CellGrid:
    """Each arc of length ``L`` is cut into ``ceil(m * L)`` equal cells.

    Cells are numbered arc by arc, from the ``u`` end to the ``v`` end. Two
    cells are adjacent when their closed intervals touch.
    """

    def __init__(self, net: Network, m: int):
        if m < 2:
            raise ValueError("mesh must be at least 2")
        self.net = net
        self.m = m
        arcs, cells = [], []
        for a in net.arcs:
            c = max(1, math.ceil(m * a.length - 1e-9))
            arcs.append(ArcCells(a.id, len(cells), c, a.u, a.v))
            step = a.length / c
            cells += [(a.id, i * step, (i + 1) * step if i < c - 1 else a.length) for i in range(c)]
        self.arcs: tuple[ArcCells, ...] = tuple(arcs)
        self.cells: tuple[tuple[str, float, float], ...] = tuple(cells)
        self.lengths = np.array([hi - lo for _, lo, hi in cells])
        self.size = len(cells)

    @cached_property
    def ends_at(self) -> dict[str, list[int]]:
        """Cells whose closure contains each node."""
        out: dict[str, list[int]] = {n: [] for n in self.net.nodes}
        for ac in self.arcs:
            out[ac.u].append(ac.first)
            last = ac.first + ac.count - 1
            if last not in out[ac.v]:
                out[ac.v].append(last)
        return out

    @cached_property
    def neighbours(self) -> list[set[int]]:
        nb: list[set[int]] = [set() for _ in range(self.size)]
        for ac in self.arcs:
            for i in range(ac.first, ac.first + ac.count - 1):
                nb[i].add(i + 1)
                nb[i + 1].add(i)
        for cells in self.ends_at.values():
            for i in cells:
                nb[i].update(j for j in cells if j != i)
        return nb

    def adjacency_masks(self) -> np.ndarray:
        if self.size > 64:
            raise OverflowError(f"{self.size} cells exceed the 64-cell bitmask limit")
        out = np.zeros(self.size, dtype=np.uint64)
        for i, nb in enumerate(self.neighbours):
            out[i] = np.uint64(sum(1 << j for j in nb))
        return out

    def midpoint(self, i: int) -> Point:
        arc, lo, hi = self.cells[i]
        return self.net.point(arc, (lo + hi) / 2)

    def cells_containing(self, p: Point) -> list[int]:
        """Cells whose closed interval holds ``p``."""
        if p.node is not None:
            return list(self.ends_at[p.node])
        out = []
        for ac in self.arcs:
            if ac.arc != p.arc:
                continue
            for i in range(ac.first, ac.first + ac.count):
                _, lo, hi = self.cells[i]
                if lo - EPS <= p.offset <= hi + EPS:
                    out.append(i)
        return out

    def region_weights(self, region: Subnetwork) -> np.ndarray:
        """Share of ``region``'s length falling in each cell."""
        total = region.measure
        w = np.zeros(self.size)
        for i, (arc, lo, hi) in enumerate(self.cells):
            frs = region.on_arc(arc)
            if frs:
                w[i] = sum(max(0.0, min(hi, f.hi) - max(lo, f.lo)) for f in frs)
        return w / total

    def to_subnetwork(self, cells) -> Subnetwork:
        cells = sorted(set(int(c) for c in cells))
        frags = [Fragment(self.cells[i][0], self.cells[i][1], self.cells[i][2]) for i in cells]
        return subnetwork(self.net, frags)

    @cached_property
    def trap_positions(self) -> tuple[tuple[Point, tuple[int, ...]], ...]:
        """Where a trap may sit, with the cells it hits: cell midpoints, then nodes."""
        out = [(self.midpoint(i), (i,)) for i in range(self.size)]
        out += [(Point(node=n), tuple(self.ends_at[n])) for n in self.net.nodes]
        return tuple(out)

    def hit_matrix(self) -> np.ndarray:
        """``H[p, c] = 1`` when a trap at position ``p`` lies in cell ``c``."""
        H = np.zeros((len(self.trap_positions), self.size))
        for p, (_, cells) in enumerate(self.trap_positions):
            H[p, list(cells)] = 1.0
        return H

    def cells_of(self, mask: int) -> list[int]:
        return [i for i in range(self.size) if mask >> i & 1]

    def grid_points(self) -> list[Point]:
        """Nodes, cell midpoints and interior cell boundaries."""
        pts = [Point(node=n) for n in self.net.nodes]
        for i, (arc, lo, hi) in enumerate(self.cells):
            pts.append(self.net.point(arc, (lo + hi) / 2))
            a = self.net.arc(arc)
            if hi < a.length - EPS:
                pts.append(self.net.point(arc, hi))
        return pts


def measure_of_cells(grid: CellGrid, cells) -> float:
    return float(grid.lengths[list(cells)].sum())


__all__ = ["CellGrid", "ArcCells", "measure_of_cells"]
