"""Zero-sum matrix games: rows minimize, columns maximize."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog


@dataclass(frozen=True)
class MatrixGameSolution:
    value: float
    row_mix: np.ndarray
    col_mix: np.ndarray
    exploitability: float
    certified: bool
    method: str = "lp"
    iterations: int = 0
    lower: float = 0.0
    upper: float = 0.0
    columns: tuple = field(default=(), repr=False)

    def summary(self) -> str:
        flag = "certified" if self.certified else "NOT certified"
        return (
            f"value {self.value:.6f} in [{self.lower:.6f}, {self.upper:.6f}], "
            f"exploitability {self.exploitability:.2e} ({flag}, {self.method}, {self.iterations} iterations)"
        )


def _clean(mix: np.ndarray) -> np.ndarray:
    mix = np.clip(np.asarray(mix, dtype=float), 0.0, None)
    s = mix.sum()
    if s <= 0:
        return np.full(len(mix), 1.0 / len(mix))
    return mix / s


def certify(payoff: np.ndarray, row_mix: np.ndarray, col_mix: np.ndarray) -> tuple[float, float, float]:
    """Best-reply values against both mixes: (lower, upper, upper - lower)."""
    upper = float((row_mix @ payoff).max())
    lower = float((payoff @ col_mix).min())
    return lower, upper, upper - lower


def _solve_lp(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n_rows, n_cols = A.shape
    c = np.zeros(n_rows + 1)
    c[-1] = 1.0
    a_ub = np.hstack([A.T, -np.ones((n_cols, 1))])
    a_eq = np.zeros((1, n_rows + 1))
    a_eq[0, :n_rows] = 1.0
    bounds = [(0, None)] * n_rows + [(None, None)]
    res = linprog(c, A_ub=a_ub, b_ub=np.zeros(n_cols), A_eq=a_eq, b_eq=[1.0], bounds=bounds, method="highs")
    if res.status != 0:
        raise RuntimeError(f"LP solver failed: {res.message}")
    return _clean(res.x[:n_rows]), _clean(-res.ineqlin.marginals)


def _solve_rm_plus(A: np.ndarray, tol: float, max_iters: int):
    """Regret matching+ with alternating updates and linearly weighted averages."""
    n_rows, n_cols = A.shape
    r_row = np.zeros(n_rows)
    r_col = np.zeros(n_cols)
    x = np.full(n_rows, 1.0 / n_rows)
    y = np.full(n_cols, 1.0 / n_cols)
    avg_x = np.zeros(n_rows)
    avg_y = np.zeros(n_cols)
    best = (np.inf, x, y)
    it = 0
    for it in range(1, max_iters + 1):
        # row player minimizes, so its regret is against lower row losses
        loss = A @ y
        r_row = np.maximum(0.0, r_row + (x @ loss) - loss)
        x = r_row / r_row.sum() if r_row.sum() > 0 else np.full(n_rows, 1.0 / n_rows)
        avg_x += it * x
        gain = x @ A
        r_col = np.maximum(0.0, r_col + gain - (gain @ y))
        y = r_col / r_col.sum() if r_col.sum() > 0 else np.full(n_cols, 1.0 / n_cols)
        avg_y += it * y
        if it % 50 == 0 or it == max_iters:
            ax, ay = avg_x / avg_x.sum(), avg_y / avg_y.sum()
            gap = certify(A, ax, ay)[2]
            if gap < best[0]:
                best = (gap, ax, ay)
            if gap <= tol:
                break
    return best[1], best[2], it


def solve_matrix_game(payoff, tol: float = 1e-6, max_iters: int = 100_000, method: str = "lp") -> MatrixGameSolution:
    """Solve the game where the row player pays ``payoff[i, j]`` to the column player.

    The answer is certified by exploitability: the best deviation gain of
    either side against the returned mixes, computed exactly on the matrix.
    """
    A = np.asarray(payoff, dtype=float)
    if A.ndim != 2 or A.size == 0:
        raise ValueError("payoff must be a nonempty matrix")
    if tol <= 0:
        raise ValueError("tol must be positive")
    iterations = 0
    if method == "lp":
        x, y = _solve_lp(A)
    elif method == "rm+":
        x, y, iterations = _solve_rm_plus(A, tol, max_iters)
    else:
        raise ValueError(f"unknown method {method!r}")
    lower, upper, gap = certify(A, x, y)
    return MatrixGameSolution((lower + upper) / 2, x, y, gap, gap <= tol, method, iterations, lower, upper)
