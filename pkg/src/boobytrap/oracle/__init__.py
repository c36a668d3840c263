"""Numerical cross-checks: discretized games, matrix solvers and best replies."""

from .cells import CellGrid
from .core import DEFAULT_CAP, DiscretizedGame, EnumerationLimit, discretize, oracle_value
from .game import MatrixGameSolution, certify, solve_matrix_game
from .kernels import BACKEND
from .response import SkeletonLimit, best_response_attacker, best_response_defender

__all__ = [
    "BACKEND",
    "CellGrid",
    "DEFAULT_CAP",
    "DiscretizedGame",
    "EnumerationLimit",
    "MatrixGameSolution",
    "SkeletonLimit",
    "best_response_attacker",
    "best_response_defender",
    "certify",
    "discretize",
    "oracle_value",
    "solve_matrix_game",
]
