"""Nodal rates du/dt = -(sum of the parts aimed at a node) / |C|."""

from typing import Union

import numpy as np

from ..core.mesh import Grid1D, Grid2D
from ..models.problems import BenchmarkProblem
from ..scheme.distribution import (
    DEFAULT_SCHEME,
    CellDistribution,
    SchemeSettings,
    distribute,
    distribute_1d,
    distribute_2d,
)
from ..utils.logger import LoggerMixin
from ..utils.metrics import rate_evaluations
from .boundary import BoundaryPlan


def accumulate_1d(parts: np.ndarray, n_nodes: int) -> np.ndarray:
    """Node i gets Phi^+ of cell i - 1/2 and Phi^- of cell i + 1/2."""
    acc = np.zeros((n_nodes,) + parts.shape[2:])
    acc[:-1] += parts[:, 0]
    acc[1:] += parts[:, 1]
    return acc


def accumulate_2d(parts: np.ndarray) -> np.ndarray:
    """Scatter (nx, ny, 4, m) vertex parts, order M1..M4, onto the (nx + 1, ny + 1, m) nodes."""
    nx, ny = parts.shape[:2]
    acc = np.zeros((nx + 1, ny + 1) + parts.shape[3:])
    acc[1:, 1:] += parts[:, :, 0]
    acc[1:, :-1] += parts[:, :, 1]
    acc[:-1, 1:] += parts[:, :, 2]
    acc[:-1, :-1] += parts[:, :, 3]
    return acc


def assemble_rates(
    law,
    grid: Union[Grid1D, Grid2D],
    u: np.ndarray,
    settings: SchemeSettings = DEFAULT_SCHEME,
) -> np.ndarray:
    """
    Rates of every node with no boundary policy: boundary nodes simply
    collect the cells they touch.
    """
    law.check_admissible(u)
    dist = distribute(law, grid, u, settings)
    if isinstance(grid, Grid1D):
        acc = accumulate_1d(dist.parts, grid.nodes.size)
        return -acc / grid.dual_measures[:, None]
    return -accumulate_2d(dist.parts) / grid.dual_areas[..., None]


class SpatialOperator(LoggerMixin):
    """
    Right-hand side of the pseudo-time ODE for one problem on one grid,
    boundary policies included.
    """

    def __init__(
        self,
        problem: BenchmarkProblem,
        grid: Union[Grid1D, Grid2D],
        settings: SchemeSettings = DEFAULT_SCHEME,
    ):
        self.problem = problem
        self.law = problem.law
        self.grid = grid
        self.settings = settings
        self.plan = BoundaryPlan.build(problem, grid)

        if isinstance(grid, Grid1D):
            self.dimension = 1
            self.spacing = grid.spacing()
            self.measures = grid.dual_measures
        else:
            self.dimension = 2
            self.spacing = grid.spacings()
            self.measures = self.plan.dual_areas(grid)

        self._counter = rate_evaluations.labels(dimension=str(self.dimension))
        self.logger.debug(
            f"Operator for {problem.name}: dimension {self.dimension}, walls {list(self.plan.walls)}"
        )

    def distribution(self, u: np.ndarray) -> CellDistribution:
        """Cell distribution over the real and, if any, mirrored cells."""
        if self.dimension == 1:
            return distribute_1d(self.law, self.grid.nodes, u, self.spacing, self.settings)

        hx, hy = self.spacing
        u_ext, x_ext, y_ext, _ = self.plan.extend(self.law, self.grid, u)
        return distribute_2d(self.law, x_ext, y_ext, u_ext, hx, hy, self.settings)

    def __call__(self, u: np.ndarray) -> np.ndarray:
        return self.rates(u)

    def rates(self, u: np.ndarray) -> np.ndarray:
        self.law.check_admissible(u)
        self._counter.inc()

        if self.dimension == 1:
            dist = distribute_1d(self.law, self.grid.nodes, u, self.spacing, self.settings)
            acc = accumulate_1d(dist.parts, u.shape[0])
        else:
            hx, hy = self.spacing
            u_ext, x_ext, y_ext, window = self.plan.extend(self.law, self.grid, u)
            dist = distribute_2d(self.law, x_ext, y_ext, u_ext, hx, hy, self.settings)
            acc = accumulate_2d(dist.parts)[window]

        rates = -acc / self.measures[..., None]
        return self.plan.zero_pinned(rates)

    def project(self, u: np.ndarray) -> np.ndarray:
        """Enforce the Dirichlet data."""
        return self.plan.apply(u)
