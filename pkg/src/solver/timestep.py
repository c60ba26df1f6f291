"""Pseudo-time step size, the TVD Runge-Kutta step and the L1 residue."""

from typing import Callable, Optional, Union

import numpy as np

from ..core.mesh import Grid1D, Grid2D
from ..scheme.distribution import vertex_stack

SPEED_FLOOR = 1e-14

RateFunction = Callable[[np.ndarray], np.ndarray]
Projection = Callable[[np.ndarray], np.ndarray]


def compute_dt(cfl: float, grid: Union[Grid1D, Grid2D], u: np.ndarray, law) -> float:
    """
    dt = cfl * min over cells of measure / (local max wave speed + 1e-14).

    In 2D the cell measure is min(hx, hy) and the wave speed is the largest
    spectral radius over all directions.
    """
    if isinstance(grid, Grid1D):
        speed = law.spectral_radius(u, grid.nodes)
        local = np.maximum(speed[:-1], speed[1:])
        return float(cfl * np.min(grid.cell_widths / (local + SPEED_FLOOR)))

    X, Y = grid.coordinates()
    speed = law.wave_speed(u, X, Y)
    local = np.max(vertex_stack(speed), axis=-1)
    hx, hy = grid.spacings()
    return float(cfl * min(hx, hy) / (np.max(local) + SPEED_FLOOR))


def rk3_step(
    u: np.ndarray,
    rate_fn: RateFunction,
    dt: float,
    project: Optional[Projection] = None,
    initial_rate: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Third-order TVD Runge-Kutta (Shu-Osher):

        u1 = u + dt L(u)
        u2 = 3/4 u + 1/4 (u1 + dt L(u1))
        u' = 1/3 u + 2/3 (u2 + dt L(u2))

    ``project`` is applied after every stage; ``initial_rate`` may carry an
    already evaluated L(u).
    """
    project = project or (lambda v: v)
    rate = rate_fn(u) if initial_rate is None else initial_rate

    # Increment form: zero rates return u bit for bit.
    u1 = project(u + dt * rate)
    u2 = project(u + 0.25 * (u1 - u) + 0.25 * dt * rate_fn(u1))
    return project(u + 2.0 / 3.0 * (u2 - u) + 2.0 / 3.0 * dt * rate_fn(u2))


def l1_residue(rates: np.ndarray, measures: np.ndarray) -> float:
    """sum |C_i| mean_c |rate_i,c| / sum |C_i|."""
    magnitude = np.mean(np.abs(rates), axis=-1)
    return float(np.sum(measures * magnitude) / np.sum(measures))
