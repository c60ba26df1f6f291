"""
Total residuals per cell from nodal point values.

1D:  Phi_{i+1/2} = f(u_{i+1}) - f(u_i) - int_{x_i}^{x_{i+1}} s dx
2D:  Phi_{i+1/2,j+1/2} = int_y [f(u(x_{i+1}, .)) - f(u(x_i, .))]
                        + int_x [g(u(., y_{j+1})) - g(u(., y_j))] - int_cell s

Every integral is a WENO-ZQ integral of nodal samples.
"""

from typing import Union

import numpy as np

from ..core.mesh import Grid1D, Grid2D
from ..core.quadrature import DEFAULT_WENO, WenoParameters, weno_zq_integrate, weno_zq_integrate_2d
from ..models.base import ConservationLaw1D, ConservationLaw2D


def cell_residuals_1d(
    law: ConservationLaw1D,
    x: np.ndarray,
    u: np.ndarray,
    spacing: float,
    params: WenoParameters = DEFAULT_WENO,
) -> np.ndarray:
    """Residuals of all cells of a uniform node row, shape (n, m)."""
    fluxes = law.flux(u, x)
    sources = law.source(u, x)
    return fluxes[1:] - fluxes[:-1] - weno_zq_integrate(sources, spacing, params, axis=0)


def cell_residuals_2d(
    law: ConservationLaw2D,
    x: np.ndarray,
    y: np.ndarray,
    u: np.ndarray,
    hx: float,
    hy: float,
    params: WenoParameters = DEFAULT_WENO,
) -> np.ndarray:
    """Residuals of all cells of a (nx + 1, ny + 1) node block, shape (nx, ny, m)."""
    X, Y = np.meshgrid(x, y, indexing="ij")

    f_edges = weno_zq_integrate(law.flux_x(u, X, Y), hy, params, axis=1)
    g_edges = weno_zq_integrate(law.flux_y(u, X, Y), hx, params, axis=0)
    sources = weno_zq_integrate_2d(law.source(u, X, Y), hx, hy, params)

    return (f_edges[1:, :] - f_edges[:-1, :]) + (g_edges[:, 1:] - g_edges[:, :-1]) - sources


def total_residual_1d(
    law: ConservationLaw1D,
    grid: Grid1D,
    u: np.ndarray,
    i: int,
    params: WenoParameters = DEFAULT_WENO,
) -> np.ndarray:
    """Residual of cell [x_i, x_{i+1}]."""
    return cell_residuals_1d(law, grid.nodes, u, grid.spacing(), params)[i]


def total_residual_2d(
    law: ConservationLaw2D,
    grid: Grid2D,
    u: np.ndarray,
    i: int,
    j: int,
    params: WenoParameters = DEFAULT_WENO,
) -> np.ndarray:
    """Residual of cell [x_i, x_{i+1}] x [y_j, y_{j+1}]."""
    hx, hy = grid.spacings()
    return cell_residuals_2d(law, grid.x.nodes, grid.y.nodes, u, hx, hy, params)[i, j]


def cell_residuals(
    law: Union[ConservationLaw1D, ConservationLaw2D],
    grid: Union[Grid1D, Grid2D],
    u: np.ndarray,
    params: WenoParameters = DEFAULT_WENO,
) -> np.ndarray:
    """Residuals of every cell of ``grid``."""
    if isinstance(grid, Grid1D):
        return cell_residuals_1d(law, grid.nodes, u, grid.spacing(), params)  # type: ignore[arg-type]
    hx, hy = grid.spacings()
    return cell_residuals_2d(law, grid.x.nodes, grid.y.nodes, u, hx, hy, params)  # type: ignore[arg-type]
