"""
Distribution of cell residuals to the cell vertices.

For every cell: Lax-Friedrichs parts are projected onto the characteristic
fields of the average state, limited component by component with the Struijs
limiter, projected back, and the streamline dissipation is added:

    Phi^k = R (B^k * (L Phi)) + Phi^k_diss

For scalar laws L = R = 1 and this is Phi^k = beta^k Phi + Phi^k_diss.
All functions work on every cell of a grid at once.
"""

from dataclasses import dataclass
from typing import Literal, Optional, Tuple, Union

import numpy as np

from ..core.mesh import Grid1D, Grid2D
from ..core.quadrature import DEFAULT_WENO, WenoParameters
from ..errors import ConfigurationError
from ..models.base import ConservationLaw1D, ConservationLaw2D
from .dissipation import dissipation_1d, dissipation_2d
from .limiter import ROE_EPSILON, alpha_1d, alpha_2d, lxf_split, struijs_limiter
from .residual import cell_residuals_1d, cell_residuals_2d

AverageState = Literal["arithmetic", "roe"]
Direction = Literal["auto", "velocity", "x", "y"]

CONSERVATION_RTOL = 1e-12


@dataclass(frozen=True)
class SchemeSettings:
    """Numerical switches of the distribution step."""

    weno: WenoParameters = DEFAULT_WENO
    roe_epsilon: float = ROE_EPSILON
    average_state: AverageState = "arithmetic"
    direction: Direction = "auto"


DEFAULT_SCHEME = SchemeSettings()


@dataclass(frozen=True, eq=False)
class CellDistribution:
    """
    Total residuals and their vertex parts.

    ``total`` has shape (..., m) and ``parts`` (..., K, m) with K = 2 in 1D
    and K = 4 in 2D (vertex order M1..M4).
    """

    total: np.ndarray
    parts: np.ndarray
    dissipation: Optional[np.ndarray] = None
    weights: Optional[np.ndarray] = None

    @property
    def n_vertices(self) -> int:
        return self.parts.shape[-2]

    def conservation_defect(self) -> np.ndarray:
        """max |sum_k Phi^k - Phi| / (|Phi| + 1) over components, per cell."""
        defect = np.abs(np.sum(self.parts, axis=-2) - self.total) / (np.abs(self.total) + 1.0)
        return np.max(defect, axis=-1)

    def is_conservative(self, rtol: float = CONSERVATION_RTOL) -> bool:
        return bool(np.all(self.conservation_defect() <= rtol))

    def cell(self, index: Union[int, Tuple[int, ...]]) -> "CellDistribution":
        """The distribution of a single cell."""
        pick = (lambda a: None if a is None else a[index])
        return CellDistribution(
            total=self.total[index],
            parts=self.parts[index],
            dissipation=pick(self.dissipation),
            weights=pick(self.weights),
        )


def _average(law, states: np.ndarray, mode: AverageState) -> np.ndarray:
    if mode == "roe":
        return law.roe_average(states, axis=-2)
    return law.average_state(states, axis=-2)


def _limit(total, lxf_parts, left, right):
    """Characteristic Struijs limiting; returns limited parts and weights."""
    psi = np.einsum("...ij,...j->...i", left, total)
    psi_parts = np.einsum("...ij,...kj->...ki", left, lxf_parts)
    weights = struijs_limiter(psi_parts, psi)
    limited = np.einsum("...ij,...kj->...ki", right, weights * psi[..., None, :])
    return limited, weights


def distribute_1d(
    law: ConservationLaw1D,
    x: np.ndarray,
    u: np.ndarray,
    spacing: float,
    settings: SchemeSettings = DEFAULT_SCHEME,
) -> CellDistribution:
    """Distribution for every cell of a uniform 1D node row."""
    total = cell_residuals_1d(law, x, u, spacing, settings.weno)

    states = np.stack([u[:-1], u[1:]], axis=-2)
    centers = 0.5 * (x[:-1] + x[1:])
    mean = np.mean(states, axis=-2)

    radius = law.spectral_radius(u, x)
    alpha = alpha_1d(radius[:-1], radius[1:], spacing)
    lxf_parts = lxf_split(total, states, mean, alpha)

    eig = law.eigen(_average(law, states, settings.average_state), centers)
    limited, weights = _limit(total, lxf_parts, eig.left, eig.right)
    dissipation = dissipation_1d(total, eig, settings.roe_epsilon)

    return CellDistribution(total, limited + dissipation, dissipation, weights)


def projection_direction(law: ConservationLaw2D, mean: np.ndarray, direction: Direction) -> np.ndarray:
    """Unit direction n whose eigenvectors carry the characteristic limiting."""
    if direction == "auto":
        return law.default_direction(mean)
    if direction == "velocity":
        velocity_direction = getattr(law, "velocity_direction", None)
        if velocity_direction is None:
            raise ConfigurationError(f"{law.name} has no flow velocity to align the projection with")
        return velocity_direction(mean)

    n = np.zeros(mean.shape[:-1] + (2,))
    n[..., 0 if direction == "x" else 1] = 1.0
    return n


def vertex_stack(values: np.ndarray) -> np.ndarray:
    """(nx + 1, ny + 1, ...) nodal array -> (nx, ny, 4, ...) per-cell vertex values, M1..M4."""
    return np.stack([values[1:, 1:], values[1:, :-1], values[:-1, 1:], values[:-1, :-1]], axis=2)


def distribute_2d(
    law: ConservationLaw2D,
    x: np.ndarray,
    y: np.ndarray,
    u: np.ndarray,
    hx: float,
    hy: float,
    settings: SchemeSettings = DEFAULT_SCHEME,
) -> CellDistribution:
    """Distribution for every cell of a (nx + 1, ny + 1) node block."""
    total = cell_residuals_2d(law, x, y, u, hx, hy, settings.weno)

    X, Y = np.meshgrid(x, y, indexing="ij")
    states = vertex_stack(u)
    mean = np.mean(states, axis=-2)
    xc, yc = np.meshgrid(0.5 * (x[:-1] + x[1:]), 0.5 * (y[:-1] + y[1:]), indexing="ij")

    radius_x, radius_y = law.spectral_radii(u, X, Y)
    alpha = alpha_2d(vertex_stack(radius_x), vertex_stack(radius_y), hx, hy)
    lxf_parts = lxf_split(total, states, mean, alpha)

    average = _average(law, states, settings.average_state)
    n = projection_direction(law, average, settings.direction)
    eig = law.eigen_in_direction(average, n, xc, yc)
    limited, weights = _limit(total, lxf_parts, eig.left, eig.right)
    dissipation = dissipation_2d(law, total, average, xc, yc, hx, hy, settings.roe_epsilon)

    return CellDistribution(total, limited + dissipation, dissipation, weights)


def distribute_cell(
    law: Union[ConservationLaw1D, ConservationLaw2D],
    grid: Union[Grid1D, Grid2D],
    u: np.ndarray,
    cell: Union[int, Tuple[int, int]],
    settings: SchemeSettings = DEFAULT_SCHEME,
) -> CellDistribution:
    """Distribution of one cell; the stencils use the whole state."""
    return distribute(law, grid, u, settings).cell(cell)


def distribute(
    law: Union[ConservationLaw1D, ConservationLaw2D],
    grid: Union[Grid1D, Grid2D],
    u: np.ndarray,
    settings: SchemeSettings = DEFAULT_SCHEME,
) -> CellDistribution:
    if isinstance(grid, Grid1D):
        return distribute_1d(law, grid.nodes, u, grid.spacing(), settings)  # type: ignore[arg-type]
    hx, hy = grid.spacings()
    return distribute_2d(law, grid.x.nodes, grid.y.nodes, u, hx, hy, settings)  # type: ignore[arg-type]
