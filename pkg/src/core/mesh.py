"""Structured 1D and 2D tensor-product grids with dual control volumes."""

from dataclasses import dataclass, field
from typing import NamedTuple, Tuple

import numpy as np

from ..errors import MeshError, StencilError

MIN_CELLS = 4

# Relative tolerance of the uniform-spacing check, plus a rounding allowance
# proportional to the coordinate magnitude.
UNIFORM_RTOL = 1e-12
_ROUNDING_ULPS = 64


def _frozen(values: np.ndarray) -> np.ndarray:
    out = np.array(values, dtype=np.float64)
    out.flags.writeable = False
    return out


class AxisSpec(NamedTuple):
    """Interval and cell count of one grid axis."""

    lower: float
    upper: float
    cells: int


@dataclass(frozen=True, eq=False)
class Grid1D:
    """
    Ordered nodes x_0..x_N with the dual control volumes |C_i|.

    C_i spans from the midpoint of the left interval to the midpoint of the
    right one; boundary duals are half intervals.
    """

    nodes: np.ndarray
    cell_widths: np.ndarray = field(init=False, repr=False)
    dual_measures: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=np.float64)
        if nodes.ndim != 1:
            raise MeshError("grid nodes must be a 1D array")
        if nodes.size < MIN_CELLS + 1:
            raise MeshError(
                f"at least {MIN_CELLS} cells are needed for WENO stencils, got {nodes.size - 1}"
            )
        widths = np.diff(nodes)
        if np.any(widths <= 0.0):
            raise MeshError("grid nodes must be strictly increasing")

        duals = np.empty_like(nodes)
        duals[1:-1] = 0.5 * (widths[:-1] + widths[1:])
        duals[0] = 0.5 * widths[0]
        duals[-1] = 0.5 * widths[-1]

        object.__setattr__(self, "nodes", _frozen(nodes))
        object.__setattr__(self, "cell_widths", _frozen(widths))
        object.__setattr__(self, "dual_measures", _frozen(duals))

    @property
    def n_cells(self) -> int:
        return self.nodes.size - 1

    @property
    def lower(self) -> float:
        return float(self.nodes[0])

    @property
    def upper(self) -> float:
        return float(self.nodes[-1])

    @property
    def length(self) -> float:
        return self.upper - self.lower

    @property
    def cell_centers(self) -> np.ndarray:
        return 0.5 * (self.nodes[:-1] + self.nodes[1:])

    def is_uniform(self) -> bool:
        h = self.length / self.n_cells
        scale = max(abs(self.lower), abs(self.upper))
        tol = UNIFORM_RTOL * h + _ROUNDING_ULPS * np.spacing(scale)
        return bool(np.all(np.abs(self.cell_widths - h) <= tol))

    def spacing(self) -> float:
        """
        Uniform cell width.

        Raises:
            StencilError: if the grid is not uniform; the quadrature closed
                forms assume equal spacing
        """
        if not self.is_uniform():
            raise StencilError("nonuniform grid spacing is not supported by the WENO-ZQ closed forms")
        return self.length / self.n_cells

    def extended_nodes(self, pad_lower: int, pad_upper: int) -> np.ndarray:
        """Nodes continued uniformly by ``pad_lower``/``pad_upper`` ghost points."""
        h = self.spacing()
        lower = self.nodes[0] - h * np.arange(pad_lower, 0, -1)
        upper = self.nodes[-1] + h * np.arange(1, pad_upper + 1)
        return np.concatenate([lower, self.nodes, upper])


@dataclass(frozen=True, eq=False)
class Grid2D:
    """Tensor product of two axes; arrays are indexed ``[i, j]`` with i along x."""

    x: Grid1D
    y: Grid1D
    dual_areas: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        # Connecting the centers of the four cells around a node gives a
        # rectangle whose sides are the two axis duals.
        object.__setattr__(
            self, "dual_areas", _frozen(np.outer(self.x.dual_measures, self.y.dual_measures))
        )

    @property
    def shape(self) -> Tuple[int, int]:
        """Node counts (nx + 1, ny + 1)."""
        return self.x.nodes.size, self.y.nodes.size

    @property
    def cells(self) -> Tuple[int, int]:
        return self.x.n_cells, self.y.n_cells

    @property
    def area(self) -> float:
        return self.x.length * self.y.length

    def spacings(self) -> Tuple[float, float]:
        return self.x.spacing(), self.y.spacing()

    def coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        """Node coordinate arrays X, Y of shape (nx + 1, ny + 1)."""
        return np.meshgrid(self.x.nodes, self.y.nodes, indexing="ij")


def build_grid_1d(a: float, b: float, n: int) -> Grid1D:
    """
    Uniform grid of ``n`` cells on [a, b].

    Raises:
        MeshError: if n < 4 or b <= a
    """
    if not np.isfinite(a) or not np.isfinite(b) or b <= a:
        raise MeshError(f"grid interval must satisfy b > a, got [{a}, {b}]")
    if int(n) != n or n < MIN_CELLS:
        raise MeshError(f"need at least {MIN_CELLS} cells for WENO stencils, got {n}")

    n = int(n)
    h = (b - a) / n
    nodes = a + h * np.arange(n + 1)
    nodes[-1] = b
    return Grid1D(nodes)


def build_grid_2d(ax: Tuple[float, float, int], ay: Tuple[float, float, int]) -> Grid2D:
    """Uniform tensor-product grid; each axis is ``(lower, upper, cells)``."""
    x_spec, y_spec = AxisSpec(*ax), AxisSpec(*ay)
    return Grid2D(
        x=build_grid_1d(x_spec.lower, x_spec.upper, x_spec.cells),
        y=build_grid_1d(y_spec.lower, y_spec.upper, y_spec.cells),
    )
