"""Error norms, observed orders, shock detection and section extraction."""

from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.mesh import Grid1D, Grid2D
from ..errors import ConfigurationError

# A jump counts as a shock when it exceeds this multiple of the median increment.
SHOCK_JUMP_FACTOR = 10.0
SECTION_ATOL = 1e-12


class ErrorNorms(NamedTuple):
    l1: float
    linf: float


def _measures(grid: Union[Grid1D, Grid2D]) -> np.ndarray:
    return grid.dual_measures if isinstance(grid, Grid1D) else grid.dual_areas


def error_norms(
    state: np.ndarray,
    exact: np.ndarray,
    grid: Union[Grid1D, Grid2D],
    component: int = 0,
) -> ErrorNorms:
    """
    Dual-weighted L1 and maximum nodal error of one component.

    L1 = sum |C_i| |e_i| / sum |C_i|, Linf = max |e_i|.
    """
    state = np.asarray(state, dtype=np.float64)
    exact = np.asarray(exact, dtype=np.float64)
    if state.shape != exact.shape:
        raise ConfigurationError(f"state shape {state.shape} does not match exact {exact.shape}")

    error = np.abs(state[..., component] - exact[..., component])
    measures = _measures(grid)
    return ErrorNorms(
        l1=float(np.sum(measures * error) / np.sum(measures)),
        linf=float(np.max(error)),
    )


def observed_orders(errors: Sequence[float], cells: Sequence[int]) -> List[Optional[float]]:
    """
    log2(err_{N/2} / err_N) per level.

    The first level and levels that are not a doubling of the previous one
    get None, as do pairs with a vanishing error.
    """
    if len(errors) != len(cells):
        raise ValueError("errors and cells must have the same length")

    orders: List[Optional[float]] = [None]
    for k in range(1, len(errors)):
        coarse, fine = errors[k - 1], errors[k]
        if cells[k] != 2 * cells[k - 1] or coarse <= 0.0 or fine <= 0.0:
            orders.append(None)
        else:
            orders.append(float(np.log2(coarse / fine)))
    return orders[: len(errors)]


def _jump_cells(values: np.ndarray, factor: float) -> Tuple[np.ndarray, np.ndarray]:
    increments = np.abs(np.diff(np.asarray(values, dtype=np.float64)))
    threshold = factor * float(np.median(increments))
    return increments, increments > threshold


def shock_locator(
    values: np.ndarray, nodes: np.ndarray, factor: float = SHOCK_JUMP_FACTOR
) -> Optional[float]:
    """
    Midpoint of the cell with the largest |u_{i+1} - u_i|.

    Returns None when no increment exceeds ``factor`` times the median one.
    """
    values = np.asarray(values, dtype=np.float64)
    nodes = np.asarray(nodes, dtype=np.float64)
    if values.shape != nodes.shape or values.size < 2:
        raise ConfigurationError("shock_locator needs matching 1D values and nodes")

    increments, jumps = _jump_cells(values, factor)
    k = int(np.argmax(increments))
    if not jumps[k]:
        return None
    return float(0.5 * (nodes[k] + nodes[k + 1]))


def jump_loci(
    values: np.ndarray, nodes: np.ndarray, factor: float = SHOCK_JUMP_FACTOR
) -> List[float]:
    """Centers of every run of consecutive jump cells along a line."""
    nodes = np.asarray(nodes, dtype=np.float64)
    _, jumps = _jump_cells(values, factor)
    loci = []
    start = None
    for k, flagged in enumerate(np.append(jumps, False)):
        if flagged and start is None:
            start = k
        elif not flagged and start is not None:
            loci.append(float(0.5 * (nodes[start] + nodes[k])))
            start = None
    return loci


def cross_section(
    state: np.ndarray, grid: Grid2D, y: float, component: int = 0
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Values along the horizontal line at height ``y``.

    Rows between two grid lines are interpolated linearly in y.
    """
    nodes = grid.y.nodes
    if y < nodes[0] - SECTION_ATOL or y > nodes[-1] + SECTION_ATOL:
        raise ConfigurationError(f"section y = {y} lies outside [{nodes[0]}, {nodes[-1]}]")

    values = np.asarray(state, dtype=np.float64)[..., component]
    hit = np.flatnonzero(np.abs(nodes - y) <= SECTION_ATOL)
    if hit.size:
        return grid.x.nodes.copy(), values[:, hit[0]].copy()

    j = int(np.clip(np.searchsorted(nodes, y) - 1, 0, nodes.size - 2))
    w = (y - nodes[j]) / (nodes[j + 1] - nodes[j])
    return grid.x.nodes.copy(), (1.0 - w) * values[:, j] + w * values[:, j + 1]


def diagonal_section(
    state: np.ndarray, grid: Grid2D, component: int = 0
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Values at the nodes (i, i) with their rotated coordinate s = (x + y)/sqrt 2.

    Only defined on grids with as many cells in x as in y.
    """
    nx, ny = grid.shape
    if nx != ny:
        raise ConfigurationError(f"diagonal section needs a square node layout, got {nx}x{ny}")

    idx = np.arange(nx)
    s = (grid.x.nodes + grid.y.nodes) / np.sqrt(2.0)
    return s, np.asarray(state, dtype=np.float64)[idx, idx, component]


def masked_l1(
    values: np.ndarray,
    exact: np.ndarray,
    nodes: np.ndarray,
    exclude: Sequence[Tuple[float, float]] = (),
) -> float:
    """
    Mean absolute error along a uniform line, skipping the given intervals.

    Used to compare sections away from discontinuities.
    """
    nodes = np.asarray(nodes, dtype=np.float64)
    keep = np.ones(nodes.shape, dtype=bool)
    for lower, upper in exclude:
        keep &= (nodes < lower) | (nodes > upper)
    if not np.any(keep):
        raise ConfigurationError("every node of the section is excluded")
    error = np.abs(np.asarray(values, dtype=np.float64) - np.asarray(exact, dtype=np.float64))
    return float(np.mean(error[keep]))
