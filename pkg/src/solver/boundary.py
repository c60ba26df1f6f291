"""
Boundary policies.

* Dirichlet nodes are pinned to the boundary data after every RK stage and
  get a zero rate. At corners a node is pinned if any adjacent edge is
  Dirichlet; edges are applied left, right, bottom, top so the last one wins.
* Outflow nodes evolve from the cells that exist, divided by their partial
  dual measure.
* Reflective walls add two rows of mirrored ghost nodes (normal momentum
  negated) so that WENO stencils and the mirrored cells can be evaluated;
  wall nodes then own a full dual.
"""

from dataclasses import dataclass, field
from typing import Dict, Tuple, Union

import numpy as np

from ..core.mesh import Grid1D, Grid2D
from ..errors import ConfigurationError
from ..models.base import BoundaryKind, ConservationLaw2D
from ..models.problems import EDGES_1D, EDGES_2D, BenchmarkProblem

GHOST_ROWS = 2

# Axis of the wall normal and the side of the axis each edge sits on.
_EDGE_GEOMETRY: Dict[str, Tuple[int, int]] = {
    "left": (0, 0),
    "right": (0, -1),
    "bottom": (1, 0),
    "top": (1, -1),
}


@dataclass(frozen=True, eq=False)
class BoundaryPlan:
    """Precomputed boundary treatment of one problem on one grid."""

    pinned: np.ndarray                      # bool, node shape
    pinned_values: np.ndarray               # node shape + (m,)
    walls: Tuple[str, ...] = ()
    kinds: Dict[str, BoundaryKind] = field(default_factory=dict)

    @classmethod
    def build(cls, problem: BenchmarkProblem, grid: Union[Grid1D, Grid2D]) -> "BoundaryPlan":
        m = problem.m
        if isinstance(grid, Grid1D):
            shape: Tuple[int, ...] = (grid.nodes.size,)
            edges = EDGES_1D
        else:
            shape = grid.shape
            edges = EDGES_2D

        pinned = np.zeros(shape, dtype=bool)
        values = np.zeros(shape + (m,))
        walls = []
        kinds = {}

        for edge in edges:
            bc = problem.boundaries.get(edge)
            if bc is None:
                raise ConfigurationError(f"{problem.name}: undefined boundary policy for {edge}")
            kinds[edge] = bc.kind

            if bc.kind is BoundaryKind.REFLECTIVE:
                if isinstance(grid, Grid1D):
                    raise ConfigurationError("reflective boundaries are only available in 2D")
                walls.append(edge)
            elif bc.kind is BoundaryKind.DIRICHLET:
                index, coords = _edge_nodes(grid, edge)
                data = np.asarray(bc.data(*coords), dtype=np.float64)  # type: ignore[misc]
                values[index] = np.broadcast_to(data, values[index].shape)
                pinned[index] = True

        values[~pinned] = 0.0
        pinned.flags.writeable = False
        values.flags.writeable = False
        return cls(pinned=pinned, pinned_values=values, walls=tuple(walls), kinds=kinds)

    def apply(self, u: np.ndarray) -> np.ndarray:
        """Copy of ``u`` with the Dirichlet nodes pinned."""
        out = np.array(u, dtype=np.float64, copy=True)
        out[self.pinned] = self.pinned_values[self.pinned]
        return out

    def zero_pinned(self, rates: np.ndarray) -> np.ndarray:
        rates[self.pinned] = 0.0
        return rates

    def dual_areas(self, grid: Grid2D) -> np.ndarray:
        """Node duals; nodes on a reflective wall own both halves of their dual."""
        dual_x = np.array(grid.x.dual_measures, copy=True)
        dual_y = np.array(grid.y.dual_measures, copy=True)
        for edge in self.walls:
            axis, side = _EDGE_GEOMETRY[edge]
            target = dual_x if axis == 0 else dual_y
            target[side] *= 2.0
        return np.outer(dual_x, dual_y)

    def extend(
        self, law: ConservationLaw2D, grid: Grid2D, u: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray, Tuple[slice, slice]]:
        """
        Node block with ghost rows on every reflective wall.

        Returns:
            (u_ext, x_ext, y_ext, window) where ``u_ext[window]`` is ``u``.
        """
        pads = {edge: GHOST_ROWS if edge in self.walls else 0 for edge in EDGES_2D}
        if not self.walls:
            return u, grid.x.nodes, grid.y.nodes, (slice(None), slice(None))

        pad_width = ((pads["left"], pads["right"]), (pads["bottom"], pads["top"]), (0, 0))
        extended = np.pad(u, pad_width, mode="reflect")

        for edge in self.walls:
            axis, side = _EDGE_GEOMETRY[edge]
            ghosts = [slice(None)] * 2
            ghosts[axis] = slice(0, GHOST_ROWS) if side == 0 else slice(-GHOST_ROWS, None)
            ghost_index = tuple(ghosts)
            extended[ghost_index] = law.reflect(extended[ghost_index], normal_axis=axis)

        x_ext = grid.x.extended_nodes(pads["left"], pads["right"])
        y_ext = grid.y.extended_nodes(pads["bottom"], pads["top"])
        nx, ny = grid.shape
        window = (
            slice(pads["left"], pads["left"] + nx),
            slice(pads["bottom"], pads["bottom"] + ny),
        )
        return extended, x_ext, y_ext, window


def _edge_nodes(grid: Union[Grid1D, Grid2D], edge: str):
    """Index expression and coordinate arrays of the nodes on one edge."""
    if isinstance(grid, Grid1D):
        i = 0 if edge == "left" else grid.nodes.size - 1
        return (i,), (np.asarray(grid.nodes[i]),)

    X, Y = grid.coordinates()
    axis, side = _EDGE_GEOMETRY[edge]
    index = (side, slice(None)) if axis == 0 else (slice(None), side)
    return index, (X[index], Y[index])


def apply_boundary(problem: BenchmarkProblem, grid: Union[Grid1D, Grid2D], u: np.ndarray) -> np.ndarray:
    """``u`` with the problem's Dirichlet data enforced."""
    return BoundaryPlan.build(problem, grid).apply(u)
