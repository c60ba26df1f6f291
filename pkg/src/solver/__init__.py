"""Nodal rates, boundary policies and pseudo-time marching."""

from .boundary import BoundaryPlan, apply_boundary
from .marching import (
    MarchResult,
    ResidueHistory,
    SolverConfig,
    SteadyStateSolver,
    default_solver_config,
    march_to_steady,
)
from .operator import SpatialOperator, assemble_rates
from .timestep import compute_dt, l1_residue, rk3_step

__all__ = [
    "BoundaryPlan",
    "apply_boundary",
    "MarchResult",
    "ResidueHistory",
    "SolverConfig",
    "SteadyStateSolver",
    "default_solver_config",
    "march_to_steady",
    "SpatialOperator",
    "assemble_rates",
    "compute_dt",
    "l1_residue",
    "rk3_step",
]
