"""Residual distribution: total residuals, limiting and dissipation."""

from .distribution import (
    DEFAULT_SCHEME,
    CellDistribution,
    SchemeSettings,
    distribute,
    distribute_cell,
)
from .limiter import RoeFix, lxf_split, roe_correct, struijs_limiter
from .residual import cell_residuals, total_residual_1d, total_residual_2d

__all__ = [
    "DEFAULT_SCHEME",
    "CellDistribution",
    "SchemeSettings",
    "distribute",
    "distribute_cell",
    "RoeFix",
    "lxf_split",
    "roe_correct",
    "struijs_limiter",
    "cell_residuals",
    "total_residual_1d",
    "total_residual_2d",
]
