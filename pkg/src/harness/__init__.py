"""Benchmark harness: runs, refinement studies, CFL sweeps and result files."""

from .analysis import (
    ErrorNorms,
    cross_section,
    diagonal_section,
    error_norms,
    jump_loci,
    observed_orders,
    shock_locator,
)
from .output import contour_dump, read_contour
from .report import CflHistoryEntry, ConvergenceLevel, ConvergenceTable, RunReport
from .runner import BenchmarkRunner, cfl_history, convergence_study, run

__all__ = [
    "ErrorNorms",
    "cross_section",
    "diagonal_section",
    "error_norms",
    "jump_loci",
    "observed_orders",
    "shock_locator",
    "contour_dump",
    "read_contour",
    "CflHistoryEntry",
    "ConvergenceLevel",
    "ConvergenceTable",
    "RunReport",
    "BenchmarkRunner",
    "cfl_history",
    "convergence_study",
    "run",
]
