"""Conservation laws and the benchmark problem registry."""

from .base import BoundaryCondition, BoundaryKind, ConservationLaw1D, ConservationLaw2D, Eigensystem
from .problems import PROBLEM_NAMES, BenchmarkProblem, exact_solution, list_problems, registry_lookup

__all__ = [
    "BoundaryCondition",
    "BoundaryKind",
    "ConservationLaw1D",
    "ConservationLaw2D",
    "Eigensystem",
    "BenchmarkProblem",
    "PROBLEM_NAMES",
    "exact_solution",
    "list_problems",
    "registry_lookup",
]
