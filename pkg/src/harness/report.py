"""Result records of the benchmark harness."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple


@dataclass
class RunReport:
    """Outcome of a single benchmark run."""

    problem: str
    cells: Tuple[int, ...]
    outcome: str
    iterations: int
    final_residue: float
    plateau: float
    pseudo_time: float
    wall_time: float
    l1_error: Optional[float] = None
    linf_error: Optional[float] = None
    shock_location: Optional[float] = None
    section_shocks: Dict[float, Optional[float]] = field(default_factory=dict)
    value_range: Optional[Tuple[float, float]] = None
    files: Dict[str, str] = field(default_factory=dict)

    @property
    def converged(self) -> bool:
        return self.outcome == "converged"

    def to_dict(self) -> Dict:
        """Convert to dictionary."""
        return {
            "problem": self.problem,
            "cells": list(self.cells),
            "outcome": self.outcome,
            "iterations": self.iterations,
            "final_residue": self.final_residue,
            "plateau": self.plateau,
            "pseudo_time": self.pseudo_time,
            "wall_time": self.wall_time,
            "l1_error": self.l1_error,
            "linf_error": self.linf_error,
            "shock_location": self.shock_location,
            "section_shocks": {str(y): x for y, x in self.section_shocks.items()},
            "value_range": list(self.value_range) if self.value_range else None,
            "files": dict(self.files),
        }


@dataclass
class ConvergenceLevel:
    """One row of a grid refinement table."""

    cells: int
    l1_error: float
    linf_error: float
    l1_order: Optional[float] = None
    linf_order: Optional[float] = None
    iterations: int = 0
    final_residue: float = float("nan")
    outcome: str = ""

    def to_dict(self) -> Dict:
        return {
            "cells": self.cells,
            "l1_error": self.l1_error,
            "l1_order": self.l1_order,
            "linf_error": self.linf_error,
            "linf_order": self.linf_order,
            "iterations": self.iterations,
            "final_residue": self.final_residue,
            "outcome": self.outcome,
        }


@dataclass
class ConvergenceTable:
    problem: str
    levels: List[ConvergenceLevel] = field(default_factory=list)
    files: Dict[str, str] = field(default_factory=dict)

    def final_orders(self) -> Tuple[Optional[float], Optional[float]]:
        """(L1, Linf) orders of the finest pair."""
        if not self.levels:
            return None, None
        last = self.levels[-1]
        return last.l1_order, last.linf_order


@dataclass
class CflHistoryEntry:
    """Residue behavior of one CFL number in a sweep."""

    cfl: float
    outcome: str
    iterations: int
    iterations_to_threshold: Optional[int]
    final_residue: float
    plateau: float
    residue_file: Optional[str] = None

    def to_dict(self) -> Dict:
        return {
            "cfl": self.cfl,
            "outcome": self.outcome,
            "iterations": self.iterations,
            "iterations_to_threshold": self.iterations_to_threshold,
            "final_residue": self.final_residue,
            "plateau": self.plateau,
            "residue_file": self.residue_file,
        }
