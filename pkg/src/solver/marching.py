"""Pseudo-time marching to steady state."""

import time
from dataclasses import dataclass, field
from typing import List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..core.mesh import Grid1D, Grid2D
from ..core.quadrature import WenoParameters
from ..errors import (
    ConfigurationError,
    EigenDecompositionError,
    InadmissibleStateError,
    SolverDivergenceError,
)
from ..models.problems import BenchmarkProblem
from ..scheme.distribution import SchemeSettings
from ..utils.config import get_config
from ..utils.logger import LoggerMixin
from ..utils.metrics import current_residue, record_outcome, solver_iterations
from .operator import SpatialOperator
from .timestep import compute_dt, l1_residue, rk3_step

PLATEAU_FRACTION = 0.1


class SolverConfig(BaseModel):
    """Numerical parameters of one steady solve."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    cfl: float = Field(default=0.3, gt=0)
    max_iters: int = Field(default=200000, gt=0)
    residue_tol: float = Field(default=1e-12, gt=0)
    roe_epsilon: float = Field(default=1e-2, gt=0)
    weno_gamma1: float = Field(default=0.99, gt=0, lt=1)
    weno_epsilon: float = Field(default=1e-6, gt=0)
    average_state: Literal["arithmetic", "roe"] = "arithmetic"
    direction: Literal["auto", "velocity", "x", "y"] = "auto"
    divergence_factor: float = Field(default=1e6, gt=1)
    progress_every: int = Field(default=1000, gt=0)

    @model_validator(mode="after")
    def check_weno(self) -> "SolverConfig":
        # Raises early on unusable weights.
        self.weno_parameters()
        return self

    def weno_parameters(self) -> WenoParameters:
        return WenoParameters(
            gamma1=self.weno_gamma1, gamma2=1.0 - self.weno_gamma1, epsilon=self.weno_epsilon
        )

    def scheme_settings(self) -> SchemeSettings:
        return SchemeSettings(
            weno=self.weno_parameters(),
            roe_epsilon=self.roe_epsilon,
            average_state=self.average_state,
            direction=self.direction,
        )


@dataclass
class ResidueHistory:
    """(iteration, pseudo time, L1 residue) per recorded iteration."""

    iterations: List[int] = field(default_factory=list)
    times: List[float] = field(default_factory=list)
    residues: List[float] = field(default_factory=list)

    def append(self, iteration: int, pseudo_time: float, residue: float) -> None:
        if self.iterations and iteration <= self.iterations[-1]:
            raise ValueError(f"iteration {iteration} does not follow {self.iterations[-1]}")
        self.iterations.append(int(iteration))
        self.times.append(float(pseudo_time))
        self.residues.append(float(residue))

    def __len__(self) -> int:
        return len(self.iterations)

    @property
    def initial(self) -> float:
        return self.residues[0]

    @property
    def final(self) -> float:
        return self.residues[-1]

    def iterations_to(self, threshold: float) -> Optional[int]:
        """First iteration whose residue is at or below ``threshold``."""
        for iteration, residue in zip(self.iterations, self.residues):
            if residue <= threshold:
                return iteration
        return None

    def plateau(self, fraction: float = PLATEAU_FRACTION) -> float:
        """Median residue over the last ``fraction`` of the history."""
        if not self.residues:
            return float("nan")
        count = max(1, int(round(len(self.residues) * fraction)))
        return float(np.median(self.residues[-count:]))

    def rows(self) -> List[Tuple[int, float, float]]:
        return list(zip(self.iterations, self.times, self.residues))


@dataclass
class MarchResult:
    """Final state of a steady solve and how it got there."""

    state: np.ndarray
    history: ResidueHistory
    outcome: str
    pseudo_time: float
    wall_time: float

    @property
    def converged(self) -> bool:
        return self.outcome == "converged"

    @property
    def iterations(self) -> int:
        return self.history.iterations[-1] if self.history.iterations else 0


class SteadyStateSolver(LoggerMixin):
    """
    Marches u_t = L(u) with TVD-RK3 and a CFL-limited step, recomputed every
    iteration, until the L1 residue reaches the tolerance or the iteration
    cap.
    """

    def __init__(
        self,
        problem: BenchmarkProblem,
        grid: Union[Grid1D, Grid2D],
        config: Optional[SolverConfig] = None,
    ):
        self.problem = problem
        self.grid = grid
        self.config = config or SolverConfig()
        self.operator = SpatialOperator(problem, grid, self.config.scheme_settings())

    def _residue(self, rates: np.ndarray) -> float:
        return l1_residue(rates, self.operator.measures)

    def run(self, initial: Optional[np.ndarray] = None) -> MarchResult:
        """
        Args:
            initial: starting state; the problem's initial condition if omitted

        Raises:
            SolverDivergenceError: residue above divergence_factor times the
                initial one, or a non-finite or inadmissible state
        """
        cfg = self.config
        name = self.problem.name
        law = self.problem.law
        started = time.perf_counter()

        u = self.operator.project(
            self.problem.initial_state(self.grid) if initial is None else np.asarray(initial, dtype=np.float64)
        )
        self.logger.info(
            f"Marching {name} on {self._grid_label()} (cfl={cfg.cfl}, tol={cfg.residue_tol:.1e}, "
            f"max_iters={cfg.max_iters})"
        )

        history = ResidueHistory()
        pseudo_time = 0.0
        rates = self.operator(u)
        residue = self._residue(rates)
        history.append(0, pseudo_time, residue)
        reference = residue
        iteration = 0
        gauge = current_residue.labels(problem=name)
        counter = solver_iterations.labels(problem=name)

        try:
            while residue > cfg.residue_tol and iteration < cfg.max_iters:
                dt = compute_dt(cfg.cfl, self.grid, u, law)
                u = rk3_step(u, self.operator, dt, project=self.operator.project, initial_rate=rates)
                iteration += 1
                pseudo_time += dt

                if not np.all(np.isfinite(u)):
                    raise SolverDivergenceError(
                        f"{name}: non-finite state at iteration {iteration}", history
                    )
                rates = self.operator(u)
                residue = self._residue(rates)
                history.append(iteration, pseudo_time, residue)
                counter.inc()
                gauge.set(residue)

                if not np.isfinite(residue) or residue > cfg.divergence_factor * reference:
                    raise SolverDivergenceError(
                        f"{name}: residue {residue:.3e} at iteration {iteration} exceeds "
                        f"{cfg.divergence_factor:.0e} x initial {reference:.3e}",
                        history,
                    )
                if iteration % cfg.progress_every == 0:
                    self.logger.info(f"iter {iteration:>8d}  t={pseudo_time:.6e}  residue={residue:.6e}")

        except (InadmissibleStateError, EigenDecompositionError) as e:
            record_outcome(name, "diverged")
            self.logger.error(f"{name}: inadmissible state at iteration {iteration}: {e}")
            raise SolverDivergenceError(f"{name}: {e}", history) from e
        except SolverDivergenceError as e:
            record_outcome(name, "diverged")
            self.logger.error(str(e))
            raise

        outcome = "converged" if residue <= cfg.residue_tol else "max_iters"
        elapsed = time.perf_counter() - started
        record_outcome(name, outcome, elapsed)

        self.logger.info(
            f"{name}: {outcome} after {iteration} iterations, residue {residue:.3e}, "
            f"{elapsed:.1f}s"
        )
        return MarchResult(
            state=u,
            history=history,
            outcome=outcome,
            pseudo_time=pseudo_time,
            wall_time=elapsed,
        )

    def _grid_label(self) -> str:
        if isinstance(self.grid, Grid1D):
            return f"{self.grid.n_cells} cells"
        nx, ny = self.grid.cells
        return f"{nx}x{ny} cells"


def default_solver_config(dimension: int, **overrides) -> SolverConfig:
    """
    Solver config with the process-level iteration cap and progress interval.

    Raises:
        ConfigurationError: an override is out of range
    """
    settings = get_config()
    values = {
        "max_iters": settings.max_iters_1d if dimension == 1 else settings.max_iters_2d,
        "progress_every": settings.progress_every,
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return SolverConfig(**values)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid solver options: {e}") from e


def march_to_steady(
    problem: BenchmarkProblem,
    config: Optional[SolverConfig] = None,
    grid: Optional[Union[Grid1D, Grid2D]] = None,
    initial: Optional[np.ndarray] = None,
) -> Tuple[np.ndarray, ResidueHistory]:
    """Final state and residue history of a steady solve."""
    grid = grid if grid is not None else problem.build_grid()
    result = SteadyStateSolver(problem, grid, config).run(initial)
    return result.state, result.history
