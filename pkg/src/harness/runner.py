"""Benchmark orchestration: single runs, refinement studies and CFL sweeps."""

from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from ..core.mesh import Grid1D, Grid2D
from ..errors import ConfigurationError, MissingExactSolutionError, SolverDivergenceError
from ..models.problems import BenchmarkProblem, registry_lookup
from ..solver.marching import ResidueHistory, SolverConfig, SteadyStateSolver, default_solver_config
from ..utils.config import RunConfig, get_config
from ..utils.logger import LoggerMixin, run_log
from . import output
from .analysis import cross_section, diagonal_section, error_norms, observed_orders, shock_locator
from .report import CflHistoryEntry, ConvergenceLevel, ConvergenceTable, RunReport


def _section_tag(y: float) -> str:
    return f"{y:g}".replace(".", "p").replace("-", "m")


class BenchmarkRunner(LoggerMixin):
    """Runs registered benchmarks and writes their result files."""

    def __init__(self, output_dir: Optional[str] = None):
        self.output_dir = Path(output_dir or get_config().output_dir)

    def _out_dir(self, problem: BenchmarkProblem, out_dir: Optional[str]) -> Path:
        return Path(out_dir) if out_dir else self.output_dir / problem.name

    @staticmethod
    def _cells(grid: Union[Grid1D, Grid2D]):
        return (grid.n_cells,) if isinstance(grid, Grid1D) else grid.cells

    def run(self, config: RunConfig) -> RunReport:
        """
        Solve one benchmark and write solution, residue, contour and
        section files.

        Raises:
            SolverDivergenceError: after the partial residue history is written
        """
        problem = registry_lookup(config.problem, config.overrides())
        grid = problem.build_grid(config.n, config.nx, config.ny)
        solver_config = default_solver_config(
            problem.dimension,
            cfl=config.cfl,
            max_iters=config.max_iters,
            residue_tol=config.tol,
            average_state=config.average_state,
            direction=config.direction,
        )
        out_dir = self._out_dir(problem, config.out_dir)
        with run_log(out_dir / "run.log") as log_path:
            self.logger.info(f"Run {problem.name} {self._cells(grid)} -> {out_dir}")
            return self._solve(problem, grid, solver_config, config.sections, out_dir, str(log_path))

    def _solve(
        self,
        problem: BenchmarkProblem,
        grid: Union[Grid1D, Grid2D],
        solver_config: SolverConfig,
        sections: Sequence[float],
        out_dir: Path,
        log_file: str,
    ) -> RunReport:
        try:
            result = SteadyStateSolver(problem, grid, solver_config).run()
        except SolverDivergenceError as e:
            if isinstance(e.history, ResidueHistory) and len(e.history):
                output.write_residue(out_dir / "residue.csv", e.history)
            raise

        state = result.state
        files = {
            "log": log_file,
            "solution": output.write_solution(
                out_dir / "solution.csv", grid, state, problem.law.component_names
            ),
            "residue": output.write_residue(out_dir / "residue.csv", result.history),
        }
        report = RunReport(
            problem=problem.name,
            cells=tuple(self._cells(grid)),
            outcome=result.outcome,
            iterations=result.iterations,
            final_residue=result.history.final,
            plateau=result.history.plateau(),
            pseudo_time=result.pseudo_time,
            wall_time=result.wall_time,
            value_range=(float(np.min(state[..., 0])), float(np.max(state[..., 0]))),
            files=files,
        )

        exact = problem.exact_state(grid) if problem.has_exact else None
        if exact is not None:
            report.l1_error, report.linf_error = error_norms(state, exact, grid)

        if isinstance(grid, Grid1D):
            if problem.shock_location is not None:
                report.shock_location = shock_locator(state[:, 0], grid.nodes)
        else:
            files["contour"] = str(output.contour_dump(state, grid, out_dir / "contour.csv"))
            self._write_sections(problem, grid, state, exact, sections, out_dir, report)

        files["report"] = output.write_report(out_dir / "report.json", report.to_dict())
        self.logger.info(
            f"{problem.name}: {report.outcome}, residue {report.final_residue:.3e}"
            + (f", L1 error {report.l1_error:.3e}" if report.l1_error is not None else "")
            + (f", shock at {report.shock_location:.4f}" if report.shock_location is not None else "")
        )
        return report

    def _write_sections(
        self,
        problem: BenchmarkProblem,
        grid: Grid2D,
        state: np.ndarray,
        exact: Optional[np.ndarray],
        requested: Sequence[float],
        out_dir: Path,
        report: RunReport,
    ) -> None:
        for y in requested or problem.sections:
            x, values = cross_section(state, grid, y)
            reference = cross_section(exact, grid, y)[1] if exact is not None else None
            name = f"section_y{_section_tag(y)}"
            report.files[name] = output.write_section(out_dir / f"{name}.csv", x, values, reference)
            report.section_shocks[float(y)] = shock_locator(values, x)

        if problem.diagonal_section:
            s, values = diagonal_section(state, grid)
            reference = diagonal_section(exact, grid)[1] if exact is not None else None
            report.files["diagonal"] = output.write_section(
                out_dir / "section_diagonal.csv", s, values, reference, label="s"
            )
            report.shock_location = shock_locator(values, s)

    def convergence_study(
        self,
        problem_name: str,
        levels: Sequence[int],
        solver_overrides: Optional[Mapping] = None,
        overrides: Optional[Mapping[str, float]] = None,
        out_dir: Optional[str] = None,
    ) -> ConvergenceTable:
        """
        Errors and observed orders over a sequence of uniform grids.

        In 2D every level uses N x N cells.

        Raises:
            MissingExactSolutionError: the problem has no exact solution
            ConfigurationError: empty or non-increasing levels
        """
        problem = registry_lookup(problem_name, overrides)
        if not problem.has_exact:
            raise MissingExactSolutionError(f"{problem.name} has no exact solution to compare against")
        levels = [int(n) for n in levels]
        if not levels or any(b <= a for a, b in zip(levels, levels[1:])):
            raise ConfigurationError(f"levels must be increasing, got {levels}")

        config = default_solver_config(problem.dimension, **dict(solver_overrides or {}))
        table = ConvergenceTable(problem=problem.name)

        for n in levels:
            grid = problem.build_grid(n)
            self.logger.info(f"{problem.name}: level N = {n}")
            result = SteadyStateSolver(problem, grid, config).run()
            if not result.converged:
                self.logger.warning(
                    f"{problem.name} N = {n} stopped at residue {result.history.final:.3e}"
                )
            norms = error_norms(result.state, problem.exact_state(grid), grid)
            table.levels.append(
                ConvergenceLevel(
                    cells=n,
                    l1_error=norms.l1,
                    linf_error=norms.linf,
                    iterations=result.iterations,
                    final_residue=result.history.final,
                    outcome=result.outcome,
                )
            )

        l1_orders = observed_orders([lv.l1_error for lv in table.levels], levels)
        linf_orders = observed_orders([lv.linf_error for lv in table.levels], levels)
        for level, p1, pinf in zip(table.levels, l1_orders, linf_orders):
            level.l1_order, level.linf_order = p1, pinf

        target = self._out_dir(problem, out_dir)
        csv_file, text_file = output.write_convergence(
            target / "convergence.csv", target / "convergence.txt", table.levels, title=problem.name
        )
        table.files = {"csv": csv_file, "text": text_file}
        return table

    def cfl_history(
        self,
        problem_name: str,
        cfls: Sequence[float],
        n: Optional[int] = None,
        threshold: float = 1e-6,
        solver_overrides: Optional[Mapping] = None,
        overrides: Optional[Mapping[str, float]] = None,
        out_dir: Optional[str] = None,
    ) -> Sequence[CflHistoryEntry]:
        """
        Run one problem at several CFL numbers and compare residue histories.

        A diverging CFL number is recorded, not raised.
        """
        problem = registry_lookup(problem_name, overrides)
        grid = problem.build_grid(n)
        target = self._out_dir(problem, out_dir)
        entries = []

        for cfl in cfls:
            config = default_solver_config(
                problem.dimension, **{**dict(solver_overrides or {}), "cfl": cfl}
            )
            try:
                result = SteadyStateSolver(problem, grid, config).run()
                history, outcome = result.history, result.outcome
            except SolverDivergenceError as e:
                history, outcome = e.history, "diverged"
                if not isinstance(history, ResidueHistory):
                    history = ResidueHistory()

            residue_file = None
            if len(history):
                residue_file = output.write_residue(
                    target / f"residue_cfl{_section_tag(cfl)}.csv", history
                )
            entries.append(
                CflHistoryEntry(
                    cfl=float(cfl),
                    outcome=outcome,
                    iterations=history.iterations[-1] if len(history) else 0,
                    iterations_to_threshold=history.iterations_to(threshold) if len(history) else None,
                    final_residue=history.final if len(history) else float("nan"),
                    plateau=history.plateau(),
                    residue_file=residue_file,
                )
            )

        output.write_history_summary(target / "history.csv", entries)
        return entries


def run(config: RunConfig, output_dir: Optional[str] = None) -> RunReport:
    return BenchmarkRunner(output_dir).run(config)


def convergence_study(problem_name: str, levels: Sequence[int], **kwargs) -> ConvergenceTable:
    return BenchmarkRunner(kwargs.pop("output_dir", None)).convergence_study(problem_name, levels, **kwargs)


def cfl_history(problem_name: str, cfls: Sequence[float], **kwargs) -> Sequence[CflHistoryEntry]:
    return BenchmarkRunner(kwargs.pop("output_dir", None)).cfl_history(problem_name, cfls, **kwargs)


__all__ = [
    "BenchmarkRunner",
    "run",
    "convergence_study",
    "cfl_history",
]
