#!/usr/bin/env python3
"""CLI interface for the RD-WENO steady solver benchmarks."""

import functools
import sys
from typing import List, Optional, Tuple

import click
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from .errors import RDWenoError
from .harness.output import convergence_table
from .harness.report import RunReport
from .harness.runner import BenchmarkRunner
from .models.problems import list_problems, registry_lookup
from .utils.config import build_run_config, load_config, parse_config_file
from .utils.logger import setup_logger
from .utils.metrics import start_metrics_server


console = Console()


def _handle_errors(func):
    """Print library errors and exit with their status code."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except RDWenoError as e:
            console.print(f"[red]Error ({type(e).__name__}): {e}[/red]")
            sys.exit(e.exit_code)
        except KeyboardInterrupt:
            console.print("\n[yellow]Interrupted[/yellow]")
            sys.exit(130)

    return wrapper


def _split(value: Optional[str], convert, name: str) -> List:
    if value is None:
        return []
    try:
        return [convert(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(f"expected a comma separated list, got {value!r}", param_hint=name)


def _overrides(beta: Optional[float], gravity: Optional[float], pre_shock_mach: Optional[float]):
    values = {"beta": beta, "gravity": gravity, "pre_shock_mach": pre_shock_mach}
    return {k: v for k, v in values.items() if v is not None}


def _solver_options(cfl: Optional[float], max_iters: Optional[int], tol: Optional[float]):
    values = {"cfl": cfl, "max_iters": max_iters, "residue_tol": tol}
    return {k: v for k, v in values.items() if v is not None}


def problem_parameter_options(func):
    """--beta / --gravity / --pre-shock-mach."""
    func = click.option("--pre-shock-mach", type=float, help="Nozzle Mach number just ahead of the shock")(func)
    func = click.option("--gravity", type=float, help="Shallow-water gravity constant")(func)
    func = click.option("--beta", type=float, help="Initial amplitude of the Burgers problems")(func)
    return func


@click.group()
@click.option(
    "--env-file",
    "-e",
    type=click.Path(exists=True),
    help="Path to a .env file with RDWENO_ settings",
)
@click.option(
    "--log-level",
    "-l",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Logging level (default from RDWENO_LOG_LEVEL)",
)
def cli(env_file: Optional[str], log_level: Optional[str]):
    """RD-WENO steady - residual distribution solver benchmark harness."""
    load_config(env_file)
    setup_logger(log_level=log_level)
    start_metrics_server()


@cli.command()
@click.option("--problem", "-p", help="Registered problem name (see list-problems)")
@click.option("--n", "n", type=int, help="Number of cells (both axes in 2D)")
@click.option("--nx", type=int, help="Cells along x (2D)")
@click.option("--ny", type=int, help="Cells along y (2D)")
@click.option("--cfl", type=float, help="CFL number (default 0.3)")
@click.option("--max-iters", type=int, help="Iteration cap")
@click.option("--tol", type=float, help="L1 residue tolerance (default 1e-12)")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), help="Output directory")
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False), help="key = value run file")
@click.option("--section", "sections", type=float, multiple=True, help="y of a 2D cross section (repeatable)")
@click.option("--average-state", type=click.Choice(["arithmetic", "roe"]), help="Eigen average state")
@click.option(
    "--direction", type=click.Choice(["auto", "velocity", "x", "y"]), help="2D characteristic direction"
)
@problem_parameter_options
@_handle_errors
def run(config_file: Optional[str], sections: Tuple[float, ...], **options):
    """Solve one benchmark to steady state and write its result files."""
    file_values = parse_config_file(config_file) if config_file else {}
    config = build_run_config(file_values, sections=list(sections) or None, **options)

    console.print(f"[cyan]Running {config.problem}...[/cyan]")
    report = BenchmarkRunner().run(config)
    _display_run_report(report)


@cli.command()
@click.option("--problem", "-p", required=True, help="Problem with an exact solution")
@click.option("--levels", required=True, help="Comma separated cell counts, e.g. 20,40,80")
@click.option("--cfl", type=float, help="CFL number")
@click.option("--max-iters", type=int, help="Iteration cap per level")
@click.option("--tol", type=float, help="L1 residue tolerance")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), help="Output directory")
@problem_parameter_options
@_handle_errors
def converge(
    problem: str,
    levels: str,
    cfl: Optional[float],
    max_iters: Optional[int],
    tol: Optional[float],
    out_dir: Optional[str],
    beta: Optional[float],
    gravity: Optional[float],
    pre_shock_mach: Optional[float],
):
    """Grid refinement study with errors and observed orders."""
    cells = _split(levels, int, "--levels")
    console.print(f"[cyan]Convergence study of {problem} on N = {cells}[/cyan]")

    table = BenchmarkRunner().convergence_study(
        problem,
        cells,
        solver_overrides=_solver_options(cfl, max_iters, tol),
        overrides=_overrides(beta, gravity, pre_shock_mach),
        out_dir=out_dir,
    )
    console.print(convergence_table(table.levels, title=f"{table.problem}: errors and orders"))
    console.print(f"[green]Tables written to: {table.files['csv']}, {table.files['text']}[/green]")


@cli.command()
@click.option("--problem", "-p", required=True, help="Registered problem name")
@click.option("--cfls", required=True, help="Comma separated CFL numbers, e.g. 0.3,0.5,0.7")
@click.option("--n", "n", type=int, help="Number of cells (both axes in 2D)")
@click.option("--threshold", type=float, default=1e-6, show_default=True, help="Residue level to time")
@click.option("--max-iters", type=int, help="Iteration cap per run")
@click.option("--tol", type=float, help="L1 residue tolerance")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), help="Output directory")
@problem_parameter_options
@_handle_errors
def history(
    problem: str,
    cfls: str,
    n: Optional[int],
    threshold: float,
    max_iters: Optional[int],
    tol: Optional[float],
    out_dir: Optional[str],
    beta: Optional[float],
    gravity: Optional[float],
    pre_shock_mach: Optional[float],
):
    """Residue histories of one problem at several CFL numbers."""
    values = _split(cfls, float, "--cfls")
    entries = BenchmarkRunner().cfl_history(
        problem,
        values,
        n=n,
        threshold=threshold,
        solver_overrides=_solver_options(None, max_iters, tol),
        overrides=_overrides(beta, gravity, pre_shock_mach),
        out_dir=out_dir,
    )

    table = Table(title=f"{problem}: residue vs CFL", show_header=True, header_style="bold cyan")
    table.add_column("CFL", style="yellow", justify="right")
    table.add_column("Outcome")
    table.add_column("Iterations", justify="right")
    table.add_column(f"Iter to {threshold:.0e}", justify="right")
    table.add_column("Final residue", justify="right")
    table.add_column("Plateau", justify="right")
    for entry in entries:
        reached = "-" if entry.iterations_to_threshold is None else str(entry.iterations_to_threshold)
        table.add_row(
            f"{entry.cfl:g}",
            entry.outcome,
            str(entry.iterations),
            reached,
            f"{entry.final_residue:.3e}",
            f"{entry.plateau:.3e}",
        )
    console.print(table)


@cli.command("list-problems")
def list_problems_command():
    """List the registered benchmark problems."""
    table = Table(title="Benchmark problems", show_header=True, header_style="bold cyan")
    table.add_column("Name", style="yellow")
    table.add_column("Dim", justify="center")
    table.add_column("Default cells", justify="right")
    table.add_column("Exact", justify="center")
    table.add_column("Description", style="white")

    for name, description in list_problems():
        problem = registry_lookup(name)
        table.add_row(
            name,
            f"{problem.dimension}D",
            "x".join(str(c) for c in problem.default_cells),
            "yes" if problem.has_exact else "no",
            description,
        )
    console.print(table)


@cli.command()
def version():
    """Display version information."""
    from . import __description__, __version__

    console.print(Panel.fit(
        f"[bold cyan]RD-WENO Steady[/bold cyan]\n\n"
        f"[yellow]Version:[/yellow] {__version__}\n"
        f"[yellow]Description:[/yellow] {__description__}",
        border_style="cyan"
    ))


def _display_run_report(report: RunReport):
    """Display a run report as a panel and a file table."""
    color = "green" if report.converged else "yellow"
    lines = [
        f"[bold yellow]Grid:[/bold yellow] {'x'.join(str(c) for c in report.cells)} cells",
        f"[bold yellow]Outcome:[/bold yellow] [{color}]{report.outcome}[/{color}] "
        f"after {report.iterations} iterations",
        f"[bold yellow]Final residue:[/bold yellow] {report.final_residue:.3e} "
        f"(plateau {report.plateau:.3e})",
    ]
    if report.l1_error is not None:
        lines.append(
            f"[bold yellow]Errors:[/bold yellow] L1 {report.l1_error:.3e}, Linf {report.linf_error:.3e}"
        )
    if report.shock_location is not None:
        lines.append(f"[bold yellow]Shock:[/bold yellow] x = {report.shock_location:.4f}")
    for y, x in report.section_shocks.items():
        located = "none" if x is None else f"{x:.4f}"
        lines.append(f"[bold yellow]Section y = {y:g}:[/bold yellow] shock {located}")
    if report.value_range is not None:
        low, high = report.value_range
        lines.append(f"[bold yellow]First component range:[/bold yellow] [{low:.4f}, {high:.4f}]")
    lines.append(f"[bold yellow]Wall time:[/bold yellow] {report.wall_time:.1f}s")

    console.print(Panel.fit("\n".join(lines), title=report.problem, border_style=color))

    files = Table(title="Output files", show_header=False)
    files.add_column("Kind", style="cyan")
    files.add_column("Path", style="white")
    for kind, path in report.files.items():
        files.add_row(kind, path)
    console.print(files)


def main():
    """Main CLI entry point."""
    cli()


if __name__ == "__main__":
    main()
