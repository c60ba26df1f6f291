"""
CSV and text writers for run results.

Floats are written with 17 significant digits, so reading a file back
reproduces the state bit for bit.
"""

import csv
import json
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from rich import box
from rich.console import Console
from rich.table import Table

from ..core.mesh import Grid1D, Grid2D
from ..errors import OutputError
from ..solver.marching import ResidueHistory
from .report import CflHistoryEntry, ConvergenceLevel

PathLike = Union[str, Path]


def fmt(value: Optional[float]) -> str:
    """17-significant-digit decimal; empty for missing values."""
    if value is None:
        return ""
    return f"{float(value):.17g}"


@contextmanager
def _open_for_write(path: PathLike) -> Iterator:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as handle:
            yield handle
    except OSError as e:
        raise OutputError(f"Cannot write {path}: {e}") from e


def write_rows(path: PathLike, header: Sequence[str], rows) -> str:
    with _open_for_write(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return str(path)


def write_solution(
    path: PathLike,
    grid: Union[Grid1D, Grid2D],
    state: np.ndarray,
    component_names: Sequence[str],
) -> str:
    """Node coordinates followed by every state component."""
    state = np.asarray(state, dtype=np.float64)
    if isinstance(grid, Grid1D):
        header = ["x", *component_names]
        rows = ([fmt(x), *map(fmt, u)] for x, u in zip(grid.nodes, state))
        return write_rows(path, header, rows)

    X, Y = grid.coordinates()
    header = ["x", "y", *component_names]
    flat = state.reshape(-1, state.shape[-1])
    rows = ([fmt(x), fmt(y), *map(fmt, u)] for x, y, u in zip(X.ravel(), Y.ravel(), flat))
    return write_rows(path, header, rows)


def contour_dump(state: np.ndarray, grid: Grid2D, path: PathLike) -> str:
    """Structured-grid dump ``x,y,comp0[,comp1...]``, row-major over nodes."""
    state = np.asarray(state, dtype=np.float64)
    names = [f"comp{k}" for k in range(state.shape[-1])]
    return write_solution(path, grid, state, names)


def read_contour(path: PathLike) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Read a contour file back.

    Returns:
        (X, Y, state) with shapes (nx + 1, ny + 1) and (nx + 1, ny + 1, m)
    """
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = next(reader)
            data = np.array([[float(v) for v in row] for row in reader if row], dtype=np.float64)
    except (OSError, StopIteration, ValueError) as e:
        raise OutputError(f"Cannot read contour file {path}: {e}") from e

    if header[:2] != ["x", "y"] or data.ndim != 2 or data.shape[1] != len(header):
        raise OutputError(f"{path} is not a contour file")

    ny = int(np.count_nonzero(data[:, 0] == data[0, 0]))
    if ny == 0 or data.shape[0] % ny:
        raise OutputError(f"{path}: rows do not form a structured grid")
    nx = data.shape[0] // ny
    grid_data = data.reshape(nx, ny, -1)
    return grid_data[..., 0], grid_data[..., 1], grid_data[..., 2:]


def write_residue(path: PathLike, history: ResidueHistory) -> str:
    rows = ([str(i), fmt(t), fmt(r)] for i, t, r in history.rows())
    return write_rows(path, ["iter", "pseudo_time", "l1_residue"], rows)


def write_section(
    path: PathLike,
    coordinate: np.ndarray,
    values: np.ndarray,
    exact: Optional[np.ndarray] = None,
    label: str = "x",
) -> str:
    if exact is None:
        return write_rows(path, [label, "value"], ([fmt(c), fmt(v)] for c, v in zip(coordinate, values)))
    rows = ([fmt(c), fmt(v), fmt(e)] for c, v, e in zip(coordinate, values, exact))
    return write_rows(path, [label, "value", "exact"], rows)


def write_report(path: PathLike, payload: Dict) -> str:
    with _open_for_write(path) as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
    return str(path)


def _order(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.2f}"


def convergence_table(levels: Sequence[ConvergenceLevel], title: str = "") -> Table:
    """Rich table in the usual N / L1 / order / Linf / order layout."""
    table = Table(title=title or None, box=box.SIMPLE_HEAD, show_header=True)
    table.add_column("N", justify="right")
    table.add_column("L1 error", justify="right")
    table.add_column("order", justify="right")
    table.add_column("Linf error", justify="right")
    table.add_column("order", justify="right")
    for level in levels:
        table.add_row(
            str(level.cells),
            f"{level.l1_error:.2E}",
            _order(level.l1_order),
            f"{level.linf_error:.2E}",
            _order(level.linf_order),
        )
    return table


def write_convergence(
    csv_path: PathLike, text_path: PathLike, levels: Sequence[ConvergenceLevel], title: str = ""
) -> List[str]:
    """Write a refinement table as CSV and as aligned text."""
    rows = (
        [str(lv.cells), fmt(lv.l1_error), fmt(lv.l1_order), fmt(lv.linf_error), fmt(lv.linf_order)]
        for lv in levels
    )
    written = [write_rows(csv_path, ["n", "l1_error", "l1_order", "linf_error", "linf_order"], rows)]

    with _open_for_write(text_path) as handle:
        Console(file=handle, width=100, color_system=None).print(convergence_table(levels, title))
    written.append(str(text_path))
    return written


def write_history_summary(path: PathLike, entries: Sequence[CflHistoryEntry]) -> str:
    header = ["cfl", "outcome", "iterations", "iterations_to_threshold", "final_residue", "plateau"]
    rows = (
        [
            fmt(e.cfl),
            e.outcome,
            str(e.iterations),
            "" if e.iterations_to_threshold is None else str(e.iterations_to_threshold),
            fmt(e.final_residue),
            fmt(e.plateau),
        ]
        for e in entries
    )
    return write_rows(path, header, rows)
