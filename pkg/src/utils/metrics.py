"""Prometheus instruments for pseudo-time marching."""

from typing import Optional

from prometheus_client import Counter, Gauge, Histogram, start_http_server

from .config import get_config
from .logger import get_logger


logger = get_logger(__name__)

OUTCOMES = ("converged", "max_iters", "diverged")


solver_iterations = Counter(
    "rdweno_solver_iterations_total",
    "Pseudo-time iterations performed",
    ["problem"],
)

solver_runs = Counter(
    "rdweno_solver_runs_total",
    "Finished solver runs by outcome",
    ["problem", "outcome"],
)

rate_evaluations = Counter(
    "rdweno_rate_evaluations_total",
    "Nodal rate assemblies",
    ["dimension"],
)

current_residue = Gauge(
    "rdweno_residue",
    "Latest L1 residue of the running solve",
    ["problem"],
)

# Smooth 1D runs finish in seconds, shock reflection on fine grids takes hours.
run_duration = Histogram(
    "rdweno_run_duration_seconds",
    "Wall time of a single solver run",
    buckets=[0.1, 1.0, 10.0, 60.0, 300.0, 1800.0, 7200.0],
)

_listening_port: Optional[int] = None


def record_outcome(problem: str, outcome: str, elapsed: Optional[float] = None) -> None:
    """Count a finished run; diverged runs carry no duration."""
    if outcome not in OUTCOMES:
        raise ValueError(f"unknown run outcome {outcome!r}")
    solver_runs.labels(problem=problem, outcome=outcome).inc()
    if elapsed is not None:
        run_duration.observe(elapsed)


def start_metrics_server(port: Optional[int] = None) -> bool:
    """
    Expose the instruments over HTTP when ``RDWENO_PROMETHEUS_ENABLED`` is set.

    Returns:
        True if an exporter is listening after the call
    """
    global _listening_port
    config = get_config()
    if not config.prometheus_enabled:
        logger.debug("Prometheus exporter disabled")
        return False
    if _listening_port is not None:
        return True

    port = port or config.prometheus_port
    start_http_server(port)
    _listening_port = port
    logger.info(f"Prometheus exporter listening on :{port}")
    return True
