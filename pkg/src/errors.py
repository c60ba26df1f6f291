"""Exception hierarchy shared by the solver library and the CLI."""

from typing import Optional


class RDWenoError(Exception):
    """Base error. ``exit_code`` is the status the CLI terminates with."""

    exit_code: int = 1


class ConfigurationError(RDWenoError, ValueError):
    """Invalid configuration, unknown problem or undefined boundary policy."""

    exit_code = 2


class MeshError(ConfigurationError):
    """Grid cannot be built from the requested axis specification."""


class MissingExactSolutionError(ConfigurationError):
    """An operation needs an exact solution the problem does not provide."""


class StencilError(RDWenoError, ValueError):
    """A quadrature stencil is unavailable or not uniformly spaced."""


class InadmissibleStateError(RDWenoError, ValueError):
    """State outside the admissible set of a model (vacuum, negative pressure)."""

    exit_code = 3


class EigenDecompositionError(RDWenoError, ArithmeticError):
    """Directional Jacobian could not be diagonalized."""

    exit_code = 3


class SolverDivergenceError(RDWenoError, RuntimeError):
    """Pseudo-time marching blew up; carries the partial residue history."""

    exit_code = 3

    def __init__(self, message: str, history: Optional[object] = None):
        super().__init__(message)
        self.history = history


class OutputError(RDWenoError, OSError):
    """Result files could not be written or read back."""

    exit_code = 4
