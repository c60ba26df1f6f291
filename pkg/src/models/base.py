"""
Conservation-law descriptors.

Every state array carries a trailing component axis of length ``m``, also for
scalar laws (m = 1). All evaluation methods are vectorized over the leading
axes; positions broadcast against ``u[..., 0]``.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np

from ..errors import ConfigurationError, EigenDecompositionError, InadmissibleStateError


class Eigensystem(NamedTuple):
    """Batched factorization J = R diag(values) L."""

    left: np.ndarray    # (..., m, m)
    values: np.ndarray  # (..., m)
    right: np.ndarray   # (..., m, m)

    def reconstruct(self) -> np.ndarray:
        return np.einsum("...ik,...k,...kj->...ij", self.right, self.values, self.left)


class BoundaryKind(str, Enum):
    """How a boundary node (1D end, 2D edge) is treated."""

    DIRICHLET = "dirichlet"
    OUTFLOW = "outflow"
    REFLECTIVE = "reflective"


@dataclass(frozen=True)
class BoundaryCondition:
    """
    Policy for one end or edge.

    ``data`` maps boundary node positions to pinned states and is required
    for Dirichlet boundaries only: ``data(x)`` in 1D, ``data(x, y)`` in 2D.
    """

    kind: BoundaryKind
    data: Optional[Callable[..., np.ndarray]] = None

    def __post_init__(self):
        if not isinstance(self.kind, BoundaryKind):
            raise ConfigurationError(f"undefined boundary policy {self.kind!r}")
        if self.kind is BoundaryKind.DIRICHLET and self.data is None:
            raise ConfigurationError("a Dirichlet boundary needs boundary data")

    @classmethod
    def dirichlet(cls, data: Callable[..., np.ndarray]) -> "BoundaryCondition":
        return cls(BoundaryKind.DIRICHLET, data)

    @classmethod
    def outflow(cls) -> "BoundaryCondition":
        return cls(BoundaryKind.OUTFLOW)

    @classmethod
    def reflective(cls) -> "BoundaryCondition":
        return cls(BoundaryKind.REFLECTIVE)


def scalar_eigensystem(speed: np.ndarray) -> Eigensystem:
    """Trivial factorization of a scalar law: L = R = 1, values = f'(u)."""
    speed = np.asarray(speed, dtype=np.float64)
    ones = np.ones(speed.shape + (1, 1))
    return Eigensystem(ones, speed[..., None], ones.copy())


def report_inadmissible(mask: np.ndarray, u: np.ndarray, what: str) -> None:
    """Raise naming the first node where ``mask`` is set."""
    if np.any(mask):
        index = tuple(int(i) for i in np.argwhere(mask)[0])
        raise InadmissibleStateError(f"{what} at node {index}: state {u[index].tolist()}")


def characteristic_speed(squared: np.ndarray, u: np.ndarray, what: str) -> np.ndarray:
    """
    Square root of a squared characteristic speed.

    Raises:
        EigenDecompositionError: the speed is zero or not finite, so the
            eigenvectors collapse
    """
    squared = np.asarray(squared, dtype=np.float64)
    bad = ~(np.isfinite(squared) & (squared > 0.0))
    if np.any(bad):
        index = tuple(int(i) for i in np.argwhere(bad)[0])
        raise EigenDecompositionError(
            f"{what} is {float(squared[index]):.3e} at node {index}: state {u[index].tolist()}"
        )
    return np.sqrt(squared)


class ConservationLaw1D(ABC):
    """u_t + f(u)_x = s(u, x) with m components."""

    name: str = ""
    m: int = 1
    component_names: Tuple[str, ...] = ("u",)

    @abstractmethod
    def flux(self, u: np.ndarray, x: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def source(self, u: np.ndarray, x: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def eigen(self, u: np.ndarray, x: np.ndarray) -> Eigensystem:
        """Factorization of f'(u)."""

    def spectral_radius(self, u: np.ndarray, x: np.ndarray) -> np.ndarray:
        return np.max(np.abs(self.eigen(u, x).values), axis=-1)

    def max_wave_speed(self, u: np.ndarray, x: np.ndarray) -> float:
        return float(np.max(self.spectral_radius(u, x)))

    def check_admissible(self, u: np.ndarray) -> None:
        """Raise :class:`InadmissibleStateError` outside the admissible set."""
        report_inadmissible(~np.isfinite(u).all(axis=-1), u, "non-finite state")

    def average_state(self, states: np.ndarray, axis: int = -2) -> np.ndarray:
        """Arithmetic mean over the vertex axis."""
        return np.mean(states, axis=axis)

    def roe_average(self, states: np.ndarray, axis: int = -2) -> np.ndarray:
        raise ConfigurationError(f"Roe averaging is not defined for {self.name or type(self).__name__}")


class ConservationLaw2D(ABC):
    """u_t + f(u)_x + g(u)_y = s(u, x, y) with m components."""

    name: str = ""
    m: int = 1
    component_names: Tuple[str, ...] = ("u",)

    @abstractmethod
    def flux_x(self, u: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def flux_y(self, u: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def source(self, u: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def eigen_in_direction(
        self, u: np.ndarray, n: np.ndarray, x: np.ndarray, y: np.ndarray
    ) -> Eigensystem:
        """Factorization of n_x f'(u) + n_y g'(u) for unit directions n (..., 2)."""

    @abstractmethod
    def spectral_radii(
        self, u: np.ndarray, x: np.ndarray, y: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Spectral radii of f'(u) and g'(u)."""

    @abstractmethod
    def wave_speed(self, u: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Largest spectral radius over all unit directions."""

    def max_wave_speed(self, u: np.ndarray, x: np.ndarray, y: np.ndarray) -> float:
        return float(np.max(self.wave_speed(u, x, y)))

    def default_direction(self, u: np.ndarray) -> np.ndarray:
        """Projection direction for the characteristic limiter; x unless overridden."""
        n = np.zeros(u.shape[:-1] + (2,))
        n[..., 0] = 1.0
        return n

    def check_admissible(self, u: np.ndarray) -> None:
        report_inadmissible(~np.isfinite(u).all(axis=-1), u, "non-finite state")

    def average_state(self, states: np.ndarray, axis: int = -2) -> np.ndarray:
        return np.mean(states, axis=axis)

    def roe_average(self, states: np.ndarray, axis: int = -2) -> np.ndarray:
        raise ConfigurationError(f"Roe averaging is not defined for {self.name or type(self).__name__}")

    def reflect(self, u: np.ndarray, normal_axis: int = 1) -> np.ndarray:
        """Mirror image of a state across a wall normal to x (0) or y (1)."""
        raise ConfigurationError(f"{self.name or type(self).__name__} does not support reflective walls")
