"""One-dimensional shallow water equations over a smooth bottom."""

from typing import Callable, Optional

import numpy as np

from .base import ConservationLaw1D, Eigensystem, characteristic_speed, report_inadmissible

DEFAULT_GRAVITY = 9.8


def gaussian_bump(x: np.ndarray) -> np.ndarray:
    """b(x) = 5 exp(-0.4 (x - 5)^2)."""
    return 5.0 * np.exp(-0.4 * (x - 5.0) ** 2)


def gaussian_bump_slope(x: np.ndarray) -> np.ndarray:
    return -4.0 * (x - 5.0) * np.exp(-0.4 * (x - 5.0) ** 2)


class ShallowWater1D(ConservationLaw1D):
    """
    (h, hu)_t + (hu, hu^2 + g h^2 / 2)_x = (0, -g h b'(x)).

    The bottom and its analytic slope are passed in as callables.
    """

    name = "shallow-water"
    m = 2
    component_names = ("h", "hu")

    def __init__(
        self,
        gravity: float = DEFAULT_GRAVITY,
        bottom: Callable[[np.ndarray], np.ndarray] = gaussian_bump,
        bottom_slope: Optional[Callable[[np.ndarray], np.ndarray]] = gaussian_bump_slope,
    ):
        if gravity <= 0:
            raise ValueError("gravity must be positive")
        self.gravity = float(gravity)
        self.bottom = bottom
        self.bottom_slope = bottom_slope

    def check_admissible(self, u: np.ndarray) -> None:
        super().check_admissible(u)
        report_inadmissible(u[..., 0] <= 0.0, u, "dry or negative water height")

    def velocity(self, u: np.ndarray) -> np.ndarray:
        return u[..., 1] / u[..., 0]

    def flux(self, u, x):
        h, hu = u[..., 0], u[..., 1]
        out = np.empty_like(u, dtype=np.float64)
        out[..., 0] = hu
        out[..., 1] = hu * hu / h + 0.5 * self.gravity * h * h
        return out

    def source(self, u, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.zeros_like(u, dtype=np.float64)
        if self.bottom_slope is not None:
            out[..., 1] = -self.gravity * u[..., 0] * self.bottom_slope(x)
        return out

    def eigen(self, u, x) -> Eigensystem:
        """
        Eigenvalues u -+ c with R = [[1, 1], [u - c, u + c]] and
        L = 1/(2c) [[u + c, -1], [-(u - c), 1]].
        """
        h = u[..., 0]
        vel = self.velocity(u)
        c = characteristic_speed(self.gravity * h, u, "squared gravity-wave speed")

        values = np.stack([vel - c, vel + c], axis=-1)

        right = np.empty(u.shape[:-1] + (2, 2))
        right[..., 0, 0] = 1.0
        right[..., 0, 1] = 1.0
        right[..., 1, 0] = vel - c
        right[..., 1, 1] = vel + c

        inv = 0.5 / c
        left = np.empty_like(right)
        left[..., 0, 0] = (vel + c) * inv
        left[..., 0, 1] = -inv
        left[..., 1, 0] = -(vel - c) * inv
        left[..., 1, 1] = inv
        return Eigensystem(left, values, right)

    def spectral_radius(self, u, x):
        return np.abs(self.velocity(u)) + np.sqrt(self.gravity * u[..., 0])

    def lake_at_rest(self, x: np.ndarray, level: float = 10.0) -> np.ndarray:
        """Still water h + b = level, hu = 0."""
        x = np.asarray(x, dtype=np.float64)
        state = np.zeros(x.shape + (2,))
        state[..., 0] = level - self.bottom(x)
        return state
