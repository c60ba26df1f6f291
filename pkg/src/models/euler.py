"""
Ideal-gas Euler equations: quasi-1D nozzle flow and 2D conservative form.

Conservative variables are (rho, rho u, E) in 1D and (rho, rho u, rho v, E)
in 2D with p = (gamma - 1)(E - rho |v|^2 / 2).
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..errors import ConfigurationError
from .base import (
    ConservationLaw1D,
    ConservationLaw2D,
    Eigensystem,
    characteristic_speed,
    report_inadmissible,
)

GAMMA = 1.4
DIRECTION_FLOOR = 1e-8


def primitive_to_conservative(primitive: np.ndarray, gamma: float = GAMMA) -> np.ndarray:
    """(rho, u[, v], p) -> (rho, rho u[, rho v], E) along the last axis."""
    w = np.asarray(primitive, dtype=np.float64)
    rho, p = w[..., 0], w[..., -1]
    velocity = w[..., 1:-1]
    out = np.empty_like(w)
    out[..., 0] = rho
    out[..., 1:-1] = rho[..., None] * velocity
    out[..., -1] = p / (gamma - 1.0) + 0.5 * rho * np.sum(velocity * velocity, axis=-1)
    return out


def conservative_to_primitive(u: np.ndarray, gamma: float = GAMMA) -> np.ndarray:
    """Inverse of :func:`primitive_to_conservative`."""
    u = np.asarray(u, dtype=np.float64)
    rho = u[..., 0]
    velocity = u[..., 1:-1] / rho[..., None]
    out = np.empty_like(u)
    out[..., 0] = rho
    out[..., 1:-1] = velocity
    out[..., -1] = (gamma - 1.0) * (u[..., -1] - 0.5 * rho * np.sum(velocity * velocity, axis=-1))
    return out


def _roe_mean(u: np.ndarray, axis: int, gamma: float) -> np.ndarray:
    """
    sqrt(rho)-weighted mean of velocity and total enthalpy over the vertex
    ``axis``, with rho = (mean sqrt(rho))^2, returned in conservative variables.
    """
    u = np.asarray(u, dtype=np.float64)
    axis = axis % u.ndim
    if axis == u.ndim - 1:
        raise ValueError("cannot average over the component axis")

    prim = conservative_to_primitive(u, gamma)
    weights = np.sqrt(prim[..., 0])
    enthalpy = (u[..., -1] + prim[..., -1]) / prim[..., 0]

    total = np.sum(weights, axis=axis)
    vel = np.sum(weights[..., None] * prim[..., 1:-1], axis=axis) / total[..., None]
    h_bar = np.sum(weights * enthalpy, axis=axis) / total
    rho_bar = (total / u.shape[axis]) ** 2

    q2 = np.sum(vel * vel, axis=-1)
    p_bar = (gamma - 1.0) / gamma * rho_bar * (h_bar - 0.5 * q2)
    out = np.empty(rho_bar.shape + (u.shape[-1],))
    out[..., 0] = rho_bar
    out[..., 1:-1] = rho_bar[..., None] * vel
    out[..., -1] = p_bar / (gamma - 1.0) + 0.5 * rho_bar * q2
    return out


class _IdealGas:
    gamma: float = GAMMA

    def pressure(self, u: np.ndarray) -> np.ndarray:
        rho = u[..., 0]
        momentum = u[..., 1:-1]
        return (self.gamma - 1.0) * (u[..., -1] - 0.5 * np.sum(momentum * momentum, axis=-1) / rho)

    def sound_speed(self, u: np.ndarray) -> np.ndarray:
        return np.sqrt(self.gamma * self.pressure(u) / u[..., 0])

    def _check_gas(self, u: np.ndarray) -> None:
        report_inadmissible(u[..., 0] <= 0.0, u, "non-positive density")
        report_inadmissible(self.pressure(u) <= 0.0, u, "non-positive pressure")


@dataclass(frozen=True)
class NozzleGeometry:
    """
    Nozzle whose area makes a prescribed piecewise-linear Mach profile steady.

    The Mach number runs linearly from ``inlet_mach`` at x = 0 to
    ``pre_shock_mach`` at the shock, jumps to the normal-shock value and runs
    linearly to ``outlet_mach`` at x = 1. A(x) f(M(x)) is constant on each
    side; the first sonic throat has A = 1 and the constant on the right is
    fixed by continuity of A at the shock.
    """

    gamma: float = GAMMA
    inlet_mach: float = 0.8
    outlet_mach: float = 1.8
    pre_shock_mach: float = 1.3
    shock_position: float = 0.5

    def __post_init__(self):
        if self.pre_shock_mach <= 1.0:
            raise ConfigurationError(f"pre-shock Mach number must be supersonic, got {self.pre_shock_mach}")
        if not 0.0 < self.shock_position < 1.0:
            raise ConfigurationError("shock position must lie inside (0, 1)")
        if self.inlet_mach <= 0 or self.outlet_mach <= 0:
            raise ConfigurationError("Mach numbers must be positive")

    @property
    def delta(self) -> float:
        return 0.5 * (self.gamma - 1.0)

    @property
    def exponent(self) -> float:
        return 0.5 * (self.gamma + 1.0) / (self.gamma - 1.0)

    @property
    def post_shock_mach(self) -> float:
        m1 = self.pre_shock_mach
        return float(np.sqrt((1.0 + self.delta * m1 * m1) / (self.gamma * m1 * m1 - self.delta)))

    def area_mach_function(self, w):
        """f(w) = w / (1 + delta w^2)^p."""
        w = np.asarray(w, dtype=np.float64)
        return w / (1.0 + self.delta * w * w) ** self.exponent

    def _branches(self, x) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=np.float64)
        xs = self.shock_position
        right = x >= xs
        slope_left = (self.pre_shock_mach - self.inlet_mach) / xs
        slope_right = (self.outlet_mach - self.post_shock_mach) / (1.0 - xs)
        mach = np.where(
            right,
            self.post_shock_mach + slope_right * (x - xs),
            self.inlet_mach + slope_left * x,
        )
        slope = np.where(right, slope_right, slope_left)
        return mach, slope, right

    def mach(self, x):
        return self._branches(x)[0]

    def area(self, x):
        mach, _, right = self._branches(x)
        f_sonic = self.area_mach_function(1.0)
        constant_right = (
            f_sonic
            * self.area_mach_function(self.post_shock_mach)
            / self.area_mach_function(self.pre_shock_mach)
        )
        constant = np.where(right, constant_right, f_sonic)
        return constant / self.area_mach_function(mach)

    def log_area_slope(self, x):
        """A'/A = -M' (1/M - 2 p delta M / (1 + delta M^2))."""
        mach, slope, _ = self._branches(x)
        dlogf = 1.0 / mach - 2.0 * self.exponent * self.delta * mach / (1.0 + self.delta * mach * mach)
        return -slope * dlogf

    def stagnation_pressure_ratio(self) -> float:
        """Total pressure ratio p02/p01 across the normal shock."""
        g = self.gamma
        m2 = self.pre_shock_mach ** 2
        a = ((g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0)) ** (g / (g - 1.0))
        b = ((g + 1.0) / (2.0 * g * m2 - (g - 1.0))) ** (1.0 / (g - 1.0))
        return float(a * b)

    def exact_state(self, x) -> np.ndarray:
        """
        Conservative isentropic state with rho0 = p0 = 1 upstream; stagnation
        density and pressure scale by the total pressure ratio behind the shock.
        """
        mach, _, right = self._branches(x)
        g = self.gamma
        stagnation = np.where(right, self.stagnation_pressure_ratio(), 1.0)
        factor = 1.0 + self.delta * mach * mach
        rho = stagnation * factor ** (-1.0 / (g - 1.0))
        p = stagnation * factor ** (-g / (g - 1.0))
        velocity = mach * np.sqrt(g * p / rho)
        return primitive_to_conservative(np.stack([rho, velocity, p], axis=-1), g)


class NozzleEuler1D(_IdealGas, ConservationLaw1D):
    """Quasi-1D Euler: u_t + f(u)_x = -(A'/A)(rho u, rho u^2, u (E + p))."""

    name = "nozzle-euler"
    m = 3
    component_names = ("rho", "rho_u", "E")

    def __init__(self, geometry: NozzleGeometry = NozzleGeometry()):
        self.geometry = geometry
        self.gamma = geometry.gamma

    def check_admissible(self, u: np.ndarray) -> None:
        super().check_admissible(u)
        self._check_gas(u)

    def flux(self, u, x):
        rho, mom, energy = u[..., 0], u[..., 1], u[..., 2]
        vel = mom / rho
        p = self.pressure(u)
        return np.stack([mom, mom * vel + p, vel * (energy + p)], axis=-1)

    def source(self, u, x):
        rho, mom, energy = u[..., 0], u[..., 1], u[..., 2]
        vel = mom / rho
        p = self.pressure(u)
        ratio = self.geometry.log_area_slope(np.asarray(x, dtype=np.float64))
        return -ratio[..., None] * np.stack([mom, mom * vel, vel * (energy + p)], axis=-1)

    def eigen(self, u, x) -> Eigensystem:
        g = self.gamma
        rho = u[..., 0]
        vel = u[..., 1] / rho
        p = self.pressure(u)
        with np.errstate(divide="ignore", invalid="ignore"):
            c = characteristic_speed(g * p / rho, u, "squared sound speed")
        enthalpy = (u[..., 2] + p) / rho
        b1 = (g - 1.0) / (c * c)
        b2 = 0.5 * b1 * vel * vel

        values = np.stack([vel - c, vel, vel + c], axis=-1)

        right = np.empty(u.shape[:-1] + (3, 3))
        right[..., :, 0] = np.stack([np.ones_like(vel), vel - c, enthalpy - vel * c], axis=-1)
        right[..., :, 1] = np.stack([np.ones_like(vel), vel, 0.5 * vel * vel], axis=-1)
        right[..., :, 2] = np.stack([np.ones_like(vel), vel + c, enthalpy + vel * c], axis=-1)

        left = np.empty_like(right)
        left[..., 0, :] = 0.5 * np.stack([b2 + vel / c, -b1 * vel - 1.0 / c, b1], axis=-1)
        left[..., 1, :] = np.stack([1.0 - b2, b1 * vel, -b1], axis=-1)
        left[..., 2, :] = 0.5 * np.stack([b2 - vel / c, -b1 * vel + 1.0 / c, b1], axis=-1)
        return Eigensystem(left, values, right)

    def spectral_radius(self, u, x):
        return np.abs(u[..., 1] / u[..., 0]) + self.sound_speed(u)

    def roe_average(self, states: np.ndarray, axis: int = -2) -> np.ndarray:
        return _roe_mean(states, axis, self.gamma)


class Euler2D(_IdealGas, ConservationLaw2D):
    """Two-dimensional Euler equations in conservative variables."""

    name = "euler-2d"
    m = 4
    component_names = ("rho", "rho_u", "rho_v", "E")

    def __init__(self, gamma: float = GAMMA):
        self.gamma = gamma

    def check_admissible(self, u: np.ndarray) -> None:
        super().check_admissible(u)
        self._check_gas(u)

    def flux_x(self, u, x, y):
        rho, mu, mv, energy = (u[..., k] for k in range(4))
        vel = mu / rho
        p = self.pressure(u)
        return np.stack([mu, mu * vel + p, mv * vel, vel * (energy + p)], axis=-1)

    def flux_y(self, u, x, y):
        rho, mu, mv, energy = (u[..., k] for k in range(4))
        vel = mv / rho
        p = self.pressure(u)
        return np.stack([mv, mu * vel, mv * vel + p, vel * (energy + p)], axis=-1)

    def source(self, u, x, y):
        return np.zeros_like(u, dtype=np.float64)

    def eigen_in_direction(self, u, n, x, y) -> Eigensystem:
        """Eigenvalues (q_n - c, q_n, q_n, q_n + c) of n_x f' + n_y g'."""
        g = self.gamma
        n = np.asarray(n, dtype=np.float64)
        nx = np.broadcast_to(n[..., 0], u.shape[:-1])
        ny = np.broadcast_to(n[..., 1], u.shape[:-1])

        rho = u[..., 0]
        vu = u[..., 1] / rho
        vv = u[..., 2] / rho
        p = self.pressure(u)
        with np.errstate(divide="ignore", invalid="ignore"):
            c = characteristic_speed(g * p / rho, u, "squared sound speed")
        enthalpy = (u[..., 3] + p) / rho
        qn = vu * nx + vv * ny
        q2 = vu * vu + vv * vv
        b1 = (g - 1.0) / (c * c)
        b2 = 0.5 * b1 * q2
        one = np.ones_like(rho)
        zero = np.zeros_like(rho)

        values = np.stack([qn - c, qn, qn, qn + c], axis=-1)

        right = np.stack(
            [
                np.stack([one, vu - c * nx, vv - c * ny, enthalpy - c * qn], axis=-1),
                np.stack([one, vu, vv, 0.5 * q2], axis=-1),
                np.stack([zero, ny, -nx, vu * ny - vv * nx], axis=-1),
                np.stack([one, vu + c * nx, vv + c * ny, enthalpy + c * qn], axis=-1),
            ],
            axis=-1,
        )
        left = np.stack(
            [
                0.5 * np.stack([b2 + qn / c, -b1 * vu - nx / c, -b1 * vv - ny / c, b1], axis=-1),
                np.stack([1.0 - b2, b1 * vu, b1 * vv, -b1], axis=-1),
                np.stack([vv * nx - vu * ny, ny, -nx, zero], axis=-1),
                0.5 * np.stack([b2 - qn / c, -b1 * vu + nx / c, -b1 * vv + ny / c, b1], axis=-1),
            ],
            axis=-2,
        )
        return Eigensystem(left, values, right)

    def spectral_radii(self, u, x, y):
        c = self.sound_speed(u)
        return np.abs(u[..., 1] / u[..., 0]) + c, np.abs(u[..., 2] / u[..., 0]) + c

    def wave_speed(self, u, x, y):
        return np.hypot(u[..., 1], u[..., 2]) / u[..., 0] + self.sound_speed(u)

    def default_direction(self, u: np.ndarray) -> np.ndarray:
        return self.velocity_direction(u)

    def velocity_direction(self, u: np.ndarray) -> np.ndarray:
        """Unit flow direction; (1, 0) where the speed is below 1e-8."""
        vel = u[..., 1:3] / u[..., 0:1]
        speed = np.hypot(vel[..., 0], vel[..., 1])
        slow = speed < DIRECTION_FLOOR
        n = vel / np.where(slow, 1.0, speed)[..., None]
        n[slow] = (1.0, 0.0)
        return n

    def roe_average(self, states: np.ndarray, axis: int = -2) -> np.ndarray:
        return _roe_mean(states, axis, self.gamma)

    def reflect(self, u: np.ndarray, normal_axis: int = 1) -> np.ndarray:
        """Negate the momentum component normal to the wall."""
        mirrored = np.array(u, dtype=np.float64, copy=True)
        mirrored[..., 1 + normal_axis] = -mirrored[..., 1 + normal_axis]
        return mirrored
