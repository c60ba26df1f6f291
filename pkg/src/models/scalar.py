"""Scalar laws of the Burgers family in one and two dimensions."""

from enum import Enum

import numpy as np

from .base import ConservationLaw1D, ConservationLaw2D, Eigensystem, scalar_eigensystem

SQRT2 = np.sqrt(2.0)


class BurgersSource(str, Enum):
    """Source terms used by the Burgers benchmarks."""

    NONE = "none"
    TRIG = "trig"          # sin(s) cos(s)
    LINEAR = "linear"      # -pi cos(pi s) u


def _burgers_source(kind: BurgersSource, u: np.ndarray, s: np.ndarray) -> np.ndarray:
    if kind is BurgersSource.TRIG:
        return np.zeros_like(u) + np.sin(s) * np.cos(s)
    if kind is BurgersSource.LINEAR:
        return -np.pi * np.cos(np.pi * s) * u
    return np.zeros_like(u)


def _as_components(values: np.ndarray) -> np.ndarray:
    return np.asarray(values, dtype=np.float64)[..., None]


class ScalarLaw1D(ConservationLaw1D):
    """Scalar law defined by f, f' and s on the bare (unstacked) state."""

    m = 1
    component_names = ("u",)

    def f(self, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def df(self, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def s(self, u: np.ndarray, x: np.ndarray) -> np.ndarray:
        return np.zeros_like(u)

    def flux(self, u, x):
        return _as_components(self.f(u[..., 0]))

    def source(self, u, x):
        return _as_components(self.s(u[..., 0], np.asarray(x, dtype=np.float64)))

    def eigen(self, u, x) -> Eigensystem:
        return scalar_eigensystem(self.df(u[..., 0]))

    def spectral_radius(self, u, x):
        return np.abs(self.df(u[..., 0]))


class Burgers1D(ScalarLaw1D):
    """u_t + (u^2/2)_x = s(u, x)."""

    name = "burgers-1d"

    def __init__(self, source: BurgersSource = BurgersSource.NONE):
        self.source_kind = BurgersSource(source)

    def f(self, u):
        return 0.5 * u * u

    def df(self, u):
        return u

    def s(self, u, x):
        return _burgers_source(self.source_kind, u, x)


class ScalarLaw2D(ConservationLaw2D):
    """Scalar law defined by f, g, their derivatives and s."""

    m = 1
    component_names = ("u",)

    def f(self, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def g(self, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def df(self, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def dg(self, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def s(self, u: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.zeros_like(u)

    def flux_x(self, u, x, y):
        return _as_components(self.f(u[..., 0]))

    def flux_y(self, u, x, y):
        return _as_components(self.g(u[..., 0]))

    def source(self, u, x, y):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        return _as_components(self.s(u[..., 0], x, y))

    def eigen_in_direction(self, u, n, x, y) -> Eigensystem:
        n = np.asarray(n, dtype=np.float64)
        w = u[..., 0]
        return scalar_eigensystem(n[..., 0] * self.df(w) + n[..., 1] * self.dg(w))

    def spectral_radii(self, u, x, y):
        w = u[..., 0]
        return np.abs(self.df(w)), np.abs(self.dg(w))

    def wave_speed(self, u, x, y):
        w = u[..., 0]
        return np.hypot(self.df(w), self.dg(w))


class RotatedBurgers2D(ScalarLaw2D):
    """
    Burgers along the diagonal: u_t + (u^2/(2 sqrt 2))_x + (u^2/(2 sqrt 2))_y = s.

    The source depends on the diagonal coordinate s = (x + y)/sqrt(2).
    """

    name = "burgers-2d-rotated"

    def __init__(self, source: BurgersSource = BurgersSource.TRIG):
        self.source_kind = BurgersSource(source)

    def f(self, u):
        return u * u / (2.0 * SQRT2)

    g = f

    def df(self, u):
        return u / SQRT2

    dg = df

    def s(self, u, x, y):
        return _burgers_source(self.source_kind, u, (x + y) / SQRT2)


class ShearBurgers2D(ScalarLaw2D):
    """u_t + (u^2/2)_x + u_y = 0: Burgers in x, transport in y."""

    name = "burgers-2d-shear"

    def f(self, u):
        return 0.5 * u * u

    def g(self, u):
        return np.array(u, dtype=np.float64, copy=True)

    def df(self, u):
        return u

    def dg(self, u):
        return np.ones_like(u)
