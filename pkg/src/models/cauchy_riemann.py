"""
Self-similar Cauchy-Riemann system as a steady problem.

With xi = x/t, eta = y/t the Riemann problem W_t + A W_x + B W_y = 0,
A = diag(1, -1), B = [[0, 1], [1, 0]], becomes

    ((-xi I + A) W)_xi + ((-eta I + B) W)_eta = -2 W

which is solved on the (xi, eta) plane; here x and y play the roles of xi
and eta.
"""

import numpy as np

from .base import ConservationLaw2D, Eigensystem

JACOBIAN_X = np.array([[1.0, 0.0], [0.0, -1.0]])
JACOBIAN_Y = np.array([[0.0, 1.0], [1.0, 0.0]])


class CauchyRiemann2D(ConservationLaw2D):
    """Position-dependent linear system with W = (u, v)."""

    name = "cauchy-riemann"
    m = 2
    component_names = ("u", "v")

    def flux_x(self, u, x, y):
        x = np.asarray(x, dtype=np.float64)
        return u @ JACOBIAN_X.T - x[..., None] * u

    def flux_y(self, u, x, y):
        y = np.asarray(y, dtype=np.float64)
        return u @ JACOBIAN_Y.T - y[..., None] * u

    def source(self, u, x, y):
        return -2.0 * np.asarray(u, dtype=np.float64)

    def eigen_in_direction(self, u, n, x, y) -> Eigensystem:
        """
        n_x A + n_y B with n = (cos t, sin t) is a reflection with
        eigenvalues -1, +1 and eigenvectors (-sin t/2, cos t/2), (cos t/2, sin t/2);
        the position shifts both eigenvalues by -(n_x x + n_y y).
        """
        n = np.asarray(n, dtype=np.float64)
        shape = u.shape[:-1]
        nx = np.broadcast_to(n[..., 0], shape)
        ny = np.broadcast_to(n[..., 1], shape)
        shift = nx * np.asarray(x, dtype=np.float64) + ny * np.asarray(y, dtype=np.float64)

        half = 0.5 * np.arctan2(ny, nx)
        cos_h, sin_h = np.cos(half), np.sin(half)

        values = np.stack([-shift - 1.0, -shift + 1.0], axis=-1)
        right = np.empty(shape + (2, 2))
        right[..., 0, 0] = -sin_h
        right[..., 1, 0] = cos_h
        right[..., 0, 1] = cos_h
        right[..., 1, 1] = sin_h
        left = np.swapaxes(right, -1, -2).copy()
        return Eigensystem(left, values, right)

    def spectral_radii(self, u, x, y):
        shape = u.shape[:-1]
        x = np.broadcast_to(np.asarray(x, dtype=np.float64), shape)
        y = np.broadcast_to(np.asarray(y, dtype=np.float64), shape)
        return np.abs(x) + 1.0, np.abs(y) + 1.0

    def wave_speed(self, u, x, y):
        shape = u.shape[:-1]
        x = np.broadcast_to(np.asarray(x, dtype=np.float64), shape)
        y = np.broadcast_to(np.asarray(y, dtype=np.float64), shape)
        return np.hypot(x, y) + 1.0
