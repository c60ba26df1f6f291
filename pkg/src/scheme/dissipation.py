"""
Streamline dissipation residuals. They add to the limited parts and sum to
zero over the vertices of a cell.
"""

from typing import Tuple

import numpy as np

from ..models.base import ConservationLaw2D, Eigensystem
from .limiter import ROE_EPSILON, roe_correct

SINGULAR_RTOL = 1e-14

# Vertex order used throughout 2D: M1 = (i+1, j+1), M2 = (i+1, j),
# M3 = (i, j+1), M4 = (i, j).
VERTEX_OFFSETS: Tuple[Tuple[int, int], ...] = ((1, 1), (1, 0), (0, 1), (0, 0))


def dissipation_1d(total: np.ndarray, eigen: Eigensystem, epsilon: float = ROE_EPSILON) -> np.ndarray:
    """
    (-d, +d) with d = 1/2 R (Lambda / |Lambda|_roe) L Phi.

    Returns:
        Array of shape (..., 2, m): left vertex first.
    """
    sign = eigen.values / roe_correct(eigen.values, epsilon)
    characteristic = np.einsum("...ij,...j->...i", eigen.left, total)
    d = 0.5 * np.einsum("...ij,...j->...i", eigen.right, sign * characteristic)
    return np.stack([-d, d], axis=-2)


def basis_functions_2d(s, t) -> np.ndarray:
    """Bilinear basis of the unit reference cell at local coordinates (s, t), vertex order M1..M4."""
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    return np.stack([s * t, s * (1.0 - t), (1.0 - s) * t, (1.0 - s) * (1.0 - t)], axis=-1)


def basis_gradients_2d(hx: float, hy: float) -> np.ndarray:
    """
    Gradient of each bilinear basis function at its own vertex, shape (4, 2).
    """
    if hx <= 0 or hy <= 0:
        raise ValueError("cell sizes must be positive")
    return np.array(
        [
            [1.0 / hx, 1.0 / hy],
            [1.0 / hx, -1.0 / hy],
            [-1.0 / hx, 1.0 / hy],
            [-1.0 / hx, -1.0 / hy],
        ]
    )


def dissipation_2d(
    law: ConservationLaw2D,
    total: np.ndarray,
    mean: np.ndarray,
    x: np.ndarray,
    y: np.ndarray,
    hx: float,
    hy: float,
    epsilon: float = ROE_EPSILON,
) -> np.ndarray:
    """
    Phi^k_diss = K_k tau Phi, K_k = (f', g')(mean) . grad phi_k(M_k),
    tau^{-1} = sum_k |K_k| with the Roe-corrected eigenvalue moduli.

    Cells where tau^{-1} is singular get no dissipation.

    Returns:
        Array of shape (..., 4, m) in vertex order M1..M4.
    """
    gradients = basis_gradients_2d(hx, hy)
    lengths = np.hypot(gradients[:, 0], gradients[:, 1])

    directional = []
    for gradient, length in zip(gradients, lengths):
        eig = law.eigen_in_direction(mean, gradient / length, x, y)
        directional.append((length, eig))

    if law.m == 1:
        k = np.stack([length * eig.values[..., 0] for length, eig in directional], axis=-1)
        tau_inv = np.sum(roe_correct(k, epsilon), axis=-1)
        scaled = total[..., 0] / tau_inv
        return (k * scaled[..., None])[..., None]

    jacobians = []
    tau_inv = np.zeros(total.shape + (total.shape[-1],))
    for length, eig in directional:
        jacobians.append(length * eig.reconstruct())
        modulus = Eigensystem(eig.left, roe_correct(length * eig.values, epsilon), eig.right)
        tau_inv += modulus.reconstruct()

    scale = np.max(np.abs(tau_inv), axis=(-2, -1))
    det = np.linalg.det(tau_inv)
    singular = ~(np.abs(det) > SINGULAR_RTOL * scale ** total.shape[-1])
    if np.any(singular):
        tau_inv[singular] = np.eye(total.shape[-1])

    rhs = np.where(singular[..., None], 0.0, total)
    scaled = np.linalg.solve(tau_inv, rhs[..., None])[..., 0]
    return np.stack([np.einsum("...ij,...j->...i", K, scaled) for K in jacobians], axis=-2)
