"""Lax-Friedrichs splitting, the Struijs limiter and the Roe entropy fix."""

from dataclasses import dataclass

import numpy as np

ROE_EPSILON = 1e-2
DEGENERATE_RTOL = 1e-14

# Distribution weights beta^k, shape (..., K, m): one weight per vertex and
# per (characteristic) component.
LimiterWeights = np.ndarray


@dataclass(frozen=True)
class RoeFix:
    """|a| when |a| > epsilon, else the smooth surrogate (a^2 + eps^2) / (2 eps)."""

    epsilon: float = ROE_EPSILON

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("Roe correction threshold must be positive")

    def __call__(self, a):
        return roe_correct(a, self.epsilon)


def roe_correct(a, epsilon: float = ROE_EPSILON):
    a = np.asarray(a, dtype=np.float64)
    magnitude = np.abs(a)
    return np.where(magnitude > epsilon, magnitude, (a * a + epsilon * epsilon) / (2.0 * epsilon))


def alpha_1d(spectral_left: np.ndarray, spectral_right: np.ndarray, dx: float) -> np.ndarray:
    """alpha = dx * max over the two nodes of the spectral radius."""
    return dx * np.maximum(spectral_left, spectral_right)


def alpha_2d(radius_x: np.ndarray, radius_y: np.ndarray, hx: float, hy: float) -> np.ndarray:
    """
    alpha = max(hx, hy) * max over the vertices of (rho_x + rho_y).

    ``radius_x``/``radius_y`` carry the vertex axis last.
    """
    return max(hx, hy) * np.max(radius_x + radius_y, axis=-1)


def lxf_split(total: np.ndarray, states: np.ndarray, mean: np.ndarray, alpha) -> np.ndarray:
    """
    Phi^k = Phi / K + alpha (u_k - mean).

    Args:
        total: residuals, shape (..., m)
        states: vertex states, shape (..., K, m)
        mean: arithmetic mean of the vertex states, shape (..., m)
        alpha: dissipation coefficient, shape (...)

    Returns:
        Parts of shape (..., K, m); they sum to ``total`` over K.
    """
    n_vertices = states.shape[-2]
    alpha = np.asarray(alpha, dtype=np.float64)[..., None, None]
    return total[..., None, :] / n_vertices + alpha * (states - mean[..., None, :])


def struijs_limiter(parts: np.ndarray, total: np.ndarray, rtol: float = DEGENERATE_RTOL) -> LimiterWeights:
    """
    beta^k = max(Phi^k / Phi, 0) / sum_j max(Phi^j / Phi, 0), per component.

    Components whose total satisfies |Phi| <= rtol (1 + max_k |Phi^k|) get
    equal weights 1/K.
    """
    n_vertices = parts.shape[-2]
    total = np.asarray(total, dtype=np.float64)[..., None, :]

    scale = 1.0 + np.max(np.abs(parts), axis=-2, keepdims=True)
    degenerate = np.abs(total) <= rtol * scale

    safe_total = np.where(degenerate, 1.0, total)
    positive = np.maximum(parts / safe_total, 0.0)
    denominator = np.sum(positive, axis=-2, keepdims=True)
    degenerate = degenerate | (denominator <= 0.0)

    weights = positive / np.where(degenerate, 1.0, denominator)
    return np.where(degenerate, 1.0 / n_vertices, weights)
