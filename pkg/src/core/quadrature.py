"""
WENO-ZQ integration of point values over one cell.

A cubic interpolant on a four-node stencil and the trapezoid on the target
cell are blended with nonlinear weights built from their smoothness
indicators:

    result = w1 * (q1 / g1 - (g2 / g1) * q2) + w2 * q2

with linear weights (g1, g2) = (0.99, 0.01). Near the ends of an axis the
stencil is one-sided and the interpolant is integrated over the
boundary-adjacent cell. The 2D source integral is done dimension by
dimension: first along y at the four stencil columns, then along x.

All closed forms (cell weights, smoothness quadratic forms) are derived once
at import time from exact polynomial algebra on the reference stencil
t = 0, 1, 2, 3 and are valid for uniform spacing only.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional, Tuple

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import polynomial as P

from ..errors import StencilError

STENCIL_SIZE = 4
SPACING_RTOL = 1e-12

_REFERENCE_NODES = np.arange(STENCIL_SIZE, dtype=np.float64)


def _lagrange_basis() -> list:
    basis = []
    for k, tk in enumerate(_REFERENCE_NODES):
        others = np.delete(_REFERENCE_NODES, k)
        coef = P.polyfromroots(others) / np.prod(tk - others)
        basis.append(coef)
    return basis


def _definite_integral(coef: np.ndarray, lo: float, hi: float) -> float:
    antiderivative = P.polyint(coef)
    return float(P.polyval(hi, antiderivative) - P.polyval(lo, antiderivative))


def _build_closed_forms() -> Tuple[np.ndarray, np.ndarray]:
    """
    Cell weights W[a, k] = int_a^{a+1} L_k dt and smoothness forms
    Q[a, k, l] = sum_m int_a^{a+1} L_k^(m) L_l^(m) dt for target offsets a.

    In reference coordinates the factors dx^(2m-1) of the indicator cancel
    against the chain rule, so Q is scale free.
    """
    basis = _lagrange_basis()
    weights = np.zeros((STENCIL_SIZE - 1, STENCIL_SIZE))
    forms = np.zeros((STENCIL_SIZE - 1, STENCIL_SIZE, STENCIL_SIZE))

    for a in range(STENCIL_SIZE - 1):
        for k in range(STENCIL_SIZE):
            weights[a, k] = _definite_integral(basis[k], a, a + 1)
        for m in range(1, STENCIL_SIZE):
            derivs = [P.polyder(b, m) for b in basis]
            for k in range(STENCIL_SIZE):
                for l in range(k, STENCIL_SIZE):
                    value = _definite_integral(P.polymul(derivs[k], derivs[l]), a, a + 1)
                    forms[a, k, l] += value
                    if l != k:
                        forms[a, l, k] += value

    weights.flags.writeable = False
    forms.flags.writeable = False
    return weights, forms


CELL_WEIGHTS, SMOOTHNESS_FORMS = _build_closed_forms()


@dataclass(frozen=True)
class WenoParameters:
    """Linear weights and the regularization of the nonlinear weights."""

    gamma1: float = 0.99
    gamma2: float = 0.01
    epsilon: float = 1e-6

    def __post_init__(self):
        if self.gamma1 <= 0 or self.gamma2 <= 0:
            raise ValueError("linear weights must be positive")
        if abs(self.gamma1 + self.gamma2 - 1.0) > 1e-14:
            raise ValueError("linear weights must sum to 1")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


DEFAULT_WENO = WenoParameters()


@dataclass(frozen=True, eq=False)
class StencilSample1D:
    """
    Four consecutive samples and the cell they are integrated over.

    ``target`` is the position of the target cell's left node inside the
    stencil: 1 for the central stencil {i-1..i+2}, 0 at the left end of an
    axis, 2 at the right end. ``values`` may carry trailing component axes.
    """

    values: np.ndarray
    spacing: float
    target: int = 1
    nodes: Optional[np.ndarray] = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape[:1] != (STENCIL_SIZE,):
            raise StencilError(f"a stencil holds exactly {STENCIL_SIZE} samples, got {values.shape}")
        if self.target not in (0, 1, 2):
            raise StencilError(f"target cell offset must be 0, 1 or 2, got {self.target}")
        if not self.spacing > 0:
            raise StencilError(f"stencil spacing must be positive, got {self.spacing}")
        object.__setattr__(self, "values", values)

        if self.nodes is not None:
            nodes = np.asarray(self.nodes, dtype=np.float64)
            if nodes.shape != (STENCIL_SIZE,):
                raise StencilError("stencil nodes must be 4 coordinates")
            if np.any(np.abs(np.diff(nodes) - self.spacing) > SPACING_RTOL * self.spacing):
                raise StencilError(f"stencil nodes {nodes} are not uniformly spaced by {self.spacing}")
            object.__setattr__(self, "nodes", nodes)

    @property
    def target_pair(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.values[self.target], self.values[self.target + 1]


class StencilChoice(NamedTuple):
    """Node indices of a stencil and the offset of its target cell."""

    nodes: Tuple[int, int, int, int]
    target: int


def select_stencil(i: int, n: int) -> StencilChoice:
    """
    Stencil for cell [x_i, x_{i+1}] on an axis of ``n`` cells.

    Central {i-1..i+2} where available, {0..3} for the first cell and
    {n-3..n} for the last one.
    """
    if n < STENCIL_SIZE - 1:
        raise StencilError(f"need at least {STENCIL_SIZE - 1} cells for a 4-node stencil, got {n}")
    if not 0 <= i <= n - 1:
        raise StencilError(f"cell index {i} outside 0..{n - 1}")

    if i == 0:
        start = 0
    elif i == n - 1:
        start = n - 3
    else:
        start = i - 1
    nodes = tuple(range(start, start + STENCIL_SIZE))
    return StencilChoice(nodes=nodes, target=i - start)  # type: ignore[arg-type]


@lru_cache(maxsize=64)
def stencil_table(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Index array (n, 4) and target offsets (n,) for every cell of an axis."""
    choices = [select_stencil(i, n) for i in range(n)]
    index = np.array([c.nodes for c in choices], dtype=np.intp)
    offsets = np.array([c.target for c in choices], dtype=np.intp)
    index.flags.writeable = False
    offsets.flags.writeable = False
    return index, offsets


def integral_cubic_interpolant(st: StencilSample1D) -> np.ndarray:
    """Exact integral over the target cell of the cubic through the 4 samples."""
    return st.spacing * np.tensordot(CELL_WEIGHTS[st.target], st.values, axes=(0, 0))


def integral_linear_interpolant(s_left, s_right, dx: float):
    """Trapezoid value over one cell."""
    if not dx > 0:
        raise StencilError(f"cell width must be positive, got {dx}")
    return dx * 0.5 * (np.asarray(s_left, dtype=np.float64) + s_right)


def smoothness_indicator(poly: Polynomial, cell: Tuple[float, float], dx: float) -> float:
    """
    beta = sum_{m=1..r} int_cell dx^(2m-1) (d^m p / dx^m)^2 dx, r = degree of p.

    Evaluated in closed form from the polynomial coefficients.
    """
    lo, hi = cell
    beta = 0.0
    for m in range(1, poly.degree() + 1):
        squared = poly.deriv(m) ** 2
        antiderivative = squared.integ()
        beta += dx ** (2 * m - 1) * float(antiderivative(hi) - antiderivative(lo))
    return beta


def cubic_smoothness(st: StencilSample1D) -> np.ndarray:
    """Smoothness indicator of the stencil's cubic interpolant over the target cell."""
    form = SMOOTHNESS_FORMS[st.target]
    return np.einsum("k...,kl,l...->...", st.values, form, st.values)


def nonlinear_weights(beta1, beta2, params: WenoParameters = DEFAULT_WENO):
    """
    tau0 = |beta1 - beta2|^2, w_n ~ gamma_n (1 + tau0 / (eps + beta_n)), normalized.
    """
    beta1 = np.asarray(beta1, dtype=np.float64)
    beta2 = np.asarray(beta2, dtype=np.float64)
    tau0 = (beta1 - beta2) ** 2
    w1 = params.gamma1 * (1.0 + tau0 / (params.epsilon + beta1))
    w2 = params.gamma2 * (1.0 + tau0 / (params.epsilon + beta2))
    total = w1 + w2
    omega1 = w1 / total
    return omega1, 1.0 - omega1


def _blend(q1, q2, omega1, omega2, params: WenoParameters):
    return omega1 * (q1 / params.gamma1 - (params.gamma2 / params.gamma1) * q2) + omega2 * q2


def weno_zq_cell_integral(st: StencilSample1D, params: WenoParameters = DEFAULT_WENO):
    """WENO-ZQ approximation of the integral over the stencil's target cell."""
    q1 = integral_cubic_interpolant(st)
    s_left, s_right = st.target_pair
    q2 = integral_linear_interpolant(s_left, s_right, st.spacing)
    omega1, omega2 = nonlinear_weights(cubic_smoothness(st), (s_right - s_left) ** 2, params)
    return _blend(q1, q2, omega1, omega2, params)


def weno_zq_integrate(
    samples: np.ndarray,
    spacing: float,
    params: WenoParameters = DEFAULT_WENO,
    axis: int = 0,
) -> np.ndarray:
    """
    WENO-ZQ integrals over every cell of one axis.

    Args:
        samples: point values, ``n + 1`` nodes along ``axis``
        spacing: uniform node spacing along ``axis``
        params: WENO parameters
        axis: the integration axis

    Returns:
        Array with ``n`` cells along ``axis``, other axes unchanged.
    """
    values = np.moveaxis(np.asarray(samples, dtype=np.float64), axis, 0)
    n = values.shape[0] - 1
    index, offsets = stencil_table(n)

    stencils = values[index]  # (n, 4, ...)
    q1 = spacing * np.einsum("ck,ck...->c...", CELL_WEIGHTS[offsets], stencils)

    left, right = values[:-1], values[1:]
    q2 = spacing * 0.5 * (left + right)

    projected = np.einsum("ckl,cl...->ck...", SMOOTHNESS_FORMS[offsets], stencils)
    beta1 = np.einsum("ck...,ck...->c...", stencils, projected)
    beta2 = (right - left) ** 2

    omega1, omega2 = nonlinear_weights(beta1, beta2, params)
    return np.moveaxis(_blend(q1, q2, omega1, omega2, params), 0, axis)


def source_cell_integral_2d(
    samples: np.ndarray,
    spacings: Tuple[float, float],
    targets: Tuple[int, int] = (1, 1),
    params: WenoParameters = DEFAULT_WENO,
):
    """
    Double integral over one cell from a 4x4 block of node samples.

    ``samples[k, l]`` is the value at (x_{i0+k}, y_{j0+l}); ``targets`` are
    the target offsets along x and y (see :func:`select_stencil`). The inner
    pass integrates each column in y, the outer pass integrates the four
    column integrals in x.
    """
    block = np.asarray(samples, dtype=np.float64)
    if block.shape[:2] != (STENCIL_SIZE, STENCIL_SIZE):
        raise StencilError(f"expected a 4x4 sample block, got {block.shape}")
    hx, hy = spacings
    tx, ty = targets

    columns = np.stack(
        [weno_zq_cell_integral(StencilSample1D(block[k], hy, ty), params) for k in range(STENCIL_SIZE)]
    )
    return weno_zq_cell_integral(StencilSample1D(columns, hx, tx), params)


def weno_zq_integrate_2d(
    samples: np.ndarray,
    hx: float,
    hy: float,
    params: WenoParameters = DEFAULT_WENO,
) -> np.ndarray:
    """Cell double integrals over a whole (nx+1, ny+1, ...) node array."""
    in_y = weno_zq_integrate(samples, hy, params, axis=1)
    return weno_zq_integrate(in_y, hx, params, axis=0)
