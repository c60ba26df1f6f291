"""Tests for WENO-ZQ cell integration."""

import numpy as np
import pytest
from numpy.polynomial import Polynomial

from src.core.quadrature import (
    CELL_WEIGHTS,
    StencilSample1D,
    WenoParameters,
    cubic_smoothness,
    integral_cubic_interpolant,
    integral_linear_interpolant,
    nonlinear_weights,
    select_stencil,
    smoothness_indicator,
    source_cell_integral_2d,
    stencil_table,
    weno_zq_cell_integral,
    weno_zq_integrate,
    weno_zq_integrate_2d,
)
from src.errors import StencilError


class TestClosedForms:
    """Test the reference-stencil weights."""

    def test_central_weights(self):
        np.testing.assert_allclose(24.0 * CELL_WEIGHTS[1], [-1.0, 13.0, 13.0, -1.0], atol=1e-13)

    def test_weights_integrate_constants(self):
        np.testing.assert_allclose(CELL_WEIGHTS.sum(axis=1), 1.0, atol=1e-14)

    def test_one_sided_weights_are_mirror_images(self):
        np.testing.assert_allclose(CELL_WEIGHTS[0], CELL_WEIGHTS[2][::-1], atol=1e-14)


class TestCubicIntegral:
    """Test the 4-node interpolant integral."""

    def test_constant(self):
        st = StencilSample1D(np.full(4, 2.5), spacing=0.2)
        assert integral_cubic_interpolant(st) == pytest.approx(0.5)

    def test_linear(self):
        st = StencilSample1D(np.array([-1.0, 0.0, 1.0, 2.0]), spacing=1.0)
        assert integral_cubic_interpolant(st) == pytest.approx(0.5, abs=1e-15)

    def test_cubic_is_exact(self):
        nodes = np.array([-1.0, 0.0, 1.0, 2.0])
        st = StencilSample1D(nodes**3, spacing=1.0, nodes=nodes)
        assert integral_cubic_interpolant(st) == pytest.approx(0.25, abs=1e-14)

    def test_one_sided_targets(self):
        nodes = np.array([0.0, 1.0, 2.0, 3.0])
        values = nodes**3
        assert integral_cubic_interpolant(StencilSample1D(values, 1.0, target=0)) == pytest.approx(0.25)
        assert integral_cubic_interpolant(StencilSample1D(values, 1.0, target=2)) == pytest.approx(
            (81.0 - 16.0) / 4.0
        )

    def test_component_axes_are_carried(self):
        values = np.stack([np.ones(4), np.arange(4.0)], axis=-1)
        result = integral_cubic_interpolant(StencilSample1D(values, 1.0))
        np.testing.assert_allclose(result, [1.0, 1.5])

    def test_nonuniform_nodes_rejected(self):
        with pytest.raises(StencilError):
            StencilSample1D(np.zeros(4), spacing=1.0, nodes=np.array([0.0, 1.0, 2.5, 3.0]))

    def test_wrong_sample_count_rejected(self):
        with pytest.raises(StencilError):
            StencilSample1D(np.zeros(5), spacing=1.0)


class TestTrapezoid:
    """Test the 2-node integral."""

    @pytest.mark.parametrize(
        "left,right,dx,expected",
        [(1.0, 1.0, 0.5, 0.5), (0.0, 2.0, 1.0, 1.0), (3.0, -1.0, 0.25, 0.25)],
    )
    def test_values(self, left, right, dx, expected):
        assert integral_linear_interpolant(left, right, dx) == pytest.approx(expected)

    def test_nonpositive_width_rejected(self):
        with pytest.raises(StencilError):
            integral_linear_interpolant(1.0, 2.0, 0.0)


class TestSmoothnessIndicator:
    """Test smoothness indicators."""

    def test_constant_is_smooth(self):
        assert smoothness_indicator(Polynomial([3.0]), (0.0, 1.0), 1.0) == 0.0

    def test_linear_equals_squared_gap(self):
        dx, gap = 0.5, 2.0
        line = Polynomial([0.0, gap / dx])
        assert smoothness_indicator(line, (0.0, dx), dx) == pytest.approx(gap**2)

    def test_bump_cubic(self):
        # Cubic through (0, 0, 1, 0) at t = 0..3: -(t^3 - 4 t^2 + 3 t) / 2.
        cubic = Polynomial([0.0, -1.5, 2.0, -0.5])
        expected = 331.0 / 30.0

        assert smoothness_indicator(cubic, (1.0, 2.0), 1.0) == pytest.approx(expected, rel=1e-13)
        st = StencilSample1D(np.array([0.0, 0.0, 1.0, 0.0]), spacing=1.0)
        assert cubic_smoothness(st) == pytest.approx(expected, rel=1e-13)
        assert integral_cubic_interpolant(st) == pytest.approx(13.0 / 24.0)

    def test_closed_form_is_scale_free(self):
        values = np.array([0.3, -0.2, 1.1, 0.4])
        coarse = cubic_smoothness(StencilSample1D(values, spacing=1.0))
        fine = cubic_smoothness(StencilSample1D(values, spacing=1e-3))
        assert coarse == pytest.approx(fine, rel=1e-14)

    def test_matches_polynomial_evaluation(self):
        dx = 0.1
        nodes = dx * np.arange(4)
        values = np.array([0.3, -0.2, 1.1, 0.4])
        poly = Polynomial.fit(nodes, values, 3).convert()
        st = StencilSample1D(values, spacing=dx, nodes=nodes)
        assert cubic_smoothness(st) == pytest.approx(
            smoothness_indicator(poly, (dx, 2 * dx), dx), rel=1e-9
        )


class TestNonlinearWeights:
    """Test the WENO-ZQ nonlinear weights."""

    def test_equal_indicators_give_linear_weights(self):
        w1, w2 = nonlinear_weights(0.7, 0.7)
        assert w1 == pytest.approx(0.99)
        assert w2 == pytest.approx(0.01)

    def test_closed_formula(self):
        eps = 1e-6
        raw1 = 0.99 * (1.0 + 1.0 / eps)
        raw2 = 0.01 * (1.0 + 1.0 / (eps + 1.0))
        w1, w2 = nonlinear_weights(0.0, 1.0)
        assert w1 == pytest.approx(raw1 / (raw1 + raw2), rel=1e-14)
        assert w2 == pytest.approx(raw2 / (raw1 + raw2), rel=1e-12)

    def test_normalization(self):
        rng = np.random.default_rng(7)
        b1 = rng.exponential(size=200)
        b2 = rng.exponential(size=200)
        w1, w2 = nonlinear_weights(b1, b2)
        np.testing.assert_allclose(w1 + w2, 1.0, rtol=0, atol=1e-15)
        assert np.all((w1 > 0) & (w1 < 1))

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            WenoParameters(gamma1=0.9, gamma2=0.2)
        with pytest.raises(ValueError):
            WenoParameters(epsilon=0.0)


class TestWenoCellIntegral:
    """Test the blended cell integral."""

    def test_constant(self):
        st = StencilSample1D(np.full(4, -3.0), spacing=0.1)
        assert weno_zq_cell_integral(st) == pytest.approx(-0.3)

    def test_linear_exactness(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            a, b = rng.normal(size=2)
            h = rng.uniform(0.01, 1.0)
            x0 = rng.uniform(-5, 5)
            nodes = x0 + h * np.arange(-1, 3)
            st = StencilSample1D(a + b * nodes, spacing=h)
            exact = h * (a + b * (x0 + 0.5 * h))
            assert weno_zq_cell_integral(st) == pytest.approx(exact, rel=1e-12, abs=1e-13)

    def test_fifth_order_cell_error(self):
        x0 = 0.3
        widths = np.array([0.1, 0.05, 0.025, 0.0125])
        errors = []
        for h in widths:
            nodes = x0 + h * np.arange(-1, 3)
            st = StencilSample1D(np.sin(nodes), spacing=h)
            exact = np.cos(x0) - np.cos(x0 + h)
            errors.append(abs(weno_zq_cell_integral(st) - exact))

        slope = np.polyfit(np.log(widths), np.log(errors), 1)[0]
        assert slope >= 4.7

    def test_jump_outside_target_stays_near_trapezoid(self):
        st = StencilSample1D(np.array([0.0, 0.0, 0.0, 1.0]), spacing=1.0)
        q1 = integral_cubic_interpolant(st)
        q2 = integral_linear_interpolant(*st.target_pair, st.spacing)
        assert abs(weno_zq_cell_integral(st) - q2) <= abs(q1 - q2)


class TestStencilSelection:
    """Test stencil selection near the ends of an axis."""

    def test_left_end(self):
        choice = select_stencil(0, 10)
        assert choice.nodes == (0, 1, 2, 3)
        assert choice.target == 0

    def test_interior(self):
        choice = select_stencil(5, 10)
        assert choice.nodes == (4, 5, 6, 7)
        assert choice.target == 1

    def test_right_end(self):
        choice = select_stencil(9, 10)
        assert choice.nodes == (7, 8, 9, 10)
        assert choice.target == 2

    def test_too_few_cells(self):
        with pytest.raises(StencilError):
            select_stencil(0, 2)

    def test_cell_out_of_range(self):
        with pytest.raises(StencilError):
            select_stencil(10, 10)

    def test_table(self):
        index, offsets = stencil_table(6)
        assert index.shape == (6, 4)
        np.testing.assert_array_equal(offsets, [0, 1, 1, 1, 1, 2])


class TestBatchedIntegration:
    """Test whole-axis and 2D integration."""

    def test_batched_matches_single_cells(self):
        h = 0.2
        x = h * np.arange(9)
        values = np.exp(np.sin(3 * x))
        batched = weno_zq_integrate(values, h)

        for i in range(8):
            choice = select_stencil(i, 8)
            st = StencilSample1D(values[list(choice.nodes)], h, choice.target)
            assert batched[i] == pytest.approx(weno_zq_cell_integral(st), rel=1e-12)

    def test_integration_along_second_axis(self):
        h = 0.25
        samples = np.outer(np.arange(3.0), np.ones(6))
        result = weno_zq_integrate(samples, h, axis=1)
        assert result.shape == (3, 5)
        np.testing.assert_allclose(result[2], 2 * h)

    def test_2d_constant(self):
        block = np.full((4, 4), 2.0)
        assert source_cell_integral_2d(block, (0.1, 0.3)) == pytest.approx(0.06)

    def test_2d_linear(self):
        nodes = np.arange(-1.0, 3.0)
        X, Y = np.meshgrid(nodes, nodes, indexing="ij")
        assert source_cell_integral_2d(X + Y, (1.0, 1.0)) == pytest.approx(1.0, abs=1e-14)

    def test_2d_batched_matches_block(self):
        hx, hy = 0.1, 0.2
        x = hx * np.arange(7)
        y = hy * np.arange(6)
        X, Y = np.meshgrid(x, y, indexing="ij")
        samples = np.cos(X) * np.exp(Y)
        batched = weno_zq_integrate_2d(samples, hx, hy)

        cx, cy = select_stencil(3, 6), select_stencil(0, 5)
        block = samples[np.ix_(cx.nodes, cy.nodes)]
        single = source_cell_integral_2d(block, (hx, hy), (cx.target, cy.target))
        assert batched[3, 0] == pytest.approx(single, rel=1e-12)

    def test_2d_global_order(self):
        errors = []
        for n in (10, 20, 40):
            h = 1.0 / n
            x = h * np.arange(n + 1)
            X, Y = np.meshgrid(x, x, indexing="ij")
            cells = weno_zq_integrate_2d(np.sin(np.pi * X) * np.exp(Y), h, h)
            errors.append(abs(np.sum(cells) - 2.0 * (np.e - 1.0) / np.pi))

        orders = np.log2(np.array(errors[:-1]) / np.array(errors[1:]))
        assert np.all(orders >= 3.6)
