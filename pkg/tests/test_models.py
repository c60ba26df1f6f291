"""Tests for conservation laws and the benchmark registry."""

import numpy as np
import pytest

from src.errors import (
    ConfigurationError,
    EigenDecompositionError,
    InadmissibleStateError,
    MissingExactSolutionError,
    RDWenoError,
)
from src.models.base import BoundaryCondition, BoundaryKind
from src.models.cauchy_riemann import JACOBIAN_X, JACOBIAN_Y, CauchyRiemann2D
from src.models.euler import (
    Euler2D,
    NozzleEuler1D,
    NozzleGeometry,
    conservative_to_primitive,
    primitive_to_conservative,
)
from src.models.problems import (
    PROBLEM_NAMES,
    SHOCK_REFLECTION_INFLOW,
    SOURCE_SHOCK_STABLE,
    BenchmarkProblem,
    burgers_source_exact,
    burgers_trig_exact,
    exact_solution,
    list_problems,
    registry_lookup,
    shear_exact,
    shear_shock_location,
)
from src.models.scalar import Burgers1D, BurgersSource, RotatedBurgers2D, ShearBurgers2D
from src.models.shallow_water import ShallowWater1D


def numerical_jacobian(flux, u, step=1e-6):
    """Central-difference Jacobian of a flux of one state (m,)."""
    m = u.shape[-1]
    jac = np.empty((m, m))
    for j in range(m):
        du = np.zeros(m)
        du[j] = step * max(1.0, abs(u[j]))
        jac[:, j] = (flux(u + du) - flux(u - du)) / (2.0 * du[j])
    return jac


EULER_STATE_2D = primitive_to_conservative(np.array([1.2, 0.7, -0.4, 0.9]))


class TestFluxesAndSources:
    """Test point values of fluxes and sources."""

    def test_burgers_flux(self):
        law = Burgers1D()
        assert law.flux(np.array([[2.0]]), np.array([0.0]))[0, 0] == pytest.approx(2.0)

    def test_trig_source(self):
        law = Burgers1D(BurgersSource.TRIG)
        value = law.source(np.array([[0.3]]), np.array([np.pi / 4]))
        assert value[0, 0] == pytest.approx(0.5)

    def test_linear_source_scales_with_state(self):
        law = Burgers1D(BurgersSource.LINEAR)
        value = law.source(np.array([[1.0]]), np.array([0.0]))
        assert value[0, 0] == pytest.approx(-np.pi)

    def test_shallow_water_flux(self):
        law = ShallowWater1D()
        flux = law.flux(np.array([1.0, 0.0]), np.array(0.0))
        np.testing.assert_allclose(flux, [0.0, 4.9])

    def test_shallow_water_source_vanishes_on_bump_top(self):
        law = ShallowWater1D()
        source = law.source(np.array([[5.0, 0.0]]), np.array([5.0]))
        np.testing.assert_allclose(source, [[0.0, 0.0]], atol=1e-14)

    def test_euler_inflow_flux(self):
        law = Euler2D()
        u = primitive_to_conservative(np.array(SHOCK_REFLECTION_INFLOW))
        flux = law.flux_x(u, 0.0, 0.0)
        np.testing.assert_allclose(flux, [2.9, 9.124286, 0.0, 19.4445], rtol=1e-6, atol=1e-12)

    def test_rotated_burgers_splits_flux_evenly(self):
        law = RotatedBurgers2D()
        u = np.array([[2.0]])
        np.testing.assert_allclose(law.flux_x(u, 0.0, 0.0), law.flux_y(u, 0.0, 0.0))
        assert law.flux_x(u, 0.0, 0.0)[0, 0] == pytest.approx(4.0 / (2.0 * np.sqrt(2.0)))

    def test_shear_transport_flux(self):
        law = ShearBurgers2D()
        u = np.array([[0.7], [-0.2]])
        np.testing.assert_allclose(law.flux_y(u, 0.0, 0.0), u)


class TestEigensystems:
    """Test J = R diag(lambda) L for every law."""

    def setup_method(self):
        self.rng = np.random.default_rng(11)

    def _check(self, eigen, jac):
        np.testing.assert_allclose(eigen.right @ eigen.left, np.eye(jac.shape[0]), atol=1e-12)
        np.testing.assert_allclose(eigen.reconstruct(), jac, rtol=1e-5, atol=1e-6)

    def test_shallow_water(self):
        law = ShallowWater1D()
        u = np.array([2.0, 1.5])
        eigen = law.eigen(u, np.array(0.0))
        self._check(eigen, numerical_jacobian(lambda w: law.flux(w, 0.0), u))

    def test_shallow_water_still_water_speeds(self):
        eigen = ShallowWater1D().eigen(np.array([1.0, 0.0]), np.array(0.0))
        np.testing.assert_allclose(eigen.values, [-np.sqrt(9.8), np.sqrt(9.8)])

    def test_nozzle_euler(self):
        law = NozzleEuler1D()
        u = primitive_to_conservative(np.array([0.8, 1.1, 0.6]))
        eigen = law.eigen(u, np.array(0.3))
        self._check(eigen, numerical_jacobian(lambda w: law.flux(w, 0.3), u))

    def test_burgers(self):
        law = Burgers1D()
        eigen = law.eigen(np.array([[1.7]]), np.array([0.0]))
        assert eigen.values[0, 0] == pytest.approx(1.7)
        np.testing.assert_allclose(eigen.left, [[[1.0]]])

    def test_euler_2d_random_directions(self):
        law = Euler2D()
        for _ in range(5):
            angle = self.rng.uniform(0.0, 2.0 * np.pi)
            n = np.array([np.cos(angle), np.sin(angle)])
            eigen = law.eigen_in_direction(EULER_STATE_2D, n, 0.0, 0.0)
            jac = numerical_jacobian(
                lambda w: n[0] * law.flux_x(w, 0.0, 0.0) + n[1] * law.flux_y(w, 0.0, 0.0),
                EULER_STATE_2D,
            )
            self._check(eigen, jac)

    def test_cauchy_riemann_random_directions(self):
        law = CauchyRiemann2D()
        u = np.array([0.4, -1.1])
        for _ in range(5):
            angle = self.rng.uniform(0.0, 2.0 * np.pi)
            n = np.array([np.cos(angle), np.sin(angle)])
            x, y = self.rng.uniform(-2.0, 2.0, size=2)
            eigen = law.eigen_in_direction(u, n, x, y)
            jac = n[0] * (JACOBIAN_X - x * np.eye(2)) + n[1] * (JACOBIAN_Y - y * np.eye(2))
            self._check(eigen, jac)

    def test_cauchy_riemann_shifted_speeds(self):
        eigen = CauchyRiemann2D().eigen_in_direction(np.zeros(2), np.array([1.0, 0.0]), 0.3, -0.7)
        np.testing.assert_allclose(eigen.values, [-1.3, 0.7])

    def test_scalar_2d_direction(self):
        law = ShearBurgers2D()
        eigen = law.eigen_in_direction(np.array([[2.0]]), np.array([[0.6, 0.8]]), 0.0, 0.0)
        assert eigen.values[0, 0] == pytest.approx(0.6 * 2.0 + 0.8)

    def test_euler_spectral_radii(self):
        law = Euler2D()
        u = primitive_to_conservative(np.array(SHOCK_REFLECTION_INFLOW))
        rx, ry = law.spectral_radii(u, 0.0, 0.0)
        assert rx == pytest.approx(3.9)
        assert ry == pytest.approx(1.0)
        assert law.wave_speed(u, 0.0, 0.0) == pytest.approx(3.9)

    def test_dry_shallow_water_has_no_eigensystem(self):
        u = np.array([[2.0, 0.0], [0.0, 0.0]])
        with pytest.raises(EigenDecompositionError, match=r"gravity-wave speed.*\(1,\)") as excinfo:
            ShallowWater1D().eigen(u, np.array([4.0, 5.0]))
        assert isinstance(excinfo.value, RDWenoError)
        assert excinfo.value.exit_code == 3

    def test_zero_pressure_nozzle_has_no_eigensystem(self):
        u = np.array([1.0, 0.5, 0.125])
        with pytest.raises(EigenDecompositionError, match="sound speed"):
            NozzleEuler1D().eigen(u, np.array(0.3))

    def test_zero_pressure_euler_2d_has_no_eigensystem(self):
        u = np.array([1.0, 0.5, 0.5, 0.25])
        with pytest.raises(EigenDecompositionError, match="sound speed"):
            Euler2D().eigen_in_direction(u, np.array([1.0, 0.0]), 0.0, 0.0)

    def test_non_finite_state_has_no_eigensystem(self):
        with pytest.raises(EigenDecompositionError):
            ShallowWater1D().eigen(np.array([np.nan, 0.0]), np.array(0.0))


class TestEulerHelpers:
    """Test gas-dynamics helpers."""

    def test_primitive_roundtrip(self):
        w = np.array([[1.0, 2.9, 0.0, 1.0 / 1.4], [1.7, 2.6, -0.5, 1.5]])
        np.testing.assert_allclose(conservative_to_primitive(primitive_to_conservative(w)), w, rtol=1e-13)

    def test_roe_average_of_equal_states(self):
        law = NozzleEuler1D()
        u = primitive_to_conservative(np.array([0.9, 0.4, 0.7]))
        np.testing.assert_allclose(law.roe_average(np.stack([u, u])), u, rtol=1e-13)

    def test_roe_average_is_between_states(self):
        law = Euler2D()
        a = primitive_to_conservative(np.array([1.0, 0.5, 0.0, 1.0]))
        b = primitive_to_conservative(np.array([4.0, 0.5, 0.0, 1.0]))
        mean = law.roe_average(np.stack([a, b]))
        assert mean[0] == pytest.approx(2.25)
        assert mean[1] / mean[0] == pytest.approx(0.5)

    def test_reflect_negates_normal_momentum(self):
        mirrored = Euler2D().reflect(np.array([1.0, 2.0, -0.3, 1.0]))
        np.testing.assert_allclose(mirrored, [1.0, 2.0, 0.3, 1.0])

    def test_velocity_direction(self):
        law = Euler2D()
        states = np.stack(
            [
                primitive_to_conservative(np.array([1.0, 3.0, 4.0, 1.0])),
                primitive_to_conservative(np.array([1.0, 0.0, 0.0, 1.0])),
            ]
        )
        np.testing.assert_allclose(law.velocity_direction(states), [[0.6, 0.8], [1.0, 0.0]])


class TestAdmissibility:
    """Test inadmissible states."""

    def test_dry_shallow_water(self):
        with pytest.raises(InadmissibleStateError):
            ShallowWater1D().check_admissible(np.array([[1.0, 0.0], [0.0, 0.0]]))

    def test_negative_pressure(self):
        with pytest.raises(InadmissibleStateError):
            Euler2D().check_admissible(np.array([[1.0, 2.0, -0.3, 1.0]]))

    def test_non_finite_state(self):
        with pytest.raises(InadmissibleStateError):
            Burgers1D().check_admissible(np.array([[0.0], [np.nan]]))

    def test_admissible_state_passes(self):
        NozzleEuler1D().check_admissible(primitive_to_conservative(np.array([[1.0, 0.5, 1.0]])))

    def test_invalid_gravity(self):
        with pytest.raises(ValueError):
            ShallowWater1D(gravity=0.0)


class TestNozzleGeometry:
    """Test the nozzle built from the Mach profile."""

    def setup_method(self):
        self.geometry = NozzleGeometry()

    def test_area_mach_function_at_sonic_point(self):
        assert self.geometry.area_mach_function(1.0) == pytest.approx(0.5787037, rel=1e-6)

    def test_post_shock_mach(self):
        assert self.geometry.post_shock_mach == pytest.approx(0.78596, abs=1e-5)

    def test_mach_profile_ends(self):
        assert self.geometry.mach(0.0) == pytest.approx(0.8)
        assert self.geometry.mach(1.0) == pytest.approx(1.8)
        assert self.geometry.mach(0.5 - 1e-12) == pytest.approx(1.3)

    def test_area_is_continuous_at_shock(self):
        left = self.geometry.area(0.5 - 1e-12)
        right = self.geometry.area(0.5)
        assert left == pytest.approx(right, rel=1e-9)

    def test_area_times_f_is_constant_per_side(self):
        g = self.geometry
        left_x = np.linspace(0.0, 0.49, 20)
        right_x = np.linspace(0.5, 1.0, 20)

        left = g.area(left_x) * g.area_mach_function(g.mach(left_x))
        right = g.area(right_x) * g.area_mach_function(g.mach(right_x))
        np.testing.assert_allclose(left, g.area_mach_function(1.0), rtol=1e-12)
        np.testing.assert_allclose(right, right[0], rtol=1e-12)

        assert g.area(0.0) * g.area_mach_function(0.8) == pytest.approx(left[0])
        assert g.area(1.0) * g.area_mach_function(1.8) == pytest.approx(right[0])

    def test_first_throat_has_unit_area(self):
        g = self.geometry
        x = np.linspace(0.0, 0.49, 2000)
        assert np.min(g.area(x)) == pytest.approx(1.0, abs=1e-6)

    def test_log_area_slope_matches_finite_differences(self):
        g = self.geometry
        x = np.array([0.1, 0.3, 0.7, 0.9])
        step = 1e-6
        numeric = (np.log(g.area(x + step)) - np.log(g.area(x - step))) / (2 * step)
        np.testing.assert_allclose(g.log_area_slope(x), numeric, rtol=1e-6)

    def test_exact_state_satisfies_jump_conditions(self):
        law = NozzleEuler1D(self.geometry)
        before = self.geometry.exact_state(np.array(0.5 - 1e-12))
        after = self.geometry.exact_state(np.array(0.5))

        assert after[0] > before[0]
        np.testing.assert_allclose(law.flux(after, 0.5), law.flux(before, 0.5), rtol=1e-8)

    def test_exact_mach_number(self):
        law = NozzleEuler1D(self.geometry)
        u = self.geometry.exact_state(np.array([0.0, 0.25, 0.75]))
        mach = (u[:, 1] / u[:, 0]) / law.sound_speed(u)
        np.testing.assert_allclose(mach, self.geometry.mach(np.array([0.0, 0.25, 0.75])), rtol=1e-12)

    def test_subsonic_pre_shock_mach_rejected(self):
        with pytest.raises(ConfigurationError):
            NozzleGeometry(pre_shock_mach=0.9)


class TestLakeAtRest:
    """Test the well-balanced still-water state."""

    def test_flux_gradient_balances_source(self):
        law = ShallowWater1D()
        x = np.linspace(0.0, 10.0, 100001)
        u = law.lake_at_rest(x)

        flux_gradient = np.gradient(law.flux(u, x)[:, 1], x, edge_order=2)
        np.testing.assert_allclose(flux_gradient - law.source(u, x)[:, 1], 0.0, atol=1e-5)

    def test_surface_is_flat(self):
        law = ShallowWater1D()
        x = np.linspace(0.0, 10.0, 41)
        u = law.lake_at_rest(x)
        np.testing.assert_allclose(u[:, 0] + law.bottom(x), 10.0)
        np.testing.assert_array_equal(u[:, 1], 0.0)


class TestExactSolutions:
    """Test exact steady states and shock positions."""

    def test_trig_burgers_shock(self):
        problem = registry_lookup("burgers1d-shock")
        assert problem.shock_location == pytest.approx(2.0943951, abs=1e-7)

        exact = burgers_trig_exact(0.5)
        xs = problem.shock_location
        assert exact(np.array([xs]))[0, 0] == pytest.approx(-np.sin(xs))
        assert exact(np.array([1.0]))[0, 0] == pytest.approx(np.sin(1.0))

    def test_smooth_burgers_has_no_shock(self):
        problem = registry_lookup("burgers1d-smooth")
        assert problem.shock_location is None
        x = np.linspace(0.0, np.pi, 9)
        np.testing.assert_allclose(problem.exact(x)[:, 0], np.sin(x))

    def test_source_problem_shock(self):
        assert SOURCE_SHOCK_STABLE == pytest.approx(0.14858, abs=1e-5)
        assert np.sin(np.pi * SOURCE_SHOCK_STABLE) == pytest.approx(0.45)
        values = burgers_source_exact(np.array([0.1, SOURCE_SHOCK_STABLE, 0.5]))
        np.testing.assert_allclose(
            values,
            [1.0 - np.sin(0.1 * np.pi), -0.1 - 0.45, -1.1],
        )

    def test_shear_fan_and_shock(self):
        assert shear_exact(0.5, 0.25) == pytest.approx(1.0)
        assert shear_shock_location(0.75) == pytest.approx(0.875)
        assert shear_exact(0.87, 0.75) == pytest.approx(1.5)
        assert shear_exact(0.88, 0.75) == pytest.approx(-0.5)

    def test_shear_section_below_foot_has_no_shock(self):
        with pytest.raises(ValueError):
            shear_shock_location(0.25)

    def test_cauchy_riemann_corner_states(self):
        problem = registry_lookup("cauchy-riemann")
        np.testing.assert_allclose(exact_solution(problem, 1.5, 1.5), [1.0, 1.0])
        np.testing.assert_allclose(exact_solution(problem, -1.5, -1.5), [1.0, 2.0])

    def test_missing_exact_solution(self):
        problem = registry_lookup("shock-reflection")
        assert exact_solution(problem, 0.0, 0.0) is None
        with pytest.raises(MissingExactSolutionError):
            problem.exact_state(problem.build_grid(8, ny=4))


class TestRegistry:
    """Test problem lookup."""

    def test_every_problem_builds(self):
        for name in PROBLEM_NAMES:
            problem = registry_lookup(name)
            grid = problem.build_grid()
            state = problem.initial_state(grid)
            assert state.shape[-1] == problem.m

    def test_listing_matches_names(self):
        assert [name for name, _ in list_problems()] == list(PROBLEM_NAMES)
        assert len(PROBLEM_NAMES) == 10

    def test_lookup_is_case_insensitive(self):
        assert registry_lookup(" Nozzle ").name == "nozzle"

    def test_unknown_problem(self):
        with pytest.raises(ConfigurationError):
            registry_lookup("burgers3d")

    def test_override(self):
        problem = registry_lookup("burgers1d-smooth", {"beta": 0.5})
        assert problem.parameters["beta"] == 0.5
        assert problem.shock_location == pytest.approx(np.arccos(-0.5))

    def test_rejected_override(self):
        with pytest.raises(ConfigurationError):
            registry_lookup("burgers1d-source", {"beta": 1.0})

    def test_default_grids(self):
        assert registry_lookup("nozzle").build_grid().n_cells == 81
        assert registry_lookup("shock-reflection").build_grid().cells == (160, 40)
        assert registry_lookup("burgers2d-shear").build_grid(nx=20, ny=10).cells == (20, 10)

    def test_shock_reflection_boundaries(self):
        problem = registry_lookup("shock-reflection")
        kinds = {edge: bc.kind for edge, bc in problem.boundaries.items()}
        assert kinds == {
            "left": BoundaryKind.DIRICHLET,
            "right": BoundaryKind.OUTFLOW,
            "bottom": BoundaryKind.REFLECTIVE,
            "top": BoundaryKind.DIRICHLET,
        }

    def test_dirichlet_needs_data(self):
        with pytest.raises(ConfigurationError):
            BoundaryCondition(BoundaryKind.DIRICHLET)

    def test_missing_edge_policy(self):
        base = registry_lookup("burgers1d-shock")
        with pytest.raises(ConfigurationError):
            BenchmarkProblem(
                name="broken",
                description="",
                law=base.law,
                domain=base.domain,
                default_cells=base.default_cells,
                initial=base.initial,
                boundaries={"left": base.boundaries["left"]},
            )
