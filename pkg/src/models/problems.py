"""
Benchmark problems: domain, initial data, boundary policies and exact
steady solutions, looked up by name.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np

from ..core.mesh import Grid1D, Grid2D, build_grid_1d, build_grid_2d
from ..errors import ConfigurationError, MissingExactSolutionError
from .base import BoundaryCondition, ConservationLaw1D, ConservationLaw2D
from .cauchy_riemann import CauchyRiemann2D
from .euler import GAMMA, Euler2D, NozzleEuler1D, NozzleGeometry, primitive_to_conservative
from .scalar import SQRT2, Burgers1D, BurgersSource, RotatedBurgers2D, ShearBurgers2D
from .shallow_water import DEFAULT_GRAVITY, ShallowWater1D

Law = Union[ConservationLaw1D, ConservationLaw2D]
StateFunction = Callable[..., np.ndarray]

EDGES_1D = ("left", "right")
# Boundary nodes are processed in this order; at corners the last Dirichlet edge wins.
EDGES_2D = ("left", "right", "bottom", "top")

SHOCK_REFLECTION_INFLOW = (1.0, 2.9, 0.0, 1.0 / GAMMA)
SHOCK_REFLECTION_TOP = (1.69997, 2.61934, -0.50632, 1.52819)

# Stable and unstable shock positions of the solution-dependent Burgers source
# problem: both satisfy sin(pi x_s) = 0.45.
SOURCE_SHOCK_STABLE = float(np.arcsin(0.45) / np.pi)
SOURCE_SHOCK_UNSTABLE = 1.0 - SOURCE_SHOCK_STABLE


@dataclass(frozen=True, eq=False)
class BenchmarkProblem:
    """A fully configured steady benchmark."""

    name: str
    description: str
    law: Law
    domain: Tuple[Tuple[float, float], ...]
    default_cells: Tuple[int, ...]
    initial: StateFunction
    boundaries: Mapping[str, BoundaryCondition]
    exact: Optional[StateFunction] = None
    shock_location: Optional[float] = None
    sections: Tuple[float, ...] = ()
    diagonal_section: bool = False
    parameters: Mapping[str, float] = field(default_factory=dict)
    reference: Mapping[str, Tuple[float, float]] = field(default_factory=dict)

    def __post_init__(self):
        edges = EDGES_1D if self.dimension == 1 else EDGES_2D
        missing = [edge for edge in edges if edge not in self.boundaries]
        if missing:
            raise ConfigurationError(f"{self.name}: undefined boundary policy for {', '.join(missing)}")
        if len(self.domain) != self.dimension or len(self.default_cells) != self.dimension:
            raise ConfigurationError(f"{self.name}: domain and default cells must match the dimension")

    @property
    def dimension(self) -> int:
        return 1 if isinstance(self.law, ConservationLaw1D) else 2

    @property
    def m(self) -> int:
        return self.law.m

    @property
    def has_exact(self) -> bool:
        return self.exact is not None

    def build_grid(
        self, n: Optional[int] = None, nx: Optional[int] = None, ny: Optional[int] = None
    ) -> Union[Grid1D, Grid2D]:
        """Uniform grid on the problem domain; ``n`` sets every axis unless nx/ny are given."""
        if self.dimension == 1:
            cells = n or nx or self.default_cells[0]
            (a, b), = self.domain
            return build_grid_1d(a, b, cells)

        cx = nx or n or self.default_cells[0]
        cy = ny or n or self.default_cells[1]
        (ax, bx), (ay, by) = self.domain
        return build_grid_2d((ax, bx, cx), (ay, by, cy))

    def initial_state(self, grid: Union[Grid1D, Grid2D]) -> np.ndarray:
        state = np.asarray(self.initial(*_coordinates(grid)), dtype=np.float64)
        expected = _node_shape(grid) + (self.m,)
        if state.shape != expected:
            raise ConfigurationError(
                f"{self.name}: initial state has shape {state.shape}, expected {expected}"
            )
        return state

    def exact_state(self, grid: Union[Grid1D, Grid2D]) -> np.ndarray:
        if self.exact is None:
            raise MissingExactSolutionError(f"{self.name} has no exact steady solution")
        return np.asarray(self.exact(*_coordinates(grid)), dtype=np.float64)


def _coordinates(grid: Union[Grid1D, Grid2D]) -> Tuple[np.ndarray, ...]:
    if isinstance(grid, Grid1D):
        return (grid.nodes,)
    return tuple(grid.coordinates())


def _node_shape(grid: Union[Grid1D, Grid2D]) -> Tuple[int, ...]:
    return (grid.nodes.size,) if isinstance(grid, Grid1D) else grid.shape


def exact_solution(problem: BenchmarkProblem, *position) -> Optional[np.ndarray]:
    """Pointwise exact steady state, or None when the problem has none."""
    if problem.exact is None:
        return None
    return np.asarray(problem.exact(*(np.asarray(p, dtype=np.float64) for p in position)))


def _stack(value: np.ndarray) -> np.ndarray:
    return np.asarray(value, dtype=np.float64)[..., None]


def _constant(state) -> StateFunction:
    state = np.asarray(state, dtype=np.float64)

    def fill(*position):
        shape = np.broadcast(*[np.asarray(p) for p in position]).shape
        return np.broadcast_to(state, shape + state.shape).copy()

    return fill


def burgers_trig_shock_location(beta: float) -> float:
    """Mass balance int_0^pi u dx = 2 beta gives cos(x_s) = -beta."""
    return float(np.arccos(-beta))


def burgers_trig_exact(beta: float) -> StateFunction:
    """Steady state of u_t + (u^2/2)_x = sin x cos x, u(0) = u(pi) = 0, u(x, 0) = beta sin x."""
    if beta >= 1.0:
        return lambda x: _stack(np.sin(x))
    if beta <= -1.0:
        return lambda x: _stack(-np.sin(x))

    xs = burgers_trig_shock_location(beta)
    return lambda x: _stack(np.where(np.asarray(x) >= xs, -np.sin(x), np.sin(x)))


def burgers_source_exact(s, shock: float = SOURCE_SHOCK_STABLE) -> np.ndarray:
    s = np.asarray(s, dtype=np.float64)
    return np.where(s >= shock, -0.1 - np.sin(np.pi * s), 1.0 - np.sin(np.pi * s))


def shear_exact(x, y) -> np.ndarray:
    """Fan merging into a shock whose foot is at (3/4, 1/2)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    upper = np.where(-2.0 * (x - 0.75) + (y - 0.5) <= 0.0, -0.5, 1.5)
    with np.errstate(divide="ignore", invalid="ignore"):
        fan = np.clip((x - 0.75) / (y - 0.5), -0.5, 1.5)
    return np.where(y >= 0.5, upper, fan)


def shear_shock_location(y: float) -> float:
    """Shock abscissa on the section y >= 1/2."""
    if y < 0.5:
        raise ValueError("the shear problem has a fan, not a shock, below y = 1/2")
    return 0.75 + 0.5 * (y - 0.5)


def cauchy_riemann_exact(x, y) -> np.ndarray:
    """
    Piecewise-constant similarity solution in the (xi, eta) plane.

    Interfaces are assigned to the upper/right side.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    u = np.where(
        x >= 1.0,
        np.where(y >= 1.0, 1.0, -1.0),
        np.select([y >= 1.0, y >= -1.0], [-1.0, 1.5], default=1.0),
    )
    v = np.where(
        y >= 1.0,
        np.where(x >= -1.0, 1.0, -1.0),
        np.where(x >= -1.0, -1.0, np.where(y >= -1.0, 1.5, 2.0)),
    )
    return np.stack([u, v], axis=-1)


_REGISTRY: Dict[str, Tuple[str, Callable[..., BenchmarkProblem], Tuple[str, ...]]] = {}


def _register(name: str, description: str, overridable: Tuple[str, ...] = ()):
    def decorator(factory: Callable[..., BenchmarkProblem]):
        _REGISTRY[name] = (description, factory, overridable)
        return factory

    return decorator


@_register("burgers1d-smooth", "1D Burgers with sin x cos x source, beta = 2 (smooth)", ("beta",))
def _burgers1d_smooth(beta: float = 2.0, name: str = "burgers1d-smooth") -> BenchmarkProblem:
    zero = _constant([0.0])
    return BenchmarkProblem(
        name=name,
        description=_REGISTRY[name][0],
        law=Burgers1D(BurgersSource.TRIG),
        domain=((0.0, np.pi),),
        default_cells=(80,),
        initial=lambda x: _stack(beta * np.sin(x)),
        boundaries={"left": BoundaryCondition.dirichlet(zero), "right": BoundaryCondition.dirichlet(zero)},
        exact=burgers_trig_exact(beta),
        shock_location=burgers_trig_shock_location(beta) if abs(beta) < 1.0 else None,
        parameters={"beta": beta},
    )


@_register("burgers1d-shock", "1D Burgers with sin x cos x source, beta = 0.5 (interior shock)", ("beta",))
def _burgers1d_shock(beta: float = 0.5) -> BenchmarkProblem:
    return _burgers1d_smooth(beta=beta, name="burgers1d-shock")


@_register("burgers1d-source", "1D Burgers with -pi cos(pi x) u source, two admissible shocks")
def _burgers1d_source() -> BenchmarkProblem:
    return BenchmarkProblem(
        name="burgers1d-source",
        description=_REGISTRY["burgers1d-source"][0],
        law=Burgers1D(BurgersSource.LINEAR),
        domain=((0.0, 1.0),),
        default_cells=(80,),
        initial=lambda x: _stack(np.where(np.asarray(x) >= 0.5, -0.1, 1.0)),
        boundaries={
            "left": BoundaryCondition.dirichlet(_constant([1.0])),
            "right": BoundaryCondition.dirichlet(_constant([-0.1])),
        },
        exact=lambda x: _stack(burgers_source_exact(x)),
        shock_location=SOURCE_SHOCK_STABLE,
        reference={"unstable_shock": (SOURCE_SHOCK_UNSTABLE, SOURCE_SHOCK_UNSTABLE)},
    )


@_register("shallow-water", "1D shallow water lake at rest over a Gaussian bump", ("gravity",))
def _shallow_water(gravity: float = DEFAULT_GRAVITY) -> BenchmarkProblem:
    law = ShallowWater1D(gravity=gravity)
    return BenchmarkProblem(
        name="shallow-water",
        description=_REGISTRY["shallow-water"][0],
        law=law,
        domain=((0.0, 10.0),),
        default_cells=(80,),
        initial=law.lake_at_rest,
        boundaries={
            "left": BoundaryCondition.dirichlet(law.lake_at_rest),
            "right": BoundaryCondition.dirichlet(law.lake_at_rest),
        },
        exact=law.lake_at_rest,
        parameters={"gravity": gravity},
    )


@_register("nozzle", "Quasi-1D nozzle flow with a standing normal shock at x = 0.5", ("pre_shock_mach",))
def _nozzle(pre_shock_mach: float = 1.3) -> BenchmarkProblem:
    geometry = NozzleGeometry(pre_shock_mach=pre_shock_mach)
    return BenchmarkProblem(
        name="nozzle",
        description=_REGISTRY["nozzle"][0],
        law=NozzleEuler1D(geometry),
        domain=((0.0, 1.0),),
        default_cells=(81,),
        initial=geometry.exact_state,
        boundaries={
            "left": BoundaryCondition.dirichlet(geometry.exact_state),
            "right": BoundaryCondition.dirichlet(geometry.exact_state),
        },
        exact=geometry.exact_state,
        shock_location=geometry.shock_position,
        parameters={"pre_shock_mach": pre_shock_mach},
    )


def _rotated(x, y):
    return (np.asarray(x) + np.asarray(y)) / SQRT2


@_register("burgers2d-smooth", "Rotated 2D Burgers with trigonometric source, beta = 1.2", ("beta",))
def _burgers2d_smooth(beta: float = 1.2) -> BenchmarkProblem:
    def exact(x, y):
        return _stack(np.sin(_rotated(x, y)))

    side = np.pi / SQRT2
    dirichlet = BoundaryCondition.dirichlet(exact)
    return BenchmarkProblem(
        name="burgers2d-smooth",
        description=_REGISTRY["burgers2d-smooth"][0],
        law=RotatedBurgers2D(BurgersSource.TRIG),
        domain=((0.0, side), (0.0, side)),
        default_cells=(40, 40),
        initial=lambda x, y: _stack(beta * np.sin(_rotated(x, y))),
        boundaries={edge: dirichlet for edge in EDGES_2D},
        exact=exact,
        parameters={"beta": beta},
    )


@_register("burgers2d-source", "Rotated 2D Burgers with -pi cos(pi s) u source")
def _burgers2d_source() -> BenchmarkProblem:
    def exact(x, y):
        return _stack(burgers_source_exact(_rotated(x, y)))

    side = 1.0 / SQRT2
    dirichlet = BoundaryCondition.dirichlet(exact)
    return BenchmarkProblem(
        name="burgers2d-source",
        description=_REGISTRY["burgers2d-source"][0],
        law=RotatedBurgers2D(BurgersSource.LINEAR),
        domain=((0.0, side), (0.0, side)),
        default_cells=(80, 80),
        initial=lambda x, y: _stack(np.where(_rotated(x, y) >= 0.5, -0.1, 1.0)),
        boundaries={edge: dirichlet for edge in EDGES_2D},
        exact=exact,
        shock_location=SOURCE_SHOCK_STABLE,
        diagonal_section=True,
        reference={"contour": (-1.2, 1.1)},
    )


@_register("burgers2d-shear", "Burgers in x, transport in y: fan merging into a shock")
def _burgers2d_shear() -> BenchmarkProblem:
    return BenchmarkProblem(
        name="burgers2d-shear",
        description=_REGISTRY["burgers2d-shear"][0],
        law=ShearBurgers2D(),
        domain=((0.0, 1.0), (0.0, 1.0)),
        default_cells=(80, 80),
        initial=lambda x, y: _stack(1.5 - 2.0 * np.asarray(x) + 0.0 * np.asarray(y)),
        boundaries={
            "left": BoundaryCondition.dirichlet(_constant([1.5])),
            "right": BoundaryCondition.dirichlet(_constant([-0.5])),
            "bottom": BoundaryCondition.dirichlet(lambda x, y: _stack(1.5 - 2.0 * np.asarray(x))),
            "top": BoundaryCondition.outflow(),
        },
        exact=lambda x, y: _stack(shear_exact(x, y)),
        sections=(0.25, 0.5, 0.75),
    )


@_register("cauchy-riemann", "Self-similar Cauchy-Riemann system on [-2, 2]^2")
def _cauchy_riemann() -> BenchmarkProblem:
    dirichlet = BoundaryCondition.dirichlet(cauchy_riemann_exact)
    return BenchmarkProblem(
        name="cauchy-riemann",
        description=_REGISTRY["cauchy-riemann"][0],
        law=CauchyRiemann2D(),
        domain=((-2.0, 2.0), (-2.0, 2.0)),
        default_cells=(80, 80),
        initial=cauchy_riemann_exact,
        boundaries={edge: dirichlet for edge in EDGES_2D},
        exact=cauchy_riemann_exact,
        reference={"u": (-3.0, 1.6), "v": (-1.6, 3.5)},
    )


@_register("shock-reflection", "Euler regular shock reflection off the wall y = 0")
def _shock_reflection() -> BenchmarkProblem:
    inflow = primitive_to_conservative(np.array(SHOCK_REFLECTION_INFLOW))
    top = primitive_to_conservative(np.array(SHOCK_REFLECTION_TOP))

    def initial(x, y):
        y = np.asarray(y, dtype=np.float64)
        on_top = np.isclose(y, 1.0, rtol=0.0, atol=1e-12)
        return np.where(on_top[..., None], top, inflow) + 0.0 * np.asarray(x)[..., None]

    return BenchmarkProblem(
        name="shock-reflection",
        description=_REGISTRY["shock-reflection"][0],
        law=Euler2D(),
        domain=((0.0, 4.0), (0.0, 1.0)),
        default_cells=(160, 40),
        initial=initial,
        boundaries={
            "left": BoundaryCondition.dirichlet(_constant(inflow)),
            "right": BoundaryCondition.outflow(),
            "bottom": BoundaryCondition.reflective(),
            "top": BoundaryCondition.dirichlet(_constant(top)),
        },
        reference={"density": (0.94, 2.72), "energy": (5.0, 15.2)},
    )


PROBLEM_NAMES: Tuple[str, ...] = tuple(_REGISTRY)


def list_problems() -> List[Tuple[str, str]]:
    """(name, description) for every registered benchmark."""
    return [(name, entry[0]) for name, entry in _REGISTRY.items()]


def registry_lookup(name: str, overrides: Optional[Mapping[str, float]] = None) -> BenchmarkProblem:
    """
    Build a benchmark by name.

    Args:
        name: registered problem name
        overrides: problem parameters (beta, gravity, pre_shock_mach) to replace

    Raises:
        ConfigurationError: unknown name or an override the problem does not take
    """
    key = name.strip().lower()
    if key not in _REGISTRY:
        raise ConfigurationError(f"Unknown problem {name!r}; valid names: {', '.join(PROBLEM_NAMES)}")

    _, factory, overridable = _REGISTRY[key]
    overrides = dict(overrides or {})
    rejected = sorted(set(overrides) - set(overridable))
    if rejected:
        allowed = ", ".join(overridable) or "none"
        raise ConfigurationError(f"{key} does not take parameter(s) {', '.join(rejected)} (allowed: {allowed})")
    return factory(**overrides)
