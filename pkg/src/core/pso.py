"""
Particle Swarm Optimization engine with a fixed velocity restriction

The restriction Vmax = beta * (upper - lower) is computed once at the start
of a run and never changed. Everything here is independent of scheduling;
the job-shop layer only supplies an objective and a search space.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from core.error_handler import (
    ConfigurationError, ContractViolation, ErrorFactory, NumericalFaultError,
    ParameterDomainError
)

logger = logging.getLogger(__name__)

BETA_MIN = 0.01
BETA_MAX = 1.0
MAX_SEED = 2 ** 64 - 1

Objective = Callable[[np.ndarray], float]


@dataclass(frozen=True, eq=False)
class SearchSpace:
    """Axis-aligned box D = [lower, upper] of dimension dim"""
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        if lower.ndim != 1 or upper.ndim != 1 or lower.size == 0:
            raise ContractViolation("SearchSpace bounds must be non-empty vectors")
        if lower.shape != upper.shape:
            raise ErrorFactory.length_mismatch("SearchSpace upper", upper.size, lower.size)
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise ContractViolation("SearchSpace bounds must be finite")
        if not np.all(lower < upper):
            raise ContractViolation("SearchSpace requires lower[i] < upper[i] for every i")
        object.__setattr__(self, 'lower', lower)
        object.__setattr__(self, 'upper', upper)

    @property
    def dim(self) -> int:
        return int(self.lower.size)

    @property
    def span(self) -> np.ndarray:
        return self.upper - self.lower

    @classmethod
    def unit_cube(cls, dim: int) -> 'SearchSpace':
        """[0, 1]^dim"""
        if dim < 1:
            raise ContractViolation(f"dimension must be positive, got {dim}")
        return cls(np.zeros(dim), np.ones(dim))

    @classmethod
    def uniform(cls, dim: int, lower: float, upper: float) -> 'SearchSpace':
        return cls(np.full(dim, float(lower)), np.full(dim, float(upper)))


@dataclass(frozen=True)
class ParameterSet:
    """
    PSO behavioral parameters {alpha1, alpha2, omega, beta}.

    Also used as a GA chromosome; gene order is (alpha1, alpha2, omega, beta).
    Negative weights are allowed.
    """
    alpha1: float
    alpha2: float
    omega: float
    beta: float

    GENE_NAMES = ('alpha1', 'alpha2', 'omega', 'beta')

    def __post_init__(self):
        for name in self.GENE_NAMES:
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ParameterDomainError(f"{name} must be finite, got {value}",
                                           context={name: value})
            object.__setattr__(self, name, value)
        if not BETA_MIN <= self.beta <= BETA_MAX:
            raise ErrorFactory.invalid_beta(self.beta)

    def as_genes(self) -> Tuple[float, float, float, float]:
        return (self.alpha1, self.alpha2, self.omega, self.beta)

    @classmethod
    def from_genes(cls, genes: Sequence[float]) -> 'ParameterSet':
        if len(genes) != 4:
            raise ErrorFactory.length_mismatch("ParameterSet genes", len(genes), 4)
        return cls(*genes)

    def format(self) -> str:
        return ",".join(f"{g:g}" for g in self.as_genes())


# Reference parameter sets
KENNEDY = ParameterSet(1.49445, 1.49445, 0.729, 1.0)
PEDERSEN = ParameterSet(-0.2746, 4.8976, -0.3488, 1.0)
APSO = ParameterSet(1.76428, 1.38203, 0.730135, 0.280868)

PARAMETER_LABELS = {
    'kennedy': KENNEDY,
    'pedersen': PEDERSEN,
    'apso': APSO,
}


@dataclass(frozen=True, eq=False)
class ParticleState:
    """One particle: position X, velocity V, personal best P and f(P)"""
    position: np.ndarray
    velocity: np.ndarray
    best_position: np.ndarray
    best_value: float


@dataclass(eq=False)
class SwarmState:
    """Whole swarm plus its global best G and the frozen velocity bound"""
    particles: List[ParticleState]
    global_best_position: np.ndarray
    global_best_value: float
    vmax: np.ndarray
    iteration: int = 0


@dataclass(frozen=True)
class PsoConfig:
    """Swarm size, iteration budget and seed for one run"""
    n_particles: int = 50
    n_iterations: int = 100
    seed: int = 0
    clamp_position: bool = True

    def __post_init__(self):
        if int(self.n_particles) < 1:
            raise ContractViolation(f"n_particles must be >= 1, got {self.n_particles}")
        if int(self.n_iterations) < 1:
            raise ContractViolation(f"n_iterations must be >= 1, got {self.n_iterations}")
        if not 0 <= int(self.seed) <= MAX_SEED:
            raise ConfigurationError(f"seed must lie in [0, {MAX_SEED}], got {self.seed}")

    def with_seed(self, seed: int) -> 'PsoConfig':
        return PsoConfig(self.n_particles, self.n_iterations, int(seed), self.clamp_position)


@dataclass(frozen=True, eq=False)
class RunResult:
    """Outcome of run_pso"""
    best_position: np.ndarray
    best_value: float
    history: Tuple[float, ...]
    vmax: np.ndarray = field(repr=False)
    evaluations: int = 0

    def same_as(self, other: 'RunResult') -> bool:
        """Bit-identical comparison"""
        return (self.best_value == other.best_value
                and self.history == other.history
                and self.evaluations == other.evaluations
                and np.array_equal(self.best_position, other.best_position)
                and np.array_equal(self.vmax, other.vmax))


def make_rng(seed: int) -> np.random.Generator:
    """One seeded PCG64 stream per run"""
    return np.random.default_rng(int(seed))


def open_unit(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniform draws on the open interval (0, 1); exact zeros are redrawn"""
    r = rng.random(size)
    while not r.all():
        zeros = r == 0.0
        r[zeros] = rng.random(int(zeros.sum()))
    return r


def compute_vmax(space: SearchSpace, beta: float) -> np.ndarray:
    """Vmax = beta * (upper - lower); computed once per run"""
    beta = float(beta)
    if not (math.isfinite(beta) and BETA_MIN <= beta <= BETA_MAX):
        raise ErrorFactory.invalid_beta(beta)
    vmax = beta * space.span
    vmax.setflags(write=False)
    return vmax


def clamp_velocity(v: np.ndarray, vmax: np.ndarray) -> np.ndarray:
    """Component-wise clamp of v into [-vmax, vmax]"""
    v = np.asarray(v, dtype=float)
    vmax = np.asarray(vmax, dtype=float)
    if v.shape != vmax.shape:
        raise ErrorFactory.length_mismatch("clamp_velocity", v.size, vmax.size)
    return np.minimum(vmax, np.maximum(-vmax, v))


def init_swarm(space: SearchSpace, config: PsoConfig, params: ParameterSet,
               rng: np.random.Generator, objective: Objective) -> SwarmState:
    """Random positions in D and velocities in [-vmax, vmax]; bests from the first evaluations"""
    vmax = compute_vmax(space, params.beta)
    particles: List[ParticleState] = []
    best_position: Optional[np.ndarray] = None
    best_value = math.inf

    for _ in range(config.n_particles):
        position = rng.uniform(space.lower, space.upper)
        velocity = rng.uniform(-vmax, vmax)
        value = float(objective(position))
        particles.append(ParticleState(position, velocity, position.copy(), value))
        if best_position is None or value < best_value:
            best_value = value
            best_position = position.copy()

    return SwarmState(particles, best_position, best_value, vmax, 0)


def update_particle(p: ParticleState, g: np.ndarray, params: ParameterSet, vmax: np.ndarray,
                    space: SearchSpace, rng: np.random.Generator, objective: Objective,
                    clamp_position: bool = True) -> Tuple[ParticleState, float]:
    """
    One move of one particle.

    V <- V*omega + alpha1*(P - X)*R1 + alpha2*(G - X)*R2, clamped to vmax,
    then X <- X + V (clamped into the box unless disabled). Returns the new
    state and the objective value at the new position.
    """
    dim = space.dim
    if p.position.size != dim or g.size != dim or vmax.size != dim:
        raise ErrorFactory.length_mismatch("update_particle", p.position.size, dim)

    r1 = open_unit(rng, dim)
    r2 = open_unit(rng, dim)
    velocity = (p.velocity * params.omega
                + params.alpha1 * (p.best_position - p.position) * r1
                + params.alpha2 * (g - p.position) * r2)
    velocity = clamp_velocity(velocity, vmax)
    position = p.position + velocity
    if clamp_position:
        position = np.clip(position, space.lower, space.upper)

    if not (np.all(np.isfinite(velocity)) and np.all(np.isfinite(position))):
        raise NumericalFaultError("non-finite velocity or position in particle update",
                                  context={'params': params.format()})

    value = float(objective(position))
    if value < p.best_value:
        return ParticleState(position, velocity, position.copy(), value), value
    return ParticleState(position, velocity, p.best_position, p.best_value), value


def run_pso(objective: Objective, space: SearchSpace, config: PsoConfig,
            params: ParameterSet) -> RunResult:
    """
    Run exactly config.n_iterations synchronous iterations.

    The global best is refreshed right after each particle's evaluation.
    History holds the global best after initialization and after every
    iteration, so it has n_iterations + 1 entries.
    """
    rng = make_rng(config.seed)
    swarm = init_swarm(space, config, params, rng, objective)
    vmax = swarm.vmax
    history = [swarm.global_best_value]
    evaluations = config.n_particles

    for iteration in range(1, config.n_iterations + 1):
        for i, particle in enumerate(swarm.particles):
            updated, _ = update_particle(particle, swarm.global_best_position, params, vmax,
                                         space, rng, objective, config.clamp_position)
            swarm.particles[i] = updated
            evaluations += 1
            if updated.best_value < swarm.global_best_value:
                swarm.global_best_value = updated.best_value
                swarm.global_best_position = updated.best_position.copy()
        swarm.iteration = iteration
        history.append(swarm.global_best_value)

    logger.debug("PSO run seed=%d params=%s best=%s", config.seed, params.format(),
                 swarm.global_best_value)

    return RunResult(
        best_position=swarm.global_best_position,
        best_value=swarm.global_best_value,
        history=tuple(history),
        vmax=vmax,
        evaluations=evaluations,
    )


def parse_parameter_values(values: Iterable[str]) -> ParameterSet:
    """Build a ParameterSet from four numeric strings"""
    values = [v.strip() for v in values]
    if len(values) != 4:
        raise ConfigurationError(
            f"Expected four parameter values a1,a2,w,b, got {len(values)}",
            context={"values": values}
        )
    try:
        genes = [float(v) for v in values]
    except ValueError:
        raise ConfigurationError(f"Parameter values must be numbers: {','.join(values)}")
    return ParameterSet(*genes)
