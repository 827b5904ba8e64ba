"""
Genetic-algorithm meta-optimizer for PSO behavioral parameters

Chromosomes are ParameterSets (genes alpha1, alpha2, omega, beta). The
fitness of a chromosome is the mean best makespan of k PSO runs on every
training instance; lower is better. Random streams are derived from
(seed, generation, chromosome index) so evaluation order never changes
the result.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.error_handler import ConfigurationError, ErrorFactory
from core.jobshop import JsspInstance, jssp_objective
from core.orlib import InstanceRecord, normalize_name
from core.pso import BETA_MAX, BETA_MIN, KENNEDY, MAX_SEED, ParameterSet, PsoConfig, run_pso

logger = logging.getLogger(__name__)

Interval = Tuple[float, float]

# spawn-key tags for the derived random streams
_STREAM_INIT = 0
_STREAM_EVAL = 1
_STREAM_BREED = 2


@dataclass(frozen=True)
class GeneBounds:
    """Closed interval per gene; beta stays inside [0.01, 1.0]"""
    alpha1: Interval = (-1.0, 5.0)
    alpha2: Interval = (-1.0, 5.0)
    omega: Interval = (-1.0, 1.0)
    beta: Interval = (BETA_MIN, BETA_MAX)

    def __post_init__(self):
        for name in ParameterSet.GENE_NAMES:
            lo, hi = (float(v) for v in getattr(self, name))
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ConfigurationError(f"Gene bound for {name} must be a non-degenerate interval, "
                                         f"got [{lo}, {hi}]")
            object.__setattr__(self, name, (lo, hi))
        lo, hi = self.beta
        if lo < BETA_MIN or hi > BETA_MAX:
            raise ConfigurationError(f"beta bounds [{lo}, {hi}] must lie inside "
                                     f"[{BETA_MIN}, {BETA_MAX}]")

    def intervals(self) -> List[Interval]:
        return [getattr(self, name) for name in ParameterSet.GENE_NAMES]

    def contains(self, params: ParameterSet) -> bool:
        return all(lo <= gene <= hi for gene, (lo, hi) in zip(params.as_genes(), self.intervals()))

    def sample(self, rng: np.random.Generator) -> ParameterSet:
        return ParameterSet.from_genes([rng.uniform(lo, hi) for lo, hi in self.intervals()])

    @classmethod
    def with_overrides(cls, overrides: Dict[str, Interval]) -> 'GeneBounds':
        unknown = set(overrides) - set(ParameterSet.GENE_NAMES)
        if unknown:
            raise ConfigurationError(f"Unknown gene(s) in bounds: {', '.join(sorted(unknown))}")
        return cls(**overrides)


@dataclass(frozen=True)
class GaConfig:
    """Meta-optimizer settings"""
    population_size: int = 50
    n_generations: int = 100
    k_runs: int = 10
    mutation_prob: float = 0.10
    seed: int = 0
    training_instances: Tuple[str, ...] = ("LA02", "LA18", "LA20")
    seed_with_kennedy: bool = True
    workers: int = 1
    bounds: GeneBounds = field(default_factory=GeneBounds)

    def __post_init__(self):
        if self.population_size < 2:
            raise ConfigurationError(f"Population size must be at least 2, got {self.population_size}")
        if self.population_size % 2:
            raise ErrorFactory.odd_population(self.population_size)
        if self.n_generations < 1:
            raise ConfigurationError(f"n_generations must be >= 1, got {self.n_generations}")
        if self.k_runs < 1:
            raise ConfigurationError(f"k_runs must be >= 1, got {self.k_runs}")
        if not 0.0 <= self.mutation_prob <= 1.0:
            raise ConfigurationError(f"mutation_prob must lie in [0, 1], got {self.mutation_prob}")
        if not 0 <= int(self.seed) <= MAX_SEED:
            raise ConfigurationError(f"GA seed must lie in [0, {MAX_SEED}], got {self.seed}")
        if not self.training_instances:
            raise ConfigurationError("At least one training instance is required")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be >= 1, got {self.workers}")
        object.__setattr__(self, 'training_instances', tuple(self.training_instances))

    @property
    def run_budget(self) -> int:
        """PSO runs performed by run_meta"""
        return self.population_size * self.n_generations * self.k_runs * len(self.training_instances)


@dataclass(frozen=True)
class MetaResult:
    """Best-known parameters after the last generation"""
    best_params: ParameterSet
    best_fitness: float
    history: Tuple[float, ...]
    evaluations: int
    generation_best: Tuple[float, ...] = ()


def _stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=tuple(key)))


def fitness(c: ParameterSet, training: Sequence[JsspInstance], k: int, pso: PsoConfig,
            rng: np.random.Generator) -> float:
    """Mean best makespan over k runs on each training instance"""
    if k < 1:
        raise ConfigurationError(f"k must be >= 1, got {k}")
    if not training:
        raise ConfigurationError("fitness needs at least one training instance")

    seeds = rng.integers(0, 2 ** 63 - 1, size=(len(training), k), dtype=np.int64)
    results = []
    for inst, inst_seeds in zip(training, seeds):
        objective, space = jssp_objective(inst)
        for seed in inst_seeds:
            results.append(run_pso(objective, space, pso.with_seed(int(seed)), c).best_value)
    return float(np.mean(results))


def select_parents(population: Sequence[Tuple[ParameterSet, float]], rng: np.random.Generator,
                   n_pairs: Optional[int] = None) -> List[Tuple[ParameterSet, ParameterSet]]:
    """Binary tournaments; lower fitness wins, ties go to the earlier index"""
    n = len(population)
    if n == 0:
        raise ConfigurationError("Cannot select parents from an empty population")
    if n_pairs is None:
        n_pairs = max(1, n // 2)

    def tournament() -> ParameterSet:
        i, j = (int(v) for v in rng.integers(0, n, size=2))
        fi, fj = population[i][1], population[j][1]
        return population[i][0] if (fi, i) <= (fj, j) else population[j][0]

    return [(tournament(), tournament()) for _ in range(n_pairs)]


def crossover_one_point(a: ParameterSet, b: ParameterSet, rng: np.random.Generator,
                        cut: Optional[int] = None) -> Tuple[ParameterSet, ParameterSet]:
    """Swap gene suffixes after a cut in {1, 2, 3}"""
    if cut is None:
        cut = int(rng.integers(1, 4))
    if not 1 <= cut <= 3:
        raise ConfigurationError(f"crossover cut must lie in 1..3, got {cut}")
    ga, gb = a.as_genes(), b.as_genes()
    return (ParameterSet.from_genes(ga[:cut] + gb[cut:]),
            ParameterSet.from_genes(gb[:cut] + ga[cut:]))


def mutate(c: ParameterSet, prob: float, bounds: GeneBounds, rng: np.random.Generator) -> ParameterSet:
    """Resample each gene uniformly inside its bounds with probability prob"""
    genes = list(c.as_genes())
    for i, (lo, hi) in enumerate(bounds.intervals()):
        if rng.random() < prob:
            genes[i] = rng.uniform(lo, hi)
    return ParameterSet.from_genes(genes)


def initial_population(ga: GaConfig) -> List[ParameterSet]:
    """Uniform over the gene box, with the Kennedy set as the first chromosome when enabled"""
    rng = _stream(ga.seed, _STREAM_INIT)
    population = [ga.bounds.sample(rng) for _ in range(ga.population_size)]
    if ga.seed_with_kennedy:
        if ga.bounds.contains(KENNEDY):
            population[0] = KENNEDY
        else:
            logger.warning("Kennedy set lies outside the gene bounds; not injected")
    return population


def _chromosome_fitness(task) -> float:
    params, training, k, pso, seed, generation, index = task
    return fitness(params, training, k, pso, _stream(seed, _STREAM_EVAL, generation, index))


def next_generation(population: Sequence[ParameterSet], fitnesses: Sequence[float],
                    ga: GaConfig, rng: np.random.Generator) -> List[ParameterSet]:
    """Selection, crossover and mutation; the generation's best survives unchanged"""
    scored = list(zip(population, fitnesses))
    elite_index = min(range(len(scored)), key=lambda i: (scored[i][1], i))
    children: List[ParameterSet] = []
    for a, b in select_parents(scored, rng, n_pairs=ga.population_size // 2):
        first, second = crossover_one_point(a, b, rng)
        children.append(mutate(first, ga.mutation_prob, ga.bounds, rng))
        children.append(mutate(second, ga.mutation_prob, ga.bounds, rng))
    children[0] = population[elite_index]
    return children


def resolve_training(names: Sequence[str], suite: Sequence[InstanceRecord]) -> List[JsspInstance]:
    by_name = {r.name: r.instance for r in suite}
    missing = [n for n in names if normalize_name(n) not in by_name]
    if missing:
        raise ErrorFactory.unresolved_training(missing, sorted(by_name))
    return [by_name[normalize_name(n)] for n in names]


def run_meta(ga: GaConfig, pso: PsoConfig, suite: Sequence[InstanceRecord]) -> MetaResult:
    """Evolve parameter sets; returns the best-known set after ga.n_generations"""
    training = resolve_training(ga.training_instances, suite)
    population = initial_population(ga)

    best_params: Optional[ParameterSet] = None
    best_fitness = math.inf
    history: List[float] = []
    generation_best: List[float] = []
    evaluations = 0

    logger.info("Tuning on %s: %d chromosomes x %d generations, k=%d",
                ", ".join(ga.training_instances), ga.population_size, ga.n_generations, ga.k_runs)

    # Evaluation seeds depend on (generation, index), never on the worker
    executor = ProcessPoolExecutor(max_workers=ga.workers) if ga.workers > 1 else None
    try:
        for generation in range(ga.n_generations):
            tasks = [(params, training, ga.k_runs, pso, ga.seed, generation, index)
                     for index, params in enumerate(population)]
            if executor is not None:
                fitnesses = list(executor.map(_chromosome_fitness, tasks))
            else:
                fitnesses = [_chromosome_fitness(task) for task in tasks]
            evaluations += len(population) * ga.k_runs * len(training)

            # Ties go to the lower index
            leader = min(range(len(fitnesses)), key=lambda i: (fitnesses[i], i))
            generation_best.append(fitnesses[leader])
            # Best-known only moves on strict improvement
            if fitnesses[leader] < best_fitness:
                best_fitness = fitnesses[leader]
                best_params = population[leader]
            history.append(best_fitness)

            logger.debug("generation %d: best %.4f (best-known %.4f, params %s)",
                         generation, fitnesses[leader], best_fitness, best_params.format())

            # No breeding after the last evaluated generation
            if generation + 1 < ga.n_generations:
                population = next_generation(population, fitnesses, ga,
                                             _stream(ga.seed, _STREAM_BREED, generation))
    finally:
        if executor is not None:
            executor.shutdown()

    logger.info("Tuning finished: fitness %.4f with %s after %d PSO runs",
                best_fitness, best_params.format(), evaluations)

    return MetaResult(best_params, best_fitness, tuple(history), evaluations, tuple(generation_best))
