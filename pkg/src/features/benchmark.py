"""
Benchmark runner: repeated seeded PSO runs per (instance, parameter set)

Run r of every row uses seed base_seed + r, so any row can be re-run in
isolation and results do not depend on the number of workers.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.error_handler import ConfigurationError, ErrorFactory
from core.jobshop import JsspInstance, Schedule, decode_position, jssp_objective
from core.orlib import InstanceRecord
from core.pso import MAX_SEED, PARAMETER_LABELS, ParameterSet, PsoConfig, parse_parameter_values, run_pso

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolveOutcome:
    """One PSO run on one instance"""
    makespan: int
    elapsed_ms: float
    seed: int
    best_position: np.ndarray = field(repr=False, compare=False)
    evaluations: int = 0


def solve_once(inst: JsspInstance, params: ParameterSet, pso: PsoConfig,
               timing: bool = True) -> SolveOutcome:
    """Run PSO once with pso.seed; elapsed_ms is 0 when timing is off"""
    objective, space = jssp_objective(inst)
    started = time.perf_counter()
    result = run_pso(objective, space, pso, params)
    elapsed = (time.perf_counter() - started) * 1000.0 if timing else 0.0
    return SolveOutcome(int(result.best_value), elapsed, pso.seed, result.best_position,
                        result.evaluations)


def best_schedule(inst: JsspInstance, outcome: SolveOutcome) -> Schedule:
    return decode_position(outcome.best_position, inst)


def resolve_params(spec: str) -> Tuple[str, ParameterSet]:
    """'kennedy' | 'pedersen' | 'apso' | 'a1,a2,w,b' -> (label, ParameterSet)"""
    text = spec.strip()
    key = text.lower()
    if key in PARAMETER_LABELS:
        return key, PARAMETER_LABELS[key]
    if ',' in text:
        params = parse_parameter_values(text.split(','))
        return text, params
    raise ErrorFactory.unknown_label(text, list(PARAMETER_LABELS))


@dataclass
class BenchmarkRow:
    """Statistics of n_runs seeded runs of one parameter set on one instance"""
    instance: str
    label: str
    makespans: List[int]
    elapsed_ms: List[float]
    seeds: List[int]
    best_known: Optional[int] = None
    n_runs: int = 0
    best: int = 0
    avg: float = 0.0
    stddev: float = 0.0
    abs_dev: Optional[float] = None
    pct_dev: Optional[float] = None
    avg_ms_per_run: float = 0.0

    def __post_init__(self):
        self.recompute()

    def recompute(self) -> 'BenchmarkRow':
        """Derive every statistic from the raw per-run results"""
        if not self.makespans:
            raise ConfigurationError(f"Row {self.instance}/{self.label} has no runs")
        values = np.asarray(self.makespans, dtype=float)
        self.n_runs = len(self.makespans)
        self.best = int(min(self.makespans))
        self.avg = float(values.mean())
        self.stddev = float(values.std())
        self.avg_ms_per_run = float(np.mean(self.elapsed_ms)) if self.elapsed_ms else 0.0
        if self.best_known is not None:
            self.abs_dev = self.avg - self.best_known
            # Relative deviation is undefined against a zero makespan
            self.pct_dev = 100.0 * self.abs_dev / self.best_known if self.best_known else None
        else:
            self.abs_dev = None
            self.pct_dev = None
        return self


@dataclass
class BenchmarkReport:
    """Rows for the cross product of instances and parameter sets"""
    rows: List[BenchmarkRow]
    labels: List[str]
    instances: List[str]
    params: Dict[str, ParameterSet]
    base_seed: int
    pso: PsoConfig

    def row(self, instance: str, label: str) -> BenchmarkRow:
        for r in self.rows:
            if r.instance == instance and r.label == label:
                return r
        raise KeyError((instance, label))

    @property
    def totals(self) -> Dict[str, float]:
        """Per label: sum of (average - best-known) over rows with a best-known value"""
        totals = {label: 0.0 for label in self.labels}
        for r in self.rows:
            if r.abs_dev is not None:
                totals[r.label] += r.abs_dev
        return totals

    def recompute(self) -> 'BenchmarkReport':
        for r in self.rows:
            r.recompute()
        return self


def _run_task(task) -> SolveOutcome:
    inst, params, pso, timing = task
    return solve_once(inst, params, pso, timing)


def run_benchmark(records: Sequence[InstanceRecord], params: Dict[str, ParameterSet],
                  n_runs: int, base_seed: int, pso: PsoConfig, workers: int = 1,
                  timing: bool = True) -> BenchmarkReport:
    """n_runs seeded runs for every (instance, parameter set); rows ordered by instance then label"""
    if n_runs < 1:
        raise ConfigurationError(f"--runs must be >= 1, got {n_runs}")
    if workers < 1:
        raise ConfigurationError(f"--jobs must be >= 1, got {workers}")
    if not params:
        raise ConfigurationError("At least one parameter set is required")
    if base_seed < 0 or base_seed + n_runs - 1 > MAX_SEED:
        raise ConfigurationError(f"Seeds {base_seed}..{base_seed + n_runs - 1} fall outside [0, {MAX_SEED}]")

    labels = list(params)
    cells = [(record, label) for record in records for label in labels]
    tasks = [(record.instance, params[label], pso.with_seed(base_seed + run), timing)
             for record, label in cells for run in range(n_runs)]

    logger.info("Benchmark: %d instance(s) x %d parameter set(s) x %d run(s) on %d worker(s)",
                len(records), len(labels), n_runs, workers)

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            outcomes = list(executor.map(_run_task, tasks, chunksize=max(1, n_runs // 4)))
    else:
        outcomes = [_run_task(task) for task in tasks]

    rows = []
    for i, (record, label) in enumerate(cells):
        chunk = outcomes[i * n_runs:(i + 1) * n_runs]
        rows.append(BenchmarkRow(
            instance=record.name,
            label=label,
            makespans=[o.makespan for o in chunk],
            elapsed_ms=[o.elapsed_ms for o in chunk],
            seeds=[o.seed for o in chunk],
            best_known=record.best_known,
        ))
        logger.debug("%s/%s: best %d avg %.2f", record.name, label, rows[-1].best, rows[-1].avg)

    return BenchmarkReport(rows, labels, [r.name for r in records], dict(params), base_seed, pso)
