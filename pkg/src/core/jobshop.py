"""
Job-shop scheduling model, random-key decoder and makespan objective

A point x of the unit cube [0,1]^(n*m) is decoded by sorting its coordinates
(ties broken by coordinate index) and mapping every sorted coordinate index i
to job i mod n. The k-th occurrence of job j stands for job j's k-th
operation. Operations are then dispatched in that order into a semi-active
schedule: each starts as soon as both its machine and its job are free.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple, TYPE_CHECKING

import numpy as np

from core.error_handler import ContractViolation, ErrorFactory, SizeGuardError
from core.pso import SearchSpace

if TYPE_CHECKING:
    from validation.types import Violation

# Exhaustive enumeration guard for brute_force_optimum
BRUTE_FORCE_MAX_OPERATIONS = 10


class Operation(NamedTuple):
    """One routing step: machine index and integer duration"""
    machine: int
    duration: int


@dataclass(frozen=True)
class JsspInstance:
    """n jobs, each visiting every one of m machines once in its own order"""
    routes: Tuple[Tuple[Operation, ...], ...]
    name: Optional[str] = None

    def __post_init__(self):
        routes = tuple(tuple(Operation(int(m), int(d)) for m, d in route) for route in self.routes)
        object.__setattr__(self, 'routes', routes)
        if not routes:
            raise ContractViolation("instance must have at least one job")
        n_machines = len(routes[0])
        if n_machines == 0:
            raise ContractViolation("instance must have at least one machine")
        for job, route in enumerate(routes):
            if len(route) != n_machines:
                raise ContractViolation(
                    f"job {job} has {len(route)} operations, expected {n_machines}")
            machines = sorted(op.machine for op in route)
            if machines != list(range(n_machines)):
                raise ContractViolation(
                    f"job {job} must visit each of machines 0..{n_machines - 1} exactly once")
            if any(op.duration < 0 for op in route):
                raise ContractViolation(f"job {job} has a negative duration")

    @property
    def n_jobs(self) -> int:
        return len(self.routes)

    @property
    def n_machines(self) -> int:
        return len(self.routes[0])

    @property
    def size(self) -> int:
        """Number of operations, n * m; also the search-space dimension"""
        return self.n_jobs * self.n_machines

    def job_durations(self) -> List[int]:
        return [sum(op.duration for op in route) for route in self.routes]

    def machine_loads(self) -> List[int]:
        loads = [0] * self.n_machines
        for route in self.routes:
            for op in route:
                loads[op.machine] += op.duration
        return loads

    @classmethod
    def from_lists(cls, routes: Sequence[Sequence[Tuple[int, int]]],
                   name: Optional[str] = None) -> 'JsspInstance':
        return cls(tuple(tuple(Operation(m, d) for m, d in route) for route in routes), name)


class ScheduledOperation(NamedTuple):
    """Operation (job, index) placed at start on machine"""
    job: int
    index: int
    machine: int
    start: int
    duration: int

    @property
    def end(self) -> int:
        return self.start + self.duration


@dataclass(frozen=True)
class Schedule:
    """Start time per operation; operations are kept in dispatch order"""
    operations: Tuple[ScheduledOperation, ...]
    sequence: Tuple[int, ...] = ()

    @property
    def start(self) -> Dict[Tuple[int, int], int]:
        return {(op.job, op.index): op.start for op in self.operations}

    @property
    def makespan(self) -> int:
        return makespan(self)

    def machine_sequences(self) -> Dict[int, List[ScheduledOperation]]:
        """Operations per machine ordered by start time"""
        by_machine: Dict[int, List[ScheduledOperation]] = {}
        for op in self.operations:
            by_machine.setdefault(op.machine, []).append(op)
        for ops in by_machine.values():
            ops.sort(key=lambda o: (o.start, o.job))
        return dict(sorted(by_machine.items()))

    @classmethod
    def from_starts(cls, inst: JsspInstance, starts: Dict[Tuple[int, int], int]) -> 'Schedule':
        """Hand-built schedule from explicit start times"""
        operations = []
        for (job, index), start in sorted(starts.items(), key=lambda item: (item[1], item[0])):
            if 0 <= job < inst.n_jobs and 0 <= index < inst.n_machines:
                machine, duration = inst.routes[job][index]
            else:
                # Kept with no machine so coverage validation can report it
                machine, duration = -1, 0
            operations.append(ScheduledOperation(job, index, machine, int(start), duration))
        return cls(tuple(operations))


def _check_sequence(sequence: Sequence[int], inst: JsspInstance) -> None:
    if len(sequence) != inst.size:
        raise ErrorFactory.length_mismatch("operation sequence", len(sequence), inst.size)
    counts = [0] * inst.n_jobs
    for job in sequence:
        if not 0 <= job < inst.n_jobs:
            raise ContractViolation(f"job {job} out of range in operation sequence")
        counts[job] += 1
    if any(c != inst.n_machines for c in counts):
        raise ContractViolation("every job must appear exactly n_machines times in the sequence")


def position_to_sequence(x: np.ndarray, inst: JsspInstance) -> List[int]:
    """Random-key ranking: stable argsort, then coordinate index mod n_jobs"""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != inst.size:
        raise ErrorFactory.length_mismatch("position vector", x.size, inst.size)
    order = np.argsort(x, kind='stable')
    return (order % inst.n_jobs).tolist()


def build_schedule(sequence: Sequence[int], inst: JsspInstance) -> Schedule:
    """Semi-active, append-only schedule for an operation sequence"""
    _check_sequence(sequence, inst)
    machine_free = [0] * inst.n_machines
    job_ready = [0] * inst.n_jobs
    next_index = [0] * inst.n_jobs
    operations = []

    for job in sequence:
        index = next_index[job]
        machine, duration = inst.routes[job][index]
        start = max(machine_free[machine], job_ready[job])
        end = start + duration
        machine_free[machine] = end
        job_ready[job] = end
        next_index[job] = index + 1
        operations.append(ScheduledOperation(job, index, machine, start, duration))

    return Schedule(tuple(operations), tuple(int(j) for j in sequence))


def sequence_makespan(sequence: Sequence[int], inst: JsspInstance) -> int:
    """Makespan of the semi-active schedule for sequence, without materializing it"""
    machine_free = [0] * inst.n_machines
    job_ready = [0] * inst.n_jobs
    next_index = [0] * inst.n_jobs
    routes = inst.routes

    for job in sequence:
        index = next_index[job]
        machine, duration = routes[job][index]
        ready = job_ready[job]
        free = machine_free[machine]
        end = (free if free > ready else ready) + duration
        machine_free[machine] = end
        job_ready[job] = end
        next_index[job] = index + 1

    return max(job_ready)


def decode_position(x: np.ndarray, inst: JsspInstance) -> Schedule:
    """Decode a point of [0,1]^(n*m) into a feasible semi-active schedule"""
    return build_schedule(position_to_sequence(x, inst), inst)


def makespan(s: Schedule) -> int:
    """Maximum completion time over all operations"""
    if not s.operations:
        return 0
    return max(op.end for op in s.operations)


def validate_schedule(s: Schedule, inst: JsspInstance) -> List['Violation']:
    """Every precedence, machine-overlap and coverage violation; empty when feasible"""
    from validation.validator import ScheduleValidator

    return ScheduleValidator().validate(s, inst)


def lower_bound(inst: JsspInstance) -> int:
    """max(longest job chain, heaviest machine load)"""
    return max(max(inst.job_durations()), max(inst.machine_loads()))


def upper_bound(inst: JsspInstance) -> int:
    """Sum of all durations, the fully serial schedule"""
    return sum(inst.job_durations())


class MakespanObjective:
    """x -> makespan(decode_position(x, inst)); picklable for worker pools"""

    def __init__(self, inst: JsspInstance):
        self.inst = inst

    def __call__(self, x: np.ndarray) -> float:
        return float(sequence_makespan(position_to_sequence(x, self.inst), self.inst))


def jssp_objective(inst: JsspInstance) -> Tuple[MakespanObjective, SearchSpace]:
    """Objective and unit-cube search space of dimension n_jobs * n_machines"""
    return MakespanObjective(inst), SearchSpace.unit_cube(inst.size)


def sequence_to_position(sequence: Sequence[int], inst: JsspInstance) -> np.ndarray:
    """
    A point of the unit cube whose decode yields sequence.

    The k-th occurrence of job j at sequence position p is stored at
    coordinate j + k * n_jobs with key (p + 0.5) / len(sequence).
    """
    _check_sequence(sequence, inst)
    n = inst.n_jobs
    total = len(sequence)
    x = np.empty(total)
    seen = [0] * n
    for p, job in enumerate(sequence):
        x[job + seen[job] * n] = (p + 0.5) / total
        seen[job] += 1
    return x


def enumerate_sequences(inst: JsspInstance) -> Iterator[Tuple[int, ...]]:
    """All distinct operation sequences (permutations with repetition)"""
    remaining = [inst.n_machines] * inst.n_jobs
    prefix: List[int] = []
    total = inst.size

    def extend() -> Iterator[Tuple[int, ...]]:
        if len(prefix) == total:
            yield tuple(prefix)
            return
        for job in range(inst.n_jobs):
            if remaining[job]:
                remaining[job] -= 1
                prefix.append(job)
                yield from extend()
                prefix.pop()
                remaining[job] += 1

    yield from extend()


def brute_force_optimum(inst: JsspInstance) -> int:
    """Exact minimum semi-active makespan by exhaustive enumeration"""
    if inst.size > BRUTE_FORCE_MAX_OPERATIONS:
        raise SizeGuardError(
            f"Instance has {inst.size} operations; exhaustive search is limited to "
            f"{BRUTE_FORCE_MAX_OPERATIONS}",
            context={'n_jobs': inst.n_jobs, 'n_machines': inst.n_machines}
        )
    return min(sequence_makespan(seq, inst) for seq in enumerate_sequences(inst))
