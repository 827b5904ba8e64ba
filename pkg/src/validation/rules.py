"""
Schedule validation rules

Each rule checks one constraint family of the disjunctive job-shop model.
"""

from abc import ABC, abstractmethod
from collections import Counter
from itertools import combinations
from typing import Dict, List, Tuple

from core.jobshop import JsspInstance, Schedule, ScheduledOperation
from .types import Violation, ViolationKind


class ScheduleRule(ABC):
    """Base class for schedule rules"""

    @abstractmethod
    def validate(self, schedule: Schedule, inst: JsspInstance) -> List[Violation]:
        """Return every violation this rule finds"""
        pass


def _placed(schedule: Schedule, inst: JsspInstance) -> Dict[Tuple[int, int], ScheduledOperation]:
    """Operations that belong to the instance, first placement wins"""
    placed: Dict[Tuple[int, int], ScheduledOperation] = {}
    for op in schedule.operations:
        if 0 <= op.job < inst.n_jobs and 0 <= op.index < inst.n_machines:
            placed.setdefault((op.job, op.index), op)
    return placed


class CoverageRule(ScheduleRule):
    """Every operation scheduled exactly once, on its routed machine with its duration"""

    def validate(self, schedule: Schedule, inst: JsspInstance) -> List[Violation]:
        violations = []
        counts = Counter((op.job, op.index) for op in schedule.operations)

        for job in range(inst.n_jobs):
            for index in range(inst.n_machines):
                if counts[(job, index)] == 0:
                    violations.append(Violation(
                        ViolationKind.COVERAGE, "operation missing from schedule", ((job, index),)
                    ))
                elif counts[(job, index)] > 1:
                    violations.append(Violation(
                        ViolationKind.COVERAGE,
                        f"operation scheduled {counts[(job, index)]} times", ((job, index),)
                    ))

        for op in schedule.operations:
            ref = (op.job, op.index)
            if not (0 <= op.job < inst.n_jobs and 0 <= op.index < inst.n_machines):
                violations.append(Violation(
                    ViolationKind.COVERAGE, "operation not in instance", (ref,)
                ))
                continue
            machine, duration = inst.routes[op.job][op.index]
            if op.machine != machine or op.duration != duration:
                violations.append(Violation(
                    ViolationKind.COVERAGE,
                    f"expected machine {machine} duration {duration}, "
                    f"found machine {op.machine} duration {op.duration}",
                    (ref,), machine=op.machine
                ))
            if op.start < 0:
                violations.append(Violation(
                    ViolationKind.COVERAGE, f"negative start time {op.start}", (ref,)
                ))

        return violations


class PrecedenceRule(ScheduleRule):
    """start[j, k+1] >= start[j, k] + duration[j, k]"""

    def validate(self, schedule: Schedule, inst: JsspInstance) -> List[Violation]:
        violations = []
        placed = _placed(schedule, inst)

        for job, route in enumerate(inst.routes):
            for index in range(len(route) - 1):
                before = placed.get((job, index))
                after = placed.get((job, index + 1))
                if before is None or after is None:
                    continue
                ready = before.start + route[index].duration
                if after.start < ready:
                    violations.append(Violation(
                        ViolationKind.PRECEDENCE,
                        f"starts at {after.start} before predecessor ends at {ready}",
                        ((job, index), (job, index + 1))
                    ))

        return violations


class MachineOverlapRule(ScheduleRule):
    """No two operations on one machine share time: [start, start + duration) disjoint"""

    def validate(self, schedule: Schedule, inst: JsspInstance) -> List[Violation]:
        violations = []
        by_machine: Dict[int, List[ScheduledOperation]] = {}
        for (job, index), op in _placed(schedule, inst).items():
            machine, duration = inst.routes[job][index]
            by_machine.setdefault(machine, []).append(op._replace(machine=machine, duration=duration))

        for machine in sorted(by_machine):
            ops = sorted(by_machine[machine], key=lambda o: (o.job, o.index))
            for a, b in combinations(ops, 2):
                if a.start < b.end and b.start < a.end:
                    violations.append(Violation(
                        ViolationKind.MACHINE_OVERLAP,
                        f"[{a.start}, {a.end}) overlaps [{b.start}, {b.end}) on machine {machine}",
                        ((a.job, a.index), (b.job, b.index)), machine=machine
                    ))

        return violations
