"""
Validation types for schedules
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple


class ViolationKind(Enum):
    """Which constraint family a violation belongs to"""
    PRECEDENCE = "precedence"
    MACHINE_OVERLAP = "machine_overlap"
    COVERAGE = "coverage"


# (job, operation index)
OperationRef = Tuple[int, int]


@dataclass(frozen=True)
class Violation:
    """One broken constraint with the operations involved"""
    kind: ViolationKind
    message: str
    operations: Tuple[OperationRef, ...] = field(default_factory=tuple)
    machine: Optional[int] = None

    def __str__(self):
        ops = ", ".join(f"j{j}o{k}" for j, k in self.operations)
        location = f" [{ops}]" if ops else ""
        return f"{self.kind.value}: {self.message}{location}"
