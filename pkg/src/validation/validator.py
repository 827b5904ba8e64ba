"""
Schedule validator
"""

from typing import List, Optional

from core.jobshop import JsspInstance, Schedule
from .rules import CoverageRule, MachineOverlapRule, PrecedenceRule, ScheduleRule
from .types import Violation


class ScheduleValidator:
    """
    Runs all schedule rules; an empty result means the schedule is feasible
    """

    def __init__(self, rules: Optional[List[ScheduleRule]] = None):
        self.rules = rules if rules is not None else [
            CoverageRule(),
            PrecedenceRule(),
            MachineOverlapRule(),
        ]

    def validate(self, schedule: Schedule, inst: JsspInstance) -> List[Violation]:
        violations: List[Violation] = []
        for rule in self.rules:
            violations.extend(rule.validate(schedule, inst))
        return violations

    def is_feasible(self, schedule: Schedule, inst: JsspInstance) -> bool:
        return not self.validate(schedule, inst)
