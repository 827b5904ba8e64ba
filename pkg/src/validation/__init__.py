"""
Schedule validation for PSO-JobShop
"""

from .types import Violation, ViolationKind
from .validator import ScheduleValidator
from .rules import ScheduleRule, CoverageRule, PrecedenceRule, MachineOverlapRule

__all__ = [
    'ScheduleValidator',
    'Violation',
    'ViolationKind',
    'ScheduleRule',
    'CoverageRule',
    'PrecedenceRule',
    'MachineOverlapRule'
]
