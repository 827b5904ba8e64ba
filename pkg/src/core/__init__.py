"""Core components for PSO-JobShop"""

from core.pso import ParameterSet, PsoConfig, SearchSpace, run_pso
from core.jobshop import JsspInstance, Schedule, decode_position, jssp_objective
from core.orlib import InstanceRecord, load_suite, parse_instance

__all__ = [
    'ParameterSet',
    'PsoConfig',
    'SearchSpace',
    'run_pso',
    'JsspInstance',
    'Schedule',
    'decode_position',
    'jssp_objective',
    'InstanceRecord',
    'load_suite',
    'parse_instance'
]
