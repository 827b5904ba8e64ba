"""Feature modules for PSO-JobShop"""

from features.meta_ga import GaConfig, GeneBounds, MetaResult, run_meta
from features.benchmark import BenchmarkReport, run_benchmark

__all__ = [
    'GaConfig',
    'GeneBounds',
    'MetaResult',
    'run_meta',
    'BenchmarkReport',
    'run_benchmark'
]
