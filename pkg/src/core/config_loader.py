"""
Configuration loader for pso-jobshop
Loads and applies settings from jobshop_config.yml
"""

import logging
import yaml
import jsonschema
from pathlib import Path
from typing import Dict, Any, Optional, List, Tuple
from dataclasses import dataclass, field

from core.error_handler import ConfigurationError
from core.pso import MAX_SEED

logger = logging.getLogger(__name__)

CONFIG_FILENAME = "jobshop_config.yml"

_INTERVAL = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}

CONFIG_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "paths": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "suite_dir": {"type": "string"},
                "output_dir": {"type": "string"},
            },
        },
        "pso": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "particles": {"type": "integer", "minimum": 1},
                "iterations": {"type": "integer", "minimum": 1},
                "clamp_position": {"type": "boolean"},
            },
        },
        "ga": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "population": {"type": "integer", "minimum": 2},
                "generations": {"type": "integer", "minimum": 1},
                "k_runs": {"type": "integer", "minimum": 1},
                "mutation_prob": {"type": "number", "minimum": 0, "maximum": 1},
                "training": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                "seed_with_kennedy": {"type": "boolean"},
                "workers": {"type": "integer", "minimum": 1},
                "bounds": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "alpha1": _INTERVAL,
                        "alpha2": _INTERVAL,
                        "omega": _INTERVAL,
                        "beta": _INTERVAL,
                    },
                },
            },
        },
        "bench": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "runs": {"type": "integer", "minimum": 1},
                "quick_runs": {"type": "integer", "minimum": 1},
                "base_seed": {"type": "integer", "minimum": 0, "maximum": MAX_SEED},
                "workers": {"type": "integer", "minimum": 1},
                "format": {"enum": ["table", "csv", "json"]},
                "timing": {"type": "boolean"},
                "params": {"type": "array", "items": {"type": "string"}, "minItems": 1},
            },
        },
        "logging": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "level": {"enum": ["DEBUG", "INFO", "WARNING", "ERROR"]},
            },
        },
    },
}


@dataclass
class SolverSettings:
    """pso-jobshop configuration"""
    # Paths
    suite_dir: str = "data/orlib/"
    output_dir: str = "output/"

    # PSO
    particles: int = 50
    iterations: int = 100
    clamp_position: bool = True

    # Meta-optimizer
    ga_population: int = 50
    ga_generations: int = 100
    ga_k_runs: int = 10
    ga_mutation_prob: float = 0.10
    ga_training: List[str] = field(default_factory=lambda: ["LA02", "LA18", "LA20"])
    ga_seed_with_kennedy: bool = True
    ga_workers: int = 1
    ga_bounds: Dict[str, Tuple[float, float]] = field(default_factory=dict)

    # Benchmark
    bench_runs: int = 100
    bench_quick_runs: int = 20
    bench_base_seed: int = 1
    bench_workers: int = 1
    bench_format: str = "table"
    bench_timing: bool = True
    bench_params: List[str] = field(default_factory=lambda: ["kennedy", "pedersen", "apso"])

    # Logging
    log_level: str = "INFO"


class ConfigLoader:
    """Loads configuration from jobshop_config.yml"""

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path
        self.config = SolverSettings()

    def load_config(self, base_dir: str = ".") -> SolverSettings:
        """Load configuration from file or use defaults"""
        config_file = None
        if self.config_path:
            config_file = Path(self.config_path)
            if not config_file.exists():
                raise ConfigurationError(
                    f"Config file not found: {config_file}",
                    file_path=str(config_file),
                    suggestion="Pass an existing file to --config or omit it"
                )
        else:
            search_locations = [
                Path(base_dir) / CONFIG_FILENAME,
                Path(base_dir) / "config" / CONFIG_FILENAME,
                Path(CONFIG_FILENAME),
            ]
            for location in search_locations:
                if location.exists():
                    config_file = location
                    break

        if not config_file:
            return self.config

        try:
            with open(config_file, 'r') as f:
                config_data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Invalid YAML in {config_file}: {e}",
                                     file_path=str(config_file))

        self.apply(config_data, source=str(config_file))
        logger.debug("Loaded configuration from %s", config_file)
        return self.config

    def apply(self, config_data: Dict[str, Any], source: Optional[str] = None) -> SolverSettings:
        """Validate a raw mapping against the schema and apply it"""
        try:
            jsonschema.validate(config_data, CONFIG_SCHEMA)
        except jsonschema.ValidationError as e:
            key_path = ".".join(str(p) for p in e.absolute_path) or "(root)"
            raise ConfigurationError(
                f"Invalid configuration at '{key_path}': {e.message}",
                file_path=source,
                suggestion=f"See docs/configuration.md for the {CONFIG_FILENAME} reference",
                context={'key_path': key_path}
            )
        self._apply_config(config_data)
        return self.config

    def _apply_config(self, config_data: Dict[str, Any]):
        """Apply configuration data to config object"""
        if 'paths' in config_data:
            paths = config_data['paths']
            self.config.suite_dir = paths.get('suite_dir', self.config.suite_dir)
            self.config.output_dir = paths.get('output_dir', self.config.output_dir)

        if 'pso' in config_data:
            pso = config_data['pso']
            self.config.particles = pso.get('particles', self.config.particles)
            self.config.iterations = pso.get('iterations', self.config.iterations)
            self.config.clamp_position = pso.get('clamp_position', self.config.clamp_position)

        if 'ga' in config_data:
            ga = config_data['ga']
            self.config.ga_population = ga.get('population', self.config.ga_population)
            self.config.ga_generations = ga.get('generations', self.config.ga_generations)
            self.config.ga_k_runs = ga.get('k_runs', self.config.ga_k_runs)
            self.config.ga_mutation_prob = ga.get('mutation_prob', self.config.ga_mutation_prob)
            self.config.ga_training = ga.get('training', self.config.ga_training)
            self.config.ga_seed_with_kennedy = ga.get('seed_with_kennedy', self.config.ga_seed_with_kennedy)
            self.config.ga_workers = ga.get('workers', self.config.ga_workers)
            for gene, interval in ga.get('bounds', {}).items():
                self.config.ga_bounds[gene] = (float(interval[0]), float(interval[1]))

        if 'bench' in config_data:
            bench = config_data['bench']
            self.config.bench_runs = bench.get('runs', self.config.bench_runs)
            self.config.bench_quick_runs = bench.get('quick_runs', self.config.bench_quick_runs)
            self.config.bench_base_seed = bench.get('base_seed', self.config.bench_base_seed)
            self.config.bench_workers = bench.get('workers', self.config.bench_workers)
            self.config.bench_format = bench.get('format', self.config.bench_format)
            self.config.bench_timing = bench.get('timing', self.config.bench_timing)
            self.config.bench_params = bench.get('params', self.config.bench_params)

        if 'logging' in config_data:
            self.config.log_level = config_data['logging'].get('level', self.config.log_level)
