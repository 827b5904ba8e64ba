"""
Command-line interface for PSO-JobShop
"""

import click
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from core.config_loader import ConfigLoader, SolverSettings
from core.error_handler import (
    ConfigurationError, ContractViolation, JobShopError, EXIT_OK, EXIT_RUNTIME, EXIT_USAGE
)
from core.jobshop import lower_bound, upper_bound, validate_schedule
from core.orlib import InstanceRecord, find_record, load_file, load_suite
from core.pso import MAX_SEED, PsoConfig
from features.benchmark import best_schedule, resolve_params, run_benchmark, solve_once
from features.meta_ga import GaConfig, GeneBounds, run_meta
from features.reports import REPORT_FORMATS, meta_to_dict, render_meta, render_report, render_table, write_report

__version__ = '1.0.0'

SEED_TYPE = click.IntRange(0, MAX_SEED)

QUICK_GA = {'population': 10, 'generations': 10, 'k_runs': 3, 'training': ('LA02',)}

logger = logging.getLogger(__name__)


class JobShopGroup(click.Group):
    """Maps errors to exit codes: 1 usage/config, 2 parse, 3 runtime fault"""

    def main(self, *args, standalone_mode: bool = True, **kwargs):
        try:
            rv = super().main(*args, standalone_mode=False, **kwargs)
        except JobShopError as e:
            click.echo(e.format_terminal(verbose=logger.isEnabledFor(logging.DEBUG)), err=True)
            rv = e.exit_code
        except click.exceptions.Abort:
            click.echo("Aborted!", err=True)
            rv = EXIT_USAGE
        except click.ClickException as e:
            e.show()
            rv = EXIT_USAGE
        except Exception as e:
            click.echo(f"❌ Unexpected error: {e}", err=True)
            if logger.isEnabledFor(logging.DEBUG):
                import traceback
                traceback.print_exc()
            rv = EXIT_RUNTIME
        if not standalone_mode:
            return rv
        sys.exit(rv if isinstance(rv, int) else EXIT_OK)


def configure_logging(level: str, debug: bool, verbose: bool):
    if debug:
        level = 'DEBUG'
    elif verbose and level not in ('DEBUG',):
        level = 'INFO'
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _pso_config(settings: SolverSettings, particles: Optional[int], iterations: Optional[int],
                seed: int = 0) -> PsoConfig:
    for flag, value in (('--particles', particles), ('--iterations', iterations)):
        if value is not None and value < 1:
            raise ConfigurationError(f"{flag} must be >= 1, got {value}")
    return PsoConfig(
        n_particles=particles if particles is not None else settings.particles,
        n_iterations=iterations if iterations is not None else settings.iterations,
        seed=seed,
        clamp_position=settings.clamp_position,
    )


def _pick_record(path: str, instance: Optional[str]) -> InstanceRecord:
    records = load_file(path)
    if instance:
        record = find_record(records, instance)
        if record is None:
            raise ConfigurationError(
                f"Instance '{instance}' not found in {path}",
                suggestion=f"Available: {', '.join(r.name for r in records)}"
            )
        return record
    if len(records) != 1:
        raise ConfigurationError(
            f"{path} holds {len(records)} instances; choose one with --instance",
            suggestion=f"Available: {', '.join(r.name for r in records[:10])}"
        )
    return records[0]


def _select(records: List[InstanceRecord], names: Sequence[str]) -> List[InstanceRecord]:
    if not names:
        return records
    selected = []
    for name in names:
        record = find_record(records, name)
        if record is None:
            raise ConfigurationError(f"Instance '{name}' not found in suite")
        selected.append(record)
    return sorted(selected, key=lambda r: r.name)


@click.group(cls=JobShopGroup)
@click.version_option(version=__version__)
@click.option('--config', '-c', help='Configuration file (default: jobshop_config.yml if present)')
@click.option('--debug', is_flag=True, help='Enable debug output (per-run seeds, GA progress)')
@click.option('--verbose', '-v', is_flag=True, help='Show progress messages')
@click.pass_context
def cli(ctx, config, debug, verbose):
    """PSO-JobShop: velocity-restricted PSO for job-shop scheduling"""
    settings = ConfigLoader(config).load_config()
    configure_logging(settings.log_level, debug, verbose)
    ctx.obj = settings


@cli.command()
@click.argument('instance_path')
@click.option('--instance', '-n', help='Instance name inside a multi-instance file')
@click.option('--params', '-p', 'params_spec', default='kennedy', show_default=True,
              help='Parameter set: kennedy, pedersen, apso or a1,a2,w,b')
@click.option('--seed', '-s', type=SEED_TYPE, default=None, help='Run seed (default: bench base seed)')
@click.option('--particles', type=int, default=None, help='Swarm size (default 50)')
@click.option('--iterations', type=int, default=None, help='PSO iterations (default 100)')
@click.pass_obj
def solve(settings, instance_path, instance, params_spec, seed, particles, iterations):
    """Solve one instance and print the best schedule"""
    record = _pick_record(instance_path, instance)
    label, params = resolve_params(params_spec)
    # Without --seed a solve reproduces run 0 of the benchmark
    seed = settings.bench_base_seed if seed is None else seed
    pso = _pso_config(settings, particles, iterations, seed)

    outcome = solve_once(record.instance, params, pso)
    schedule = best_schedule(record.instance, outcome)
    # Decoder output is feasible by construction; a violation here is a bug
    violations = validate_schedule(schedule, record.instance)
    if violations:
        raise ContractViolation(
            f"Decoded schedule is infeasible ({len(violations)} violation(s))",
            context={'first': str(violations[0])}
        )

    inst = record.instance
    click.echo(f"Instance: {record.name} ({inst.n_jobs} jobs x {inst.n_machines} machines)")
    click.echo(f"Parameters: {label} = {params.format()}")
    click.echo(f"Seed: {seed}")
    click.echo(f"Makespan: {schedule.makespan}")
    if record.best_known is not None:
        gap = 100.0 * (schedule.makespan - record.best_known) / record.best_known
        click.echo(f"Best-known: {record.best_known} (gap {gap:.2f}%)")
    click.echo(f"Time: {outcome.elapsed_ms:.1f} ms")
    click.echo("\nMachine sequences (job/op@start-end):")
    for machine, ops in schedule.machine_sequences().items():
        cells = " ".join(f"j{op.job}/{op.index}@{op.start}-{op.end}" for op in ops)
        click.echo(f"  M{machine}: {cells}")


@cli.command()
@click.argument('suite_path', required=False)
@click.option('--params', '-p', 'params_specs', multiple=True,
              help='Parameter set label or a1,a2,w,b (repeatable; default kennedy, pedersen, apso)')
@click.option('--instances', '-i', multiple=True, help='Restrict to these instance names (repeatable)')
@click.option('--runs', '-r', type=int, default=None, help='Runs per instance and parameter set (default 100)')
@click.option('--quick', is_flag=True, help='Desk-scale preset: 20 runs')
@click.option('--seed', '-s', type=SEED_TYPE, default=None, help='Base seed; run r uses seed + r')
@click.option('--jobs', '-j', type=int, default=None, help='Worker processes')
@click.option('--format', '-f', 'fmt', type=click.Choice(REPORT_FORMATS), default=None, help='Report format')
@click.option('--out', '-o', type=click.Path(dir_okay=False), help='Write the report (and raw runs) here')
@click.option('--particles', type=int, default=None, help='Swarm size (default 50)')
@click.option('--iterations', type=int, default=None, help='PSO iterations (default 100)')
@click.option('--timing/--no-timing', default=None, help='Record wall-clock time per run')
@click.pass_obj
def bench(settings, suite_path, params_specs, instances, runs, quick, seed, jobs, fmt, out,
          particles, iterations, timing):
    """Run the benchmark protocol over a suite"""
    records = _select(load_suite(suite_path or settings.suite_dir), instances)
    if not records:
        raise ConfigurationError(f"No instances found in {suite_path or settings.suite_dir}")

    params = dict(resolve_params(spec) for spec in (params_specs or settings.bench_params))
    # Explicit --runs wins over --quick
    if runs is None:
        runs = settings.bench_quick_runs if quick else settings.bench_runs
    fmt = fmt or settings.bench_format

    report = run_benchmark(
        records, params,
        n_runs=runs,
        base_seed=settings.bench_base_seed if seed is None else seed,
        pso=_pso_config(settings, particles, iterations),
        workers=jobs or settings.bench_workers,
        timing=settings.bench_timing if timing is None else timing,
    )

    # Table on the console, chosen format on disk
    if out:
        written = write_report(report, fmt, Path(out))
        click.echo(render_table(report))
        click.echo(f"✅ Report written to {written[0]} (raw runs: {written[1]})")
    else:
        click.echo(render_report(report, fmt), nl=False)


@cli.command()
@click.argument('suite_path', required=False)
@click.option('--population', type=int, default=None, help='Chromosomes per generation (even; default 50)')
@click.option('--generations', type=int, default=None, help='GA generations (default 100)')
@click.option('--k', 'k_runs', type=int, default=None, help='PSO runs averaged per fitness (default 10)')
@click.option('--mutation', type=float, default=None, help='Per-gene mutation probability (default 0.10)')
@click.option('--train', '-t', multiple=True, help='Training instance name (repeatable; default LA02 LA18 LA20)')
@click.option('--seed', '-s', type=SEED_TYPE, default=0, show_default=True, help='GA seed')
@click.option('--particles', type=int, default=None, help='Swarm size (default 50)')
@click.option('--iterations', type=int, default=None, help='PSO iterations (default 100)')
@click.option('--jobs', '-j', type=int, default=None, help='Worker processes for fitness evaluation')
@click.option('--quick', is_flag=True, help='Desk-scale preset: 10 chromosomes, 10 generations, k=3, LA02')
@click.option('--kennedy-seed/--no-kennedy-seed', default=None, help='Inject the Kennedy set into the first population')
@click.option('--format', '-f', 'fmt', type=click.Choice(['table', 'json']), default='table', help='Console format')
@click.option('--out', '-o', type=click.Path(dir_okay=False), help='Write the tuning report (JSON) here')
@click.pass_obj
def tune(settings, suite_path, population, generations, k_runs, mutation, train, seed,
         particles, iterations, jobs, quick, kennedy_seed, fmt, out):
    """Tune PSO parameters with the genetic meta-optimizer"""
    # Explicit sizing flags win over the preset
    preset = QUICK_GA if quick else {
        'population': settings.ga_population,
        'generations': settings.ga_generations,
        'k_runs': settings.ga_k_runs,
        'training': tuple(settings.ga_training),
    }
    ga = GaConfig(
        population_size=population if population is not None else preset['population'],
        n_generations=generations if generations is not None else preset['generations'],
        k_runs=k_runs if k_runs is not None else preset['k_runs'],
        mutation_prob=mutation if mutation is not None else settings.ga_mutation_prob,
        seed=seed,
        training_instances=tuple(train) or preset['training'],
        seed_with_kennedy=settings.ga_seed_with_kennedy if kennedy_seed is None else kennedy_seed,
        workers=jobs or settings.ga_workers,
        bounds=GeneBounds.with_overrides(settings.ga_bounds),
    )
    pso = _pso_config(settings, particles, iterations)

    # Training names are resolved against the suite inside run_meta
    suite = load_suite(suite_path or settings.suite_dir)
    result = run_meta(ga, pso, suite)

    click.echo(render_meta(result, fmt, ga.training_instances), nl=False)
    if out:
        out_path = Path(out)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_text(json.dumps(meta_to_dict(result, ga.training_instances), indent=2) + "\n")
        click.echo(f"✅ Tuning report written to {out_path}")


@cli.command()
@click.argument('instance_path')
@click.option('--instance', '-n', help='Instance name inside a multi-instance file')
@click.pass_obj
def inspect(settings, instance_path, instance):
    """Print an instance summary"""
    record = _pick_record(instance_path, instance)
    inst = record.instance
    jobs_bound = max(inst.job_durations())
    machines_bound = max(inst.machine_loads())

    click.echo(f"📋 {record.name}: {inst.n_jobs} jobs × {inst.n_machines} machines")
    click.echo(f"   Lower bound: {lower_bound(inst)} (job chain {jobs_bound}, machine load {machines_bound})")
    click.echo(f"   Upper bound: {upper_bound(inst)}")
    if record.best_known is not None:
        click.echo(f"   Best-known: {record.best_known}")
    click.echo("   Routes (machine:duration):")
    for job, route in enumerate(inst.routes):
        click.echo(f"     J{job}: " + " ".join(f"{op.machine}:{op.duration}" for op in route))


if __name__ == '__main__':
    cli()
