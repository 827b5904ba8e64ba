"""
Report rendering for benchmark and tuning results

Formats: a console table (instance, one column per parameter set,
best-known), CSV and JSON. Raw per-run makespans are written next to every
summary so the statistics can be audited.
"""

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from jinja2 import Environment

from core.error_handler import ConfigurationError
from features.benchmark import BenchmarkReport
from features.meta_ga import MetaResult

CSV_COLUMNS = ['instance', 'label', 'n_runs', 'best', 'avg', 'stddev', 'best_known',
               'abs_dev', 'pct_dev', 'avg_ms_per_run']

REPORT_FORMATS = ('table', 'csv', 'json')

_env = Environment(trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True)

BENCHMARK_TABLE = _env.from_string("""\
Makespan in time units; {{ n_runs }} run(s) per cell, {{ particles }} particles, {{ iterations }} iterations, base seed {{ base_seed }}
{% for block in blocks %}

{{ block.title }}
{{ header }}
{{ rule }}
{% for line in block.lines %}
{{ line }}
{% endfor %}
{% endfor %}

Total deviation of averages from best-known:
{% for label, total in totals %}
  {{ "%-12s"|format(label) }} {{ "%10.2f"|format(total) }}
{% endfor %}
""")

META_TABLE = _env.from_string("""\
Best parameters: alpha1={{ "%.6g"|format(params.alpha1) }} alpha2={{ "%.6g"|format(params.alpha2) }} \
omega={{ "%.6g"|format(params.omega) }} beta={{ "%.6g"|format(params.beta) }}
Best fitness: {{ "%.4f"|format(fitness) }}
PSO runs: {{ evaluations }}

generation  best-known  generation-best
{% for g, known, gen in history %}
{{ "%10d"|format(g) }}  {{ "%10.4f"|format(known) }}  {{ "%15.4f"|format(gen) }}
{% endfor %}
""")


def _fmt(value: Optional[float], digits: int = 2) -> str:
    if value is None:
        return ""
    return f"{value:.{digits}f}"


def render_table(report: BenchmarkReport) -> str:
    """Two blocks, averages then bests, columns instance / labels / best-known"""
    width = max([12] + [len(label) + 2 for label in report.labels])
    header = "instance  " + "".join(f"{label:>{width}}" for label in report.labels) + f"{'best-known':>{width}}"

    def block(title: str, value) -> Dict[str, Any]:
        lines = []
        for name in report.instances:
            cells = [report.row(name, label) for label in report.labels]
            known = cells[0].best_known if cells else None
            lines.append(f"{name:<10}" + "".join(f"{value(c):>{width}}" for c in cells)
                         + f"{(str(known) if known is not None else '-'):>{width}}")
        return {'title': title, 'lines': lines}

    return BENCHMARK_TABLE.render(
        n_runs=report.rows[0].n_runs if report.rows else 0,
        particles=report.pso.n_particles,
        iterations=report.pso.n_iterations,
        base_seed=report.base_seed,
        header=header,
        rule="-" * len(header),
        blocks=[block("Average makespan", lambda c: _fmt(c.avg)),
                block("Best makespan", lambda c: str(c.best))],
        totals=list(report.totals.items()),
    )


def render_csv(report: BenchmarkReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in report.rows:
        writer.writerow([
            r.instance, r.label, r.n_runs, r.best, _fmt(r.avg, 4), _fmt(r.stddev, 4),
            "" if r.best_known is None else r.best_known,
            _fmt(r.abs_dev, 4), _fmt(r.pct_dev, 4), _fmt(r.avg_ms_per_run, 3),
        ])
    return buffer.getvalue()


def report_to_dict(report: BenchmarkReport) -> Dict[str, Any]:
    return {
        'base_seed': report.base_seed,
        'particles': report.pso.n_particles,
        'iterations': report.pso.n_iterations,
        'params': {label: list(p.as_genes()) for label, p in report.params.items()},
        'rows': [{column: getattr(r, column) for column in CSV_COLUMNS} for r in report.rows],
        'totals': report.totals,
    }


def render_json(report: BenchmarkReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def raw_runs(report: BenchmarkReport) -> Dict[str, Any]:
    """Per-run makespans, timings and seeds for every row"""
    return {
        'base_seed': report.base_seed,
        'runs': [{
            'instance': r.instance,
            'label': r.label,
            'best_known': r.best_known,
            'seeds': r.seeds,
            'makespans': r.makespans,
            'elapsed_ms': r.elapsed_ms,
        } for r in report.rows],
    }


def render_report(report: BenchmarkReport, fmt: str) -> str:
    if fmt == 'table':
        return render_table(report)
    if fmt == 'csv':
        return render_csv(report)
    if fmt == 'json':
        return render_json(report)
    raise ConfigurationError(f"Unknown report format '{fmt}'",
                             suggestion=f"Use one of: {', '.join(REPORT_FORMATS)}")


def raw_runs_path(out: Path) -> Path:
    """bench.csv -> bench.runs.json"""
    return out.with_name(out.stem + ".runs.json")


def write_report(report: BenchmarkReport, fmt: str, out: Path) -> List[Path]:
    """Write the summary and the raw per-run file; returns both paths"""
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(render_report(report, fmt))
    raw_path = raw_runs_path(out)
    raw_path.write_text(json.dumps(raw_runs(report), indent=2) + "\n")
    return [out, raw_path]


def meta_to_dict(result: MetaResult, training: Sequence[str]) -> Dict[str, Any]:
    return {
        'best_params': dict(zip(('alpha1', 'alpha2', 'omega', 'beta'), result.best_params.as_genes())),
        'best_fitness': result.best_fitness,
        'history': list(result.history),
        'generation_best': list(result.generation_best),
        'evaluations': result.evaluations,
        'training': list(training),
    }


def render_meta(result: MetaResult, fmt: str = 'table', training: Sequence[str] = ()) -> str:
    if fmt == 'json':
        return json.dumps(meta_to_dict(result, training), indent=2) + "\n"
    history = [(g, known, gen) for g, (known, gen)
               in enumerate(zip(result.history, result.generation_best))]
    return META_TABLE.render(params=result.best_params, fitness=result.best_fitness,
                             evaluations=result.evaluations, history=history)
