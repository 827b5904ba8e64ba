"""Tests for the benchmark runner"""

import pytest
import numpy as np

from core.error_handler import ConfigurationError
from core.jobshop import JsspInstance, validate_schedule
from core.orlib import InstanceRecord
from core.pso import APSO, KENNEDY, PEDERSEN, PsoConfig
from features.benchmark import (
    BenchmarkRow, best_schedule, resolve_params, run_benchmark, solve_once
)

SMALL_PSO = PsoConfig(n_particles=5, n_iterations=4)


def tiny_records():
    return [
        InstanceRecord("T1", JsspInstance.from_lists([[(0, 3), (1, 2)], [(1, 2), (0, 4)]]), best_known=7),
        InstanceRecord("T2", JsspInstance.from_lists([[(0, 2), (1, 1)], [(1, 3), (0, 2)], [(0, 1), (1, 4)]])),
    ]


class TestResolveParams:
    """Parameter-set labels and literal values"""

    def test_known_labels(self):
        assert resolve_params("kennedy") == ("kennedy", KENNEDY)
        assert resolve_params(" APSO ") == ("apso", APSO)

    def test_literal_values(self):
        label, params = resolve_params("1,1,0.5,0.5")
        assert label == "1,1,0.5,0.5"
        assert params.as_genes() == (1.0, 1.0, 0.5, 0.5)

    def test_unknown_label(self):
        with pytest.raises(ConfigurationError) as exc:
            resolve_params("swarmy")
        assert "kennedy" in exc.value.suggestion

    def test_bad_literal(self):
        with pytest.raises(ConfigurationError):
            resolve_params("1,2")


class TestBenchmarkRow:
    """Row statistics"""

    def test_statistics(self):
        row = BenchmarkRow("T", "kennedy", [10, 12, 14], [1.0, 2.0, 3.0], [1, 2, 3], best_known=8)
        assert row.n_runs == 3
        assert row.best == 10
        assert row.avg == 12.0
        assert row.stddev == pytest.approx(np.sqrt(8 / 3))
        assert row.abs_dev == 4.0
        assert row.pct_dev == 50.0
        assert row.avg_ms_per_run == 2.0

    def test_no_best_known(self):
        row = BenchmarkRow("T", "kennedy", [10], [0.0], [1])
        assert row.abs_dev is None and row.pct_dev is None

    def test_zero_best_known_is_kept(self):
        row = BenchmarkRow("T", "kennedy", [0, 2], [0.0, 0.0], [1, 2], best_known=0)
        assert row.abs_dev == 1.0
        assert row.pct_dev is None

    def test_recompute_after_edit(self):
        row = BenchmarkRow("T", "kennedy", [10, 12], [0.0, 0.0], [1, 2], best_known=10)
        row.makespans.append(20)
        row.recompute()
        assert row.n_runs == 3
        assert row.avg == 14.0

    def test_empty_row(self):
        with pytest.raises(ConfigurationError):
            BenchmarkRow("T", "kennedy", [], [], [])


class TestRunBenchmark:
    """Seeded benchmark runs"""

    def setup_method(self):
        self.records = tiny_records()
        self.params = {"kennedy": KENNEDY, "pedersen": PEDERSEN}

    def test_single_run_best_equals_average(self):
        report = run_benchmark(self.records, self.params, 1, 1, SMALL_PSO, timing=False)
        for row in report.rows:
            assert row.best == row.avg
            assert row.stddev == 0.0

    def test_row_order_and_seeds(self):
        report = run_benchmark(self.records, self.params, 3, 10, SMALL_PSO, timing=False)
        assert [(r.instance, r.label) for r in report.rows] == [
            ("T1", "kennedy"), ("T1", "pedersen"), ("T2", "kennedy"), ("T2", "pedersen")]
        assert all(r.seeds == [10, 11, 12] for r in report.rows)

    def test_run_matches_solve_once(self):
        report = run_benchmark(self.records[:1], {"kennedy": KENNEDY}, 2, 4, SMALL_PSO, timing=False)
        outcome = solve_once(self.records[0].instance, KENNEDY, SMALL_PSO.with_seed(5), timing=False)
        assert report.rows[0].makespans[1] == outcome.makespan

    def test_deterministic_without_timing(self):
        first = run_benchmark(self.records, self.params, 3, 1, SMALL_PSO, timing=False)
        second = run_benchmark(self.records, self.params, 3, 1, SMALL_PSO, timing=False)
        assert first.rows == second.rows
        assert all(ms == 0.0 for r in first.rows for ms in r.elapsed_ms)

    def test_worker_count_does_not_change_results(self):
        serial = run_benchmark(self.records, self.params, 3, 1, SMALL_PSO, workers=1, timing=False)
        parallel = run_benchmark(self.records, self.params, 3, 1, SMALL_PSO, workers=2, timing=False)
        assert serial.rows == parallel.rows

    def test_totals_skip_unknown_best(self):
        report = run_benchmark(self.records, self.params, 2, 1, SMALL_PSO, timing=False)
        for label in self.params:
            assert report.totals[label] == report.row("T1", label).abs_dev

    def test_makespans_never_below_optimum(self):
        report = run_benchmark(self.records[:1], self.params, 5, 1, SMALL_PSO, timing=False)
        assert all(m >= 7 for r in report.rows for m in r.makespans)

    def test_best_schedule_is_feasible(self):
        record = self.records[1]
        outcome = solve_once(record.instance, KENNEDY, SMALL_PSO, timing=False)
        schedule = best_schedule(record.instance, outcome)
        assert schedule.makespan == outcome.makespan
        assert validate_schedule(schedule, record.instance) == []

    def test_rejects_zero_runs(self):
        with pytest.raises(ConfigurationError):
            run_benchmark(self.records, self.params, 0, 1, SMALL_PSO)

    def test_rejects_seeds_past_64_bits(self):
        with pytest.raises(ConfigurationError):
            run_benchmark(self.records, self.params, 2, 2 ** 64 - 1, SMALL_PSO, timing=False)

    def test_rejects_negative_base_seed(self):
        with pytest.raises(ConfigurationError):
            run_benchmark(self.records, self.params, 1, -1, SMALL_PSO, timing=False)

    def test_last_seed_may_reach_64_bit_limit(self):
        report = run_benchmark(self.records[:1], {"kennedy": KENNEDY}, 2, 2 ** 64 - 2, SMALL_PSO,
                               timing=False)
        assert report.rows[0].seeds == [2 ** 64 - 2, 2 ** 64 - 1]
