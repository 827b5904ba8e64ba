"""Tests for the pso-jobshop command line"""

import json
import shutil
import tempfile
from pathlib import Path

from click.testing import CliRunner

from cli.main import cli
from features.reports import CSV_COLUMNS

FIXTURES = Path(__file__).parent / "fixtures"
TINY = FIXTURES / "tiny_2x2.txt"
FAST = ["--particles", "4", "--iterations", "3"]


class TestCli:
    """End-to-end command checks on tiny instances"""

    def setup_method(self):
        self.runner = CliRunner()
        self.temp_dir = Path(tempfile.mkdtemp())
        self.config = self.temp_dir / "quiet.yml"
        self.config.write_text("logging:\n  level: ERROR\n")
        self.suite = self.temp_dir / "suite"
        self.suite.mkdir()
        shutil.copy(TINY, self.suite / "t1.txt")
        (self.suite / "t2.txt").write_text("3 2\n0 2 1 1\n1 3 0 2\n0 1 1 4\n")

    def teardown_method(self):
        shutil.rmtree(self.temp_dir)

    def invoke(self, *args):
        return self.runner.invoke(cli, ["--config", str(self.config), *args])

    def test_version(self):
        result = self.runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert "1.0.0" in result.output

    def test_inspect(self):
        result = self.invoke("inspect", str(TINY))
        assert result.exit_code == 0
        assert "2 jobs × 2 machines" in result.output
        assert "Lower bound: 7" in result.output
        assert "Upper bound: 11" in result.output

    def test_inspect_multi_instance_needs_name(self):
        result = self.invoke("inspect", str(FIXTURES / "tiny_multi.txt"))
        assert result.exit_code == 1
        result = self.invoke("inspect", str(FIXTURES / "tiny_multi.txt"), "--instance", "tiny2")
        assert result.exit_code == 0
        assert "TINY2: 3 jobs × 2 machines" in result.output

    def test_solve(self):
        result = self.invoke("solve", str(TINY), "--seed", "3", *FAST)
        assert result.exit_code == 0
        line = next(l for l in result.output.splitlines() if l.startswith("Makespan:"))
        assert 7 <= int(line.split(":")[1]) <= 11
        assert "M0:" in result.output and "M1:" in result.output

    def test_solve_with_literal_params(self):
        result = self.invoke("solve", str(TINY), "--params", "1.5,1.5,0.7,0.3", *FAST)
        assert result.exit_code == 0

    def test_solve_missing_file(self):
        result = self.invoke("solve", str(self.temp_dir / "absent.txt"))
        assert result.exit_code == 1

    def test_solve_garbage_file(self):
        garbage = self.temp_dir / "garbage.txt"
        garbage.write_text("this is not an instance\n")
        result = self.invoke("solve", str(garbage))
        assert result.exit_code == 2
        assert "line 1" in result.output or ":1:" in result.output

    def test_solve_unknown_label(self):
        result = self.invoke("solve", str(TINY), "--params", "swarmy")
        assert result.exit_code == 1
        assert "kennedy" in result.output

    def test_solve_beta_out_of_range(self):
        result = self.invoke("solve", str(TINY), "--params", "1,1,0.5,0")
        assert result.exit_code == 1

    def test_solve_negative_seed_is_usage_error(self):
        result = self.invoke("solve", str(TINY), "--seed=-1", *FAST)
        assert result.exit_code == 1
        assert "Unexpected error" not in result.output

    def test_solve_seed_past_64_bits(self):
        result = self.invoke("solve", str(TINY), "--seed", str(2 ** 64), *FAST)
        assert result.exit_code == 1

    def test_solve_largest_seed(self):
        result = self.invoke("solve", str(TINY), "--seed", str(2 ** 64 - 1), *FAST)
        assert result.exit_code == 0
        assert f"Seed: {2 ** 64 - 1}" in result.output

    def test_tune_negative_seed_is_usage_error(self):
        result = self.invoke("tune", str(self.suite), "--train", "T1", "--population", "2",
                             "--generations", "1", "--k", "1", "--seed=-1", *FAST)
        assert result.exit_code == 1
        assert "Unexpected error" not in result.output

    def test_bench_negative_seed_is_usage_error(self):
        result = self.invoke("bench", str(self.suite), "--runs", "1", "--seed=-1", *FAST)
        assert result.exit_code == 1

    def test_bench_seeds_past_64_bits(self):
        result = self.invoke("bench", str(self.suite), "--runs", "2", "--seed", str(2 ** 64 - 1),
                             "--no-timing", *FAST)
        assert result.exit_code == 1
        assert "fall outside" in result.output

    def test_tune_odd_population(self):
        result = self.invoke("tune", str(self.suite), "--population", "3")
        assert result.exit_code == 1

    def test_tune_unknown_training(self):
        result = self.invoke("tune", str(self.suite), "--train", "LA02", "--population", "2",
                             "--generations", "1", "--k", "1", *FAST)
        assert result.exit_code == 1

    def test_tune(self):
        out = self.temp_dir / "tune.json"
        result = self.invoke("tune", str(self.suite), "--train", "T1", "--train", "T2",
                             "--population", "2", "--generations", "2", "--k", "1",
                             "--out", str(out), *FAST)
        assert result.exit_code == 0
        data = json.loads(out.read_text())
        assert data["evaluations"] == 2 * 2 * 1 * 2
        assert data["training"] == ["T1", "T2"]
        assert set(data["best_params"]) == {"alpha1", "alpha2", "omega", "beta"}

    def test_bench_csv(self):
        result = self.invoke("bench", str(self.suite), "--runs", "2", "--format", "csv",
                             "--no-timing", *FAST)
        assert result.exit_code == 0
        lines = result.output.strip().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 1 + 2 * 3

    def test_bench_out_is_reproducible(self):
        first = self.temp_dir / "a" / "bench.csv"
        second = self.temp_dir / "b" / "bench.csv"
        for out in (first, second):
            result = self.invoke("bench", str(self.suite), "--runs", "2", "--params", "kennedy",
                                 "--format", "csv", "--out", str(out), "--no-timing", *FAST)
            assert result.exit_code == 0
        assert first.read_text() == second.read_text()
        assert (first.parent / "bench.runs.json").exists()

    def test_bench_instance_filter(self):
        result = self.invoke("bench", str(self.suite), "--instances", "t2", "--runs", "1",
                             "--params", "apso", "--format", "json", "--no-timing", *FAST)
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert [r["instance"] for r in data["rows"]] == ["T2"]

    def test_bench_empty_suite(self):
        empty = self.temp_dir / "empty"
        empty.mkdir()
        result = self.invoke("bench", str(empty), "--runs", "1")
        assert result.exit_code == 1

    def test_bad_config(self):
        self.config.write_text("pso:\n  particles: -2\n")
        result = self.invoke("inspect", str(TINY))
        assert result.exit_code == 1
