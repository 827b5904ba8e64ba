"""Tests for the job-shop model, random-key decoder and exhaustive oracle"""

from collections import Counter

import pytest
import numpy as np

from core.error_handler import ContractViolation, SizeGuardError
from core.jobshop import (
    JsspInstance, Schedule, brute_force_optimum, build_schedule, decode_position,
    enumerate_sequences, jssp_objective, lower_bound, makespan, position_to_sequence,
    sequence_makespan, sequence_to_position, upper_bound, validate_schedule
)


def tiny_instance():
    return JsspInstance.from_lists([[(0, 3), (1, 2)], [(1, 2), (0, 4)]], name="TINY")


def random_instance(rng, n_jobs, n_machines):
    routes = []
    for _ in range(n_jobs):
        machines = rng.permutation(n_machines)
        routes.append([(int(m), int(rng.integers(0, 10))) for m in machines])
    return JsspInstance.from_lists(routes)


class TestInstance:
    """Instance model"""

    def test_dimensions(self):
        inst = tiny_instance()
        assert (inst.n_jobs, inst.n_machines, inst.size) == (2, 2, 4)
        assert inst.job_durations() == [5, 6]
        assert inst.machine_loads() == [7, 4]

    def test_rejects_repeated_machine(self):
        with pytest.raises(ContractViolation):
            JsspInstance.from_lists([[(0, 1), (0, 2)]])

    def test_rejects_ragged_routes(self):
        with pytest.raises(ContractViolation):
            JsspInstance.from_lists([[(0, 1), (1, 2)], [(0, 1)]])

    def test_bounds(self):
        inst = tiny_instance()
        assert lower_bound(inst) == 7
        assert upper_bound(inst) == 11


class TestDecoder:
    """Random-key decoding into semi-active schedules"""

    def setup_method(self):
        self.inst = tiny_instance()

    def test_decode_first_example(self):
        schedule = decode_position(np.array([0.1, 0.9, 0.4, 0.7]), self.inst)
        assert schedule.sequence == (0, 0, 1, 1)
        assert schedule.start == {(0, 0): 0, (0, 1): 3, (1, 0): 5, (1, 1): 7}
        assert makespan(schedule) == 11

    def test_decode_second_example(self):
        schedule = decode_position(np.array([0.9, 0.1, 0.95, 0.2]), self.inst)
        assert schedule.sequence == (1, 1, 0, 0)
        assert schedule.makespan == 11

    def test_ties_broken_by_coordinate_index(self):
        assert position_to_sequence(np.full(4, 0.5), self.inst) == [0, 1, 0, 1]

    def test_single_operation_makespan(self):
        inst = JsspInstance.from_lists([[(0, 7)]])
        assert makespan(Schedule.from_starts(inst, {(0, 0): 0})) == 7

    def test_wrong_length(self):
        with pytest.raises(ContractViolation):
            decode_position(np.zeros(3), self.inst)

    def test_single_job(self):
        inst = JsspInstance.from_lists([[(0, 2), (1, 3), (2, 4)]])
        rng = np.random.default_rng(0)
        for _ in range(20):
            assert decode_position(rng.random(3), inst).makespan == 9

    def test_sequence_is_permutation_with_repetition(self):
        rng = np.random.default_rng(1)
        inst = random_instance(rng, 4, 3)
        for _ in range(50):
            counts = Counter(position_to_sequence(rng.random(inst.size), inst))
            assert counts == {job: 3 for job in range(4)}

    def test_monotone_transform_keeps_schedule(self):
        rng = np.random.default_rng(2)
        inst = random_instance(rng, 3, 3)
        for _ in range(20):
            x = rng.random(inst.size)
            assert decode_position(x, inst) == decode_position(0.5 * x ** 3 + 0.1, inst)

    def test_decoded_schedules_are_feasible(self):
        rng = np.random.default_rng(3)
        for n_jobs, n_machines in [(1, 1), (2, 3), (4, 4), (6, 3)]:
            inst = random_instance(rng, n_jobs, n_machines)
            for _ in range(30):
                schedule = decode_position(rng.random(inst.size), inst)
                assert validate_schedule(schedule, inst) == []
                assert lower_bound(inst) <= schedule.makespan <= upper_bound(inst)

    def test_fast_makespan_matches_schedule(self):
        rng = np.random.default_rng(4)
        inst = random_instance(rng, 5, 4)
        for _ in range(30):
            sequence = position_to_sequence(rng.random(inst.size), inst)
            assert sequence_makespan(sequence, inst) == build_schedule(sequence, inst).makespan

    def test_build_rejects_bad_sequence(self):
        with pytest.raises(ContractViolation):
            build_schedule([0, 0, 0, 1], self.inst)

    def test_machine_sequences(self):
        schedule = decode_position(np.array([0.1, 0.9, 0.4, 0.7]), self.inst)
        sequences = schedule.machine_sequences()
        assert [(op.job, op.index) for op in sequences[0]] == [(0, 0), (1, 1)]
        assert [(op.job, op.index) for op in sequences[1]] == [(0, 1), (1, 0)]


class TestObjective:
    """Makespan objective over the unit cube"""

    def test_dimension_and_value(self):
        objective, space = jssp_objective(tiny_instance())
        assert space.dim == 4
        assert np.array_equal(space.lower, np.zeros(4))
        assert np.array_equal(space.upper, np.ones(4))
        assert objective(np.array([0.1, 0.9, 0.4, 0.7])) == 11.0


class TestOracle:
    """Exhaustive optimum and reachability of every sequence"""

    def test_tiny_optimum(self):
        assert brute_force_optimum(tiny_instance()) == 7

    def test_optimal_sequence(self):
        schedule = build_schedule((1, 0, 0, 1), tiny_instance())
        assert schedule.makespan == 7
        assert validate_schedule(schedule, tiny_instance()) == []

    def test_single_job_optimum_is_total_duration(self):
        inst = JsspInstance.from_lists([[(1, 4), (0, 1), (2, 2)]])
        assert brute_force_optimum(inst) == 7

    def test_sequence_count(self):
        assert len(set(enumerate_sequences(tiny_instance()))) == 6

    def test_every_sequence_is_reachable(self):
        inst = JsspInstance.from_lists([[(0, 1), (1, 2), (2, 3)], [(2, 2), (0, 1), (1, 1)]])
        for sequence in enumerate_sequences(inst):
            x = sequence_to_position(sequence, inst)
            assert np.all((x >= 0) & (x <= 1))
            assert tuple(position_to_sequence(x, inst)) == sequence

    def test_optimum_between_bounds(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            inst = random_instance(rng, 3, 3)
            optimum = brute_force_optimum(inst)
            assert lower_bound(inst) <= optimum <= upper_bound(inst)

    def test_single_machine_optimum(self):
        inst = JsspInstance.from_lists([[(0, 3)], [(0, 4)]])
        assert brute_force_optimum(inst) == 7

    def test_random_keys_reach_the_optimum(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            inst = random_instance(rng, int(rng.integers(1, 4)), int(rng.integers(1, 4)))
            optimum = brute_force_optimum(inst)
            reached = min(decode_position(sequence_to_position(seq, inst), inst).makespan
                          for seq in enumerate_sequences(inst))
            assert reached == optimum
            for _ in range(20):
                assert decode_position(rng.random(inst.size), inst).makespan >= optimum

    def test_size_guard(self):
        inst = JsspInstance.from_lists([[(0, 1), (1, 1), (2, 1), (3, 1)]] * 3)
        with pytest.raises(SizeGuardError):
            brute_force_optimum(inst)
