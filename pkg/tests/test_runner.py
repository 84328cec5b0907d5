"""
Tests for the shared run loop and its traces.
"""

from dataclasses import replace

import numpy as np
import pytest

from src.domain.services.algorithms.admm import admm_initial_state, admm_step
from src.domain.services.algorithms.runner import AlgorithmConfig, StopRule, build_runner, run_algorithm
from src.domain.services.locality import LocalityMonitor
from src.domain.services.reference_solver import centralized_reference
from src.domain.value_objects.design_mode import AlgorithmKind
from src.domain.value_objects.run_trace import RunTrace, TraceRow
from src.shared.exceptions import DivergenceError, ValidationError


@pytest.fixture
def y_star(ring_problem):
    solution, _ = centralized_reference(ring_problem)
    return solution


class TestStopRule:
    """Test stopping rule validation."""

    def test_defaults(self):
        rule = StopRule()

        assert rule.max_iterations == 20000
        assert rule.merit_threshold == pytest.approx(1e-2)
        assert rule.trace_every == 1

    def test_invalid(self):
        with pytest.raises(ValidationError):
            StopRule(max_iterations=-1)
        with pytest.raises(ValidationError):
            StopRule(trace_every=0)


class TestBuildRunner:
    """Test stepper construction."""

    def test_metropolis_weights_pass_abc_conditions(self, ring_problem, ring_steiner_layout, caplog):
        with caplog.at_level("WARNING"):
            build_runner(ring_steiner_layout, ring_problem, AlgorithmConfig(kind=AlgorithmKind.AUGDGM))

        assert "AugDGM weights fail" not in caplog.text

    def test_failed_conditions_are_logged(self, ring_problem, ring_steiner_layout, caplog):
        config = AlgorithmConfig(kind=AlgorithmKind.AUGDGM, condition_tolerance=-1.0)

        with caplog.at_level("WARNING"):
            build_runner(ring_steiner_layout, ring_problem, config)

        assert "AugDGM weights fail" in caplog.text


class TestRunAlgorithm:
    """Test the run loop shared by all algorithms."""

    def test_first_row_is_the_start(self, ring_problem, ring_steiner_layout, y_star):
        runner = build_runner(ring_steiner_layout, ring_problem, AlgorithmConfig(kind=AlgorithmKind.ADMM))

        trace = run_algorithm(runner, y_star, StopRule(max_iterations=10, merit_threshold=None))

        first = trace.rows[0]
        assert first.k == 0
        assert first.cum_cost == 0.0
        assert first.consensus_residual == 0.0
        assert len(trace) == 11

    def test_cost_accumulates_before_each_step(self, ring_problem, ring_steiner_layout, y_star):
        runner = build_runner(ring_steiner_layout, ring_problem, AlgorithmConfig(kind=AlgorithmKind.AUGDGM))

        trace = run_algorithm(runner, y_star, StopRule(max_iterations=12, merit_threshold=None))

        costs = [row.cum_cost for row in trace.rows]
        assert costs == sorted(costs)
        assert trace.rows[1].cum_cost == pytest.approx(16.0)
        assert trace.summary.total_cost == pytest.approx(12 * 16.0)
        assert trace.summary.memory == 8

    def test_trace_every(self, ring_problem, ring_steiner_layout, y_star):
        runner = build_runner(ring_steiner_layout, ring_problem, AlgorithmConfig(kind=AlgorithmKind.ADMM))

        trace = run_algorithm(runner, y_star, StopRule(max_iterations=35, merit_threshold=None, trace_every=10))

        assert [row.k for row in trace.rows] == [0, 10, 20, 30, 35]

    def test_stops_at_threshold(self, ring_problem, ring_steiner_layout, y_star):
        runner = build_runner(ring_steiner_layout, ring_problem, AlgorithmConfig(kind=AlgorithmKind.AUGDGM))

        trace = run_algorithm(runner, y_star, StopRule(max_iterations=5000, merit_threshold=1e-3, trace_every=100))

        summary = trace.summary
        assert summary.reached_threshold
        assert summary.iterations == summary.iterations_to_threshold
        assert trace.last.k == summary.iterations
        assert trace.last.merit <= 1e-3
        assert summary.final_merit == trace.last.merit

    def test_zero_iterations(self, ring_problem, ring_steiner_layout, y_star):
        runner = build_runner(ring_steiner_layout, ring_problem, AlgorithmConfig(kind=AlgorithmKind.PUSH_SUM))

        trace = run_algorithm(runner, y_star, StopRule(max_iterations=0, merit_threshold=None))

        assert len(trace) == 1
        assert trace.summary.iterations == 0
        assert trace.summary.total_cost == 0.0

    def test_summary_metadata(self, ring_problem, ring_steiner_layout, y_star):
        runner = build_runner(ring_steiner_layout, ring_problem, AlgorithmConfig(kind=AlgorithmKind.ADMM))

        trace = run_algorithm(runner, y_star, StopRule(max_iterations=3), symmetrized=True, seed=11)

        assert trace.summary.symmetrized
        assert trace.summary.seed == 11
        assert trace.summary.generator == "PCG64"

    def test_divergence_detected(self, ring_problem, ring_steiner_layout, y_star):
        config = AlgorithmConfig(kind=AlgorithmKind.AUGDGM, gamma=50.0 / ring_problem.smoothness)
        runner = build_runner(ring_steiner_layout, ring_problem, config)

        with pytest.raises(DivergenceError):
            run_algorithm(runner, y_star, StopRule(max_iterations=2000, merit_threshold=None))


class TestRunTrace:
    """Test trace bookkeeping."""

    def test_cost_must_not_decrease(self):
        trace = RunTrace()
        trace.append(TraceRow(0, 1.0, 0.0, 5.0))

        with pytest.raises(ValidationError):
            trace.append(TraceRow(1, 0.5, 0.0, 4.0))

    def test_empty_trace(self):
        assert RunTrace().last is None


class TestLocality:
    """Long runs read only design in-neighbours, relays included."""

    @pytest.mark.parametrize("kind", [AlgorithmKind.ADMM, AlgorithmKind.AUGDGM, AlgorithmKind.PUSH_SUM])
    def test_thousand_iterations_stay_local(self, relay_problem, relay_steiner_layout, kind):
        solution, _ = centralized_reference(relay_problem)
        monitor = LocalityMonitor(relay_steiner_layout)
        runner = build_runner(relay_steiner_layout, relay_problem, AlgorithmConfig(kind=kind, step_scale=0.1), monitor)

        trace = run_algorithm(runner, solution, StopRule(max_iterations=1000, merit_threshold=None, trace_every=100))

        assert trace.summary.iterations == 1000
        assert monitor.rounds == 1000 * kind.rounds_per_iteration
        assert monitor.read_count > 0
        assert monitor.is_clean()

    def test_off_design_auxiliary_is_flagged(self, ring_problem, ring_steiner_layout):
        """Agents 0 and 2 share component 0 but are not ring neighbours."""
        monitor = LocalityMonitor(ring_steiner_layout)
        state = admm_initial_state(ring_steiner_layout, alpha=0.5)
        injected = {**state.auxiliaries, (0, 2, 0): np.zeros(1), (2, 0, 0): np.zeros(1)}

        admm_step(replace(state, auxiliaries=injected), ring_problem, ring_steiner_layout, monitor)

        offenders = {(read.reader, read.owner, read.component) for read in monitor.violations}
        assert offenders == {(0, 2, 0), (2, 0, 0)}
        assert not monitor.is_clean()
