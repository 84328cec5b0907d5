"""
Tests for the ABC template, its convergence conditions and END AugDGM.
"""

import numpy as np
import pytest

from src.domain.entities.directed_graph import DirectedGraph
from src.domain.entities.least_squares import LeastSquaresInstance
from src.domain.entities.partition import Partition
from src.domain.entities.separable_cost import SeparableCost
from src.domain.entities.stacked_vector import StackedVector, StackedWeightOperator
from src.domain.services.algorithms.abc import (
    AbcMatrices,
    abc_initial_state,
    abc_rate_bound,
    abc_step,
    augdgm_initial_state,
    augdgm_matrices,
    augdgm_step,
    check_abc_conditions,
)
from src.domain.services.algorithms.runner import AlgorithmConfig, StopRule, build_runner, default_augdgm_step, run_algorithm
from src.domain.services.estimate_design import standard_design, steiner_design_undirected
from src.domain.services.locality import LocalityMonitor
from src.domain.services.merit import MeritEvaluator
from src.domain.services.reference_solver import centralized_reference
from src.domain.services.weights import metropolis_weights
from src.domain.value_objects.design_mode import AlgorithmKind
from src.shared.exceptions import ConditionsNotVerifiedError, ValidationError
from tests.baselines import augdgm_full


class AbsoluteCost(SeparableCost):
    """A cost with no known smoothness constant."""

    def value_i(self, i, view):
        return float(np.sum(np.abs(view[0])))


def _weights(layout):
    return StackedWeightOperator(layout, {p: metropolis_weights(layout.design_graph(p)) for p in layout.components})


def _as_rows(y: StackedVector) -> np.ndarray:
    return np.hstack([y.component(p) for p in y.layout.components])


# Each component is needed by a triangle of the circulant C6(1, 2).
TRIANGLES = {0: (0, 1, 2), 1: (2, 3, 4), 2: (4, 5, 0)}


@pytest.fixture
def circulant_comm():
    return DirectedGraph.undirected(range(6), [(i, (i + step) % 6) for i in range(6) for step in (1, 2)])


@pytest.fixture
def triangle_problem():
    rng = np.random.Generator(np.random.PCG64(13))
    truth = rng.uniform(-1.0, 1.0, size=3)
    agent_components = {i: tuple(p for p, agents in TRIANGLES.items() if i in agents) for i in range(6)}
    output_matrices, measurements = {}, {}
    for i, comps in agent_components.items():
        H = rng.uniform(0.2, 1.0, size=(3, len(comps)))
        output_matrices[i] = H
        measurements[i] = H @ truth[list(comps)] + rng.normal(0.0, 0.1, size=3)
    return LeastSquaresInstance(Partition([1, 1, 1]), agent_components, output_matrices, measurements, truth=truth)


class TestAbcConditions:
    """Test the numerical check of the five conditions."""

    @pytest.mark.parametrize("layout_fixture", ["ring_standard_layout", "ring_steiner_layout"])
    def test_augdgm_matrices_pass(self, layout_fixture, request):
        layout = request.getfixturevalue(layout_fixture)

        report = check_abc_conditions(augdgm_matrices(_weights(layout), 0.1), layout)

        assert report.passed, report.failures
        assert report.lambda_lower > 0.0
        assert report.lambda_min_d == pytest.approx(1.0)

    def test_broken_factorization_detected(self, ring_steiner_layout):
        layout = ring_steiner_layout
        good = augdgm_matrices(_weights(layout), 0.1)
        A = {p: 2.0 * good.A[p] for p in layout.components}

        report = check_abc_conditions(AbcMatrices(layout, A, good.B, good.C, good.D, 0.1), layout)

        assert not report.c1
        assert report.c2 and report.c3 and report.c4
        assert any(message.startswith("C1") for message in report.failures)

    def test_null_space_of_c_checked(self, ring_steiner_layout):
        layout = ring_steiner_layout
        good = augdgm_matrices(_weights(layout), 0.1)
        C = {p: np.zeros_like(good.C[p]) for p in layout.components}

        report = check_abc_conditions(AbcMatrices(layout, good.A, good.B, C, good.D, 0.1), layout)

        assert not report.c3

    def test_shapes_validated(self, ring_steiner_layout):
        identity = {p: np.eye(ring_steiner_layout.copy_count(p)) for p in ring_steiner_layout.components}
        wrong = dict(identity)
        wrong[0] = np.eye(2)

        with pytest.raises(ValidationError):
            AbcMatrices(ring_steiner_layout, wrong, identity, identity, identity, 0.1)
        with pytest.raises(ValidationError):
            AbcMatrices(ring_steiner_layout, identity, identity, identity, identity, 0.0)


class TestAbcRateBound:
    """Test the ergodic rate certificate."""

    @pytest.mark.parametrize("design", [standard_design, steiner_design_undirected])
    def test_running_average_stays_under_bound(self, triangle_problem, circulant_comm, design):
        layout = design(circulant_comm, triangle_problem.interference_graph(), triangle_problem.partition)
        matrices = augdgm_matrices(_weights(layout), 0.9 / triangle_problem.smoothness)
        report = check_abc_conditions(matrices, layout, tol=1e-9)
        y_star, _ = centralized_reference(triangle_problem)
        evaluator = MeritEvaluator(triangle_problem, layout, y_star)
        bound = abc_rate_bound(StackedVector.zeros(layout), evaluator.y_star, evaluator.grad_at_star, matrices, report)

        assert report.passed, report.failures
        state = abc_initial_state(layout)
        above = []
        for k in range(1, 10001):
            state = abc_step(state, matrices, triangle_problem)
            if evaluator.merit_M(state.y_avg) > bound(k) + 1e-9:
                above.append(k)

        assert above == []

    def test_triangle_designs_average_exactly(self, triangle_problem, circulant_comm):
        layout = steiner_design_undirected(circulant_comm, triangle_problem.interference_graph(), triangle_problem.partition)

        for p, agents in TRIANGLES.items():
            assert layout.copies(p) == tuple(sorted(agents))
            assert np.allclose(_weights(layout).matrix(p), np.full((3, 3), 1.0 / 3.0))

    def test_bound_decays_as_one_over_k(self, ring_problem, ring_steiner_layout):
        layout = ring_steiner_layout
        matrices = augdgm_matrices(_weights(layout), 0.5 / ring_problem.smoothness)
        y_star, _ = centralized_reference(ring_problem)
        evaluator = MeritEvaluator(ring_problem, layout, y_star)
        report = check_abc_conditions(matrices, layout)

        bound = abc_rate_bound(StackedVector.zeros(layout), evaluator.y_star, evaluator.grad_at_star, matrices, report)

        assert bound(1) > 0.0
        assert bound(4) == pytest.approx(bound(1) / 4.0)
        with pytest.raises(ValidationError):
            bound(0)

    def test_refused_for_failing_matrices(self, ring_problem, ring_steiner_layout):
        layout = ring_steiner_layout
        good = augdgm_matrices(_weights(layout), 0.1)
        broken = AbcMatrices(layout, {p: 2.0 * good.A[p] for p in layout.components}, good.B, good.C, good.D, 0.1)
        y_star, _ = centralized_reference(ring_problem)
        evaluator = MeritEvaluator(ring_problem, layout, y_star)

        with pytest.raises(ConditionsNotVerifiedError):
            abc_rate_bound(
                StackedVector.zeros(layout), evaluator.y_star, evaluator.grad_at_star,
                broken, check_abc_conditions(broken, layout),
            )


class TestAbcIteration:
    """Test the generic ABC iteration."""

    def test_matches_augdgm_from_zero(self, ring_problem, ring_steiner_layout):
        """With A = B = W², C = (I - W)² and D = I both recursions produce the same y^k."""
        layout = ring_steiner_layout
        weights = _weights(layout)
        gamma = 0.5 / ring_problem.smoothness
        matrices = augdgm_matrices(weights, gamma)

        abc_state = abc_initial_state(layout)
        aug_state = augdgm_initial_state(layout, weights, ring_problem, gamma)
        for _ in range(30):
            abc_state = abc_step(abc_state, matrices, ring_problem)
            aug_state = augdgm_step(aug_state, weights, ring_problem, gamma)
            assert np.allclose(abc_state.y.to_flat(), aug_state.y.to_flat(), atol=1e-9)

    def test_running_average_converges(self, ring_problem, ring_steiner_layout):
        layout = ring_steiner_layout
        matrices = augdgm_matrices(_weights(layout), 0.5 / ring_problem.smoothness)
        y_star, _ = centralized_reference(ring_problem)
        evaluator = MeritEvaluator(ring_problem, layout, y_star)

        state = abc_initial_state(layout)
        merits = {}
        for k in range(1, 2001):
            state = abc_step(state, matrices, ring_problem)
            if k in (200, 2000):
                merits[k] = evaluator.merit_M(state.y_avg)

        assert state.k == 2000
        assert merits[2000] < merits[200] / 2.0


class TestAugDgm:
    """Test END AugDGM."""

    def test_standard_layout_matches_classic_augdgm(self, ring_problem, ring_standard_layout, ring_comm):
        layout = ring_standard_layout
        weights = _weights(layout)
        gamma = default_augdgm_step(ring_problem)
        classic = augdgm_full(ring_problem, ring_comm, gamma, 100)

        state = augdgm_initial_state(layout, weights, ring_problem, gamma)
        for k in range(1, 101):
            state = augdgm_step(state, weights, ring_problem, gamma)
            assert np.allclose(_as_rows(state.y), classic[k], rtol=0.0, atol=1e-12)

    def test_tracking_keeps_gradient_average(self, ring_problem, ring_steiner_layout):
        """Column sums of v equal column sums of the current local gradients."""
        layout = ring_steiner_layout
        weights = _weights(layout)
        gamma = default_augdgm_step(ring_problem)

        state = augdgm_initial_state(layout, weights, ring_problem, gamma)
        for _ in range(10):
            state = augdgm_step(state, weights, ring_problem, gamma)

        for p in layout.components:
            assert np.allclose(state.v.component(p).sum(axis=0), state.gradient.component(p).sum(axis=0))

    def test_communication_stays_on_design_graphs(self, ring_problem, ring_steiner_layout):
        layout = ring_steiner_layout
        weights = _weights(layout)
        monitor = LocalityMonitor(layout)
        gamma = default_augdgm_step(ring_problem)

        state = augdgm_initial_state(layout, weights, ring_problem, gamma)
        for _ in range(5):
            state = augdgm_step(state, weights, ring_problem, gamma, monitor)

        assert monitor.is_clean()
        assert monitor.rounds == 10

    def test_runner_reaches_tight_threshold(self, ring_problem, ring_steiner_layout):
        y_star, _ = centralized_reference(ring_problem)
        runner = build_runner(ring_steiner_layout, ring_problem, AlgorithmConfig(kind=AlgorithmKind.AUGDGM))

        trace = run_algorithm(runner, y_star, StopRule(max_iterations=5000, merit_threshold=1e-6))

        assert trace.summary.reached_threshold
        assert trace.summary.total_cost == pytest.approx(2 * 8.0 * trace.summary.iterations)

    def test_default_step(self, ring_problem):
        assert default_augdgm_step(ring_problem) == pytest.approx(0.9 / ring_problem.smoothness)

    def test_default_step_needs_smoothness(self, ring_partition):
        with pytest.raises(ValidationError):
            default_augdgm_step(AbsoluteCost(ring_partition, {0: [0, 1, 2]}))
