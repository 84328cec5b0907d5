"""
Uniform run loop for the END steppers.
"""

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from src.domain.entities.end_layout import ENDLayout
from src.domain.entities.separable_cost import SeparableCost
from src.domain.entities.stacked_vector import StackedVector, StackedWeightOperator
from src.domain.services.algorithms.abc import (
    CONDITION_TOLERANCE,
    augdgm_initial_state,
    augdgm_matrices,
    augdgm_step,
    check_abc_conditions,
)
from src.domain.services.algorithms.admm import admm_initial_state, admm_step
from src.domain.services.algorithms.push_sum import (
    PushSumDiagnosticsRecorder,
    PushSumWeightSchedule,
    diminishing_step,
    push_sum_initial_state,
    push_sum_step,
)
from src.domain.services.estimate_design import TimeVaryingDesign, cost_report
from src.domain.services.locality import LocalityMonitor
from src.domain.services.merit import MeritEvaluator
from src.domain.services.weights import metropolis_weights
from src.domain.value_objects.design_mode import AlgorithmKind
from src.domain.value_objects.run_trace import RunSummary, RunTrace, TraceRow
from src.shared.exceptions import DivergenceError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StopRule:
    """Stop at max_iterations or as soon as 𝔙 ≤ merit_threshold."""
    max_iterations: int = 20000
    merit_threshold: Optional[float] = 1e-2
    trace_every: int = 1

    def __post_init__(self):
        if self.max_iterations < 0:
            raise ValidationError("max_iterations must be nonnegative")
        if self.trace_every < 1:
            raise ValidationError("trace_every must be at least 1")


@dataclass(frozen=True)
class AlgorithmConfig:
    """Algorithm choice and its parameters; gamma=None selects the default step rule."""
    kind: AlgorithmKind
    alpha: float = 0.5
    rho: float = 1.0
    gamma: Optional[float] = None
    step_scale: float = 1.0
    clip: Optional[float] = None
    condition_tolerance: float = CONDITION_TOLERANCE


class AlgorithmRunner(ABC):
    """Stepper adapter used by run_algorithm."""

    kind: AlgorithmKind

    def __init__(self, layout: ENDLayout, problem: SeparableCost, monitor: Optional[LocalityMonitor] = None):
        self.layout = layout
        self.problem = problem
        self.monitor = monitor
        self._static_cost = cost_report(layout).per_iteration_broadcast_cost

    @abstractmethod
    def initial_state(self) -> Any:
        pass

    @abstractmethod
    def step(self, state: Any) -> Any:
        pass

    @abstractmethod
    def estimates(self, state: Any) -> StackedVector:
        pass

    def broadcast_cost(self, k: int) -> float:
        """Broadcasts spent by iteration k."""
        return self._static_cost * self.kind.rounds_per_iteration


class AdmmRunner(AlgorithmRunner):
    kind = AlgorithmKind.ADMM

    def __init__(self, layout, problem, config: AlgorithmConfig, monitor=None):
        super().__init__(layout, problem, monitor)
        self._config = config

    def initial_state(self):
        return admm_initial_state(self.layout, self._config.alpha, self._config.rho)

    def step(self, state):
        return admm_step(state, self.problem, self.layout, self.monitor)

    def estimates(self, state) -> StackedVector:
        return state.estimates


class AugDgmRunner(AlgorithmRunner):
    kind = AlgorithmKind.AUGDGM

    def __init__(self, layout, problem, config: AlgorithmConfig, monitor=None):
        super().__init__(layout, problem, monitor)
        self.weights = StackedWeightOperator(
            layout, {p: metropolis_weights(layout.design_graph(p)) for p in layout.components}
        )
        self.gamma = config.gamma if config.gamma is not None else default_augdgm_step(problem)
        report = check_abc_conditions(augdgm_matrices(self.weights, self.gamma), layout, config.condition_tolerance)
        if not report.passed:
            logger.warning("AugDGM weights fail %s", "; ".join(report.failures))

    def initial_state(self):
        return augdgm_initial_state(self.layout, self.weights, self.problem, self.gamma)

    def step(self, state):
        return augdgm_step(state, self.weights, self.problem, self.gamma, self.monitor)

    def estimates(self, state) -> StackedVector:
        return state.y


class PushSumRunner(AlgorithmRunner):
    kind = AlgorithmKind.PUSH_SUM

    def __init__(
        self,
        layout,
        problem,
        config: AlgorithmConfig,
        monitor=None,
        design: Optional[TimeVaryingDesign] = None,
        recorder: Optional[PushSumDiagnosticsRecorder] = None,
    ):
        super().__init__(layout, problem, monitor)
        self._config = config
        self.schedule = PushSumWeightSchedule(layout, design)
        self.recorder = recorder

    def initial_state(self):
        return push_sum_initial_state(self.layout)

    def step(self, state):
        gamma = diminishing_step(state.k, self._config.step_scale)
        new_state = push_sum_step(
            state, self.schedule.at(state.k), self.problem, gamma, self.monitor, self._config.clip
        )
        if self.recorder is not None:
            self.recorder.observe(state, new_state)
        return new_state

    def estimates(self, state) -> StackedVector:
        return state.y

    def broadcast_cost(self, k: int) -> float:
        if not self.schedule.is_time_varying:
            return super().broadcast_cost(k)
        return cost_report(self.schedule.layout_at(k)).per_iteration_broadcast_cost


def default_augdgm_step(problem: SeparableCost) -> float:
    """γ = 0.9/L, inside the (0, 1/L) range."""
    if problem.smoothness is None or problem.smoothness <= 0:
        raise ValidationError("AugDGM needs a positive smoothness constant or an explicit step size")
    return 0.9 / problem.smoothness


def build_runner(
    layout: ENDLayout,
    problem: SeparableCost,
    config: AlgorithmConfig,
    monitor: Optional[LocalityMonitor] = None,
    design: Optional[TimeVaryingDesign] = None,
    recorder: Optional[PushSumDiagnosticsRecorder] = None,
) -> AlgorithmRunner:
    if config.kind is AlgorithmKind.ADMM:
        return AdmmRunner(layout, problem, config, monitor)
    if config.kind is AlgorithmKind.AUGDGM:
        return AugDgmRunner(layout, problem, config, monitor)
    return PushSumRunner(layout, problem, config, monitor, design, recorder)


def run_algorithm(
    runner: AlgorithmRunner,
    y_star: np.ndarray,
    stop: StopRule,
    divergence_bound: float = 1e6,
    symmetrized: bool = False,
    seed: Optional[int] = None,
) -> RunTrace:
    """Fold the stepper until the stopping rule fires and record the trace."""
    layout = runner.layout
    evaluator = MeritEvaluator(runner.problem, layout, y_star)
    trace = RunTrace()
    started = time.perf_counter()

    state = runner.initial_state()
    estimates = runner.estimates(state)
    merit = evaluator.merit_V(estimates)
    cum_cost = 0.0
    trace.append(TraceRow(0, merit, estimates.consensus_residual(), cum_cost, 0.0))

    reached = 0 if stop.merit_threshold is not None and merit <= stop.merit_threshold else None
    k = 0
    while reached is None and k < stop.max_iterations:
        cum_cost += runner.broadcast_cost(k)
        state = runner.step(state)
        k += 1
        estimates = runner.estimates(state)
        if not estimates.is_finite() or estimates.max_abs() > divergence_bound:
            logger.error("Run diverged at k=%d (%s)", k, runner.kind)
            raise DivergenceError(
                f"Iterates left the bound {divergence_bound:g} at k={k}",
                details=f"algorithm={runner.kind}, max |y| = {estimates.max_abs():.3e}",
            )

        merit = evaluator.merit_V(estimates)
        if stop.merit_threshold is not None and merit <= stop.merit_threshold:
            reached = k
        if k % stop.trace_every == 0 or reached is not None or k == stop.max_iterations:
            row = TraceRow(k, merit, estimates.consensus_residual(), cum_cost, time.perf_counter() - started)
            trace.append(row)

    trace.summary = RunSummary(
        iterations=k,
        iterations_to_threshold=reached,
        total_cost=cum_cost,
        memory=cost_report(layout).total_memory,
        final_merit=merit,
        symmetrized=symmetrized,
        seed=seed,
    )
    logger.info(
        "Run finished: algorithm=%s iterations=%d reached=%s cost=%.0f merit=%.3e",
        runner.kind, k, reached, cum_cost, merit,
    )
    return trace
