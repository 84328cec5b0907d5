"""
END Push-Sum DGD over directed, possibly time-varying, design graphs.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.domain.entities.directed_graph import DirectedGraph
from src.domain.entities.end_layout import ENDLayout
from src.domain.entities.separable_cost import SeparableCost
from src.domain.entities.stacked_vector import StackedVector, StackedWeightOperator
from src.domain.services.cost_evaluation import stacked_subgradient
from src.domain.services.estimate_design import TimeVaryingDesign
from src.domain.services.locality import LocalityMonitor
from src.domain.services.weights import uniform_column_stochastic_weights
from src.domain.value_objects.algorithm_reports import PushSumDiagnosticsReport
from src.shared.exceptions import StochasticityViolationError, ValidationError

logger = logging.getLogger(__name__)

STEP_EXPONENT = 0.51
DESCENT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PushSumState:
    """Mass q_{i,p} per copy plus the stacked z, w, y and g; step is the γ that produced it."""
    q: Dict[int, np.ndarray]
    z: StackedVector
    w: StackedVector
    y: StackedVector
    g: StackedVector
    step: float = 0.0
    k: int = 0

    def mass(self, p: int) -> float:
        return float(np.sum(self.q[p]))


def push_sum_initial_state(layout: ENDLayout, z0: Optional[StackedVector] = None) -> PushSumState:
    """q⁰ = 1, y⁰ = w⁰ = z⁰ (zero by default) and g⁰ = 0."""
    z = z0 if z0 is not None else StackedVector.zeros(layout)
    q = {p: np.ones(layout.copy_count(p)) for p in layout.components}
    return PushSumState(q=q, z=z, w=z, y=z, g=StackedVector.zeros(layout))


def diminishing_step(k: int, scale: float = 1.0, exponent: float = STEP_EXPONENT) -> float:
    """γ^k = scale · k^{−0.51}, with γ^0 = scale."""
    if k < 0:
        raise ValidationError(f"Step index must be nonnegative, got {k}")
    if k == 0:
        return float(scale)
    return float(scale) * float(k) ** (-exponent)


def push_sum_step(
    state: PushSumState,
    weights: StackedWeightOperator,
    problem: SeparableCost,
    gamma: float,
    monitor: Optional[LocalityMonitor] = None,
    clip: Optional[float] = None,
) -> PushSumState:
    """q⁺ = Wq; w⁺ = Wz; y⁺ = w⁺/q⁺; g⁺ ∈ ∂𝒇(y⁺); z⁺ = w⁺ − γg⁺, in one round."""
    if monitor is not None:
        monitor.begin_round(weights.layout.design)

    q_next = weights.apply_scalars(state.q)
    for p, values in q_next.items():
        if np.any(values <= 0.0):
            raise StochasticityViolationError(
                f"Push-sum mass became nonpositive for component {p}",
                details=f"min q = {float(np.min(values)):.3e} at k = {state.k + 1}",
            )

    w_next = weights.apply(state.z, monitor)
    y_next = w_next.map_components(lambda p, block: block / q_next[p][:, None])
    g_next = stacked_subgradient(problem, y_next, monitor)
    if clip is not None:
        g_next = _clip_blocks(g_next, clip)
    z_next = w_next - g_next * gamma

    return PushSumState(q=q_next, z=z_next, w=w_next, y=y_next, g=g_next, step=gamma, k=state.k + 1)


class PushSumWeightSchedule:
    """Column-stochastic weights per iteration, uniform over out-neighbours plus self."""

    def __init__(self, layout: ENDLayout, design: Optional[TimeVaryingDesign] = None):
        self._layout = layout
        self._design = design
        self._cache: Dict[Tuple[Tuple[int, frozenset], ...], StackedWeightOperator] = {}

    @property
    def is_time_varying(self) -> bool:
        return self._design is not None

    def design_at(self, k: int) -> Dict[int, DirectedGraph]:
        if self._design is None:
            return dict(self._layout.design)
        return self._design.at(k)

    def layout_at(self, k: int) -> ENDLayout:
        if self._design is None:
            return self._layout
        return self._layout.with_design(self.design_at(k))

    def at(self, k: int) -> StackedWeightOperator:
        design = self.design_at(k)
        key = tuple(sorted((p, graph.edges) for p, graph in design.items()))
        if key not in self._cache:
            layout = self.layout_at(k)
            weights = {
                p: uniform_column_stochastic_weights(graph.with_self_loops())
                for p, graph in design.items()
            }
            self._cache[key] = StackedWeightOperator(layout, weights)
        return self._cache[key]


class PushSumDiagnosticsRecorder:
    """Accumulates the averaged-recursion, consensus and descent checks step by step.

    L is fixed before the run, either given or taken from ball_subgradient_bound.
    Steps where a copy or the averaged point needs a larger L are recorded as
    bound exceedances.
    """

    def __init__(self, problem: SeparableCost, y_star: np.ndarray, subgradient_bound: float):
        if not subgradient_bound > 0.0:
            raise ValidationError(f"Subgradient bound must be positive, got {subgradient_bound}")
        self._problem = problem
        self._y_star = np.asarray(y_star, dtype=float)
        self._f_star = problem.value(self._y_star)
        self._bound = float(subgradient_bound)
        self._exceedances: List[int] = []
        self._residuals: List[float] = []
        self._consensus: List[float] = []
        self._violations: List[int] = []

    def observe(self, previous: PushSumState, current: PushSumState) -> None:
        layout = current.z.layout
        partition = layout.partition
        if not self._consensus:
            self._consensus.append(_consensus_error(previous))

        before = previous.z.averages()
        after = current.z.averages()
        residual = 0.0
        for p in layout.components:
            mean_gradient = current.g.component(p).sum(axis=0) / layout.copy_count(p)
            residual += float(np.sum((after[p] - before[p] + current.step * mean_gradient) ** 2))
        self._residuals.append(float(np.sqrt(residual)))
        self._consensus.append(_consensus_error(current))

        z_bar = partition.join(before)
        if self._local_bound(current.y, z_bar) > self._bound:
            self._exceedances.append(current.k - 1)

        gamma = current.step
        lhs = _weighted_distance(after, self._y_star, layout)
        spread = sum(
            float(np.linalg.norm(before[p] - current.y.select(p, i)))
            for i in layout.agents
            for p in layout.estimated_components(i)
        )
        rhs = (
            _weighted_distance(before, self._y_star, layout)
            - 2.0 * gamma * (self._problem.value(z_bar) - self._f_star)
            + 4.0 * self._bound * gamma * spread
            + gamma ** 2 * layout.agent_count * self._bound ** 2
        )
        if lhs > rhs + DESCENT_TOLERANCE * max(1.0, abs(lhs), abs(rhs)):
            self._violations.append(current.k - 1)
            logger.debug("Descent inequality violated at k=%d: %.6g > %.6g", current.k - 1, lhs, rhs)

    def report(self) -> PushSumDiagnosticsReport:
        return PushSumDiagnosticsReport(
            averaged_recursion_residuals=list(self._residuals),
            consensus_errors=list(self._consensus),
            descent_violations=list(self._violations),
            subgradient_bound=self._bound,
            bound_exceedances=list(self._exceedances),
        )

    def _local_bound(self, y: StackedVector, z_bar: np.ndarray) -> float:
        partition = self._problem.partition
        bound = 0.0
        for i in self._problem.agents:
            at_copies = {p: y.select(p, i) for p in self._problem.components_of(i)}
            at_average = {p: z_bar[partition.slice_of(p)] for p in self._problem.components_of(i)}
            bound = max(
                bound,
                self._problem.local_subgradient_norm_bound(i, at_copies),
                self._problem.local_subgradient_norm_bound(i, at_average),
            )
        return bound


def push_sum_diagnostics(
    trace: Sequence[PushSumState],
    y_star: np.ndarray,
    problem: SeparableCost,
    subgradient_bound: float,
) -> PushSumDiagnosticsReport:
    """Run the recorder over a stored state trace."""
    recorder = PushSumDiagnosticsRecorder(problem, y_star, subgradient_bound)
    for previous, current in zip(trace, trace[1:]):
        recorder.observe(previous, current)
    return recorder.report()


def ball_subgradient_bound(problem: SeparableCost, center: np.ndarray, radius: float) -> float:
    """L with ‖g‖ ≤ L for every g ∈ ∂f_i(y), every agent i and every view within radius of center."""
    growth = problem.subgradient_growth
    if growth is None:
        raise ValidationError(f"{type(problem).__name__} cannot bound its subgradients; pass L explicitly")
    if radius < 0:
        raise ValidationError(f"Ball radius must be nonnegative, got {radius}")
    parts = problem.partition.split(center)
    at_center = max(
        problem.local_subgradient_norm_bound(i, {p: parts[p] for p in problem.components_of(i)})
        for i in problem.agents
    )
    return at_center + growth * float(radius)


def _consensus_error(state: PushSumState) -> float:
    averages = state.z.averages()
    layout = state.y.layout
    return max(
        (float(np.max(np.linalg.norm(state.y.component(p) - averages[p], axis=1))) for p in layout.components),
        default=0.0,
    )


def _weighted_distance(averages: Dict[int, np.ndarray], y_star: np.ndarray, layout: ENDLayout) -> float:
    """‖z̄ − y⋆‖²_D with D = diag(N_p I)."""
    partition = layout.partition
    return float(sum(
        layout.copy_count(p) * np.sum((averages[p] - y_star[partition.slice_of(p)]) ** 2)
        for p in layout.components
    ))


def _clip_blocks(g: StackedVector, limit: float) -> StackedVector:
    def clip(_, block: np.ndarray) -> np.ndarray:
        norms = np.linalg.norm(block, axis=1, keepdims=True)
        scale = np.minimum(1.0, limit / np.maximum(norms, np.finfo(float).tiny))
        return block * scale

    return g.map_components(clip)
