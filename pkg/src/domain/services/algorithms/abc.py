"""
END ABC template, its convergence conditions and the AugDGM preset.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from src.domain.entities.end_layout import ENDLayout
from src.domain.entities.separable_cost import SeparableCost
from src.domain.entities.stacked_vector import StackedVector, StackedWeightOperator
from src.domain.services.cost_evaluation import stacked_gradient
from src.domain.services.locality import LocalityMonitor
from src.domain.value_objects.algorithm_reports import AbcConditionReport
from src.shared.exceptions import ConditionsNotVerifiedError, ValidationError

logger = logging.getLogger(__name__)

CONDITION_TOLERANCE = 1e-9


class AbcMatrices:
    """Per-component N_p × N_p blocks A_p, B_p, C_p, D_p and the step γ."""

    def __init__(
        self,
        layout: ENDLayout,
        A: Dict[int, np.ndarray],
        B: Dict[int, np.ndarray],
        C: Dict[int, np.ndarray],
        D: Dict[int, np.ndarray],
        gamma: float,
    ):
        if gamma <= 0:
            raise ValidationError("ABC step size must be positive")
        for name, family in (("A", A), ("B", B), ("C", C), ("D", D)):
            for p in layout.components:
                size = layout.copy_count(p)
                if p not in family or np.shape(family[p]) != (size, size):
                    raise ValidationError(f"{name}_{p} must be a {size}x{size} matrix")
        self._layout = layout
        self.A = {p: np.asarray(A[p], dtype=float) for p in layout.components}
        self.B = {p: np.asarray(B[p], dtype=float) for p in layout.components}
        self.C = {p: np.asarray(C[p], dtype=float) for p in layout.components}
        self.D = {p: np.asarray(D[p], dtype=float) for p in layout.components}
        self.gamma = float(gamma)

    @property
    def layout(self) -> ENDLayout:
        return self._layout

    def apply(self, family: Dict[int, np.ndarray], y: StackedVector) -> StackedVector:
        """Block-diagonal product (M_p ⊗ I) 𝒚_p."""
        return y.map_components(lambda p, block: family[p] @ block)


@dataclass(frozen=True)
class AbcState:
    """Iterates y, z, the running sum of y^1..y^k and the counter k."""
    y: StackedVector
    z: StackedVector
    running_sum: StackedVector
    k: int = 0

    @property
    def y_avg(self) -> StackedVector:
        if self.k == 0:
            return self.y
        return self.running_sum * (1.0 / self.k)


def abc_initial_state(layout: ENDLayout, y0: Optional[StackedVector] = None) -> AbcState:
    zero = StackedVector.zeros(layout)
    return AbcState(y=y0 if y0 is not None else zero, z=zero, running_sum=zero, k=0)


def abc_step(state: AbcState, matrices: AbcMatrices, problem: SeparableCost) -> AbcState:
    """𝒚⁺ = A𝒚 − γB∇𝒇(𝒚) − 𝒛; 𝒛⁺ = 𝒛 + C𝒚⁺."""
    gradient = stacked_gradient(problem, state.y)
    y_next = (
        matrices.apply(matrices.A, state.y)
        - matrices.apply(matrices.B, gradient) * matrices.gamma
        - state.z
    )
    z_next = state.z + matrices.apply(matrices.C, y_next)
    return AbcState(y=y_next, z=z_next, running_sum=state.running_sum + y_next, k=state.k + 1)


def check_abc_conditions(matrices: AbcMatrices, layout: ENDLayout, tol: float = CONDITION_TOLERANCE) -> AbcConditionReport:
    """Verify the five ABC conditions component by component."""
    failures: List[str] = []
    flags = {name: True for name in ("c1", "c2", "c3", "c4", "c5")}

    def fail(name: str, p: int, message: str) -> None:
        flags[name] = False
        failures.append(f"{name.upper()} (component {p}): {message}")

    lambda_twos, lambda_min_d, b_gaps = [], [], []
    for p in layout.components:
        A, B, C, D = matrices.A[p], matrices.B[p], matrices.C[p], matrices.D[p]
        n = A.shape[0]
        ones = np.ones(n)
        identity = np.eye(n)

        symmetric = {name: _is_symmetric(M, tol) for name, M in (("B", B), ("C", C), ("D", D))}
        if np.max(np.abs(A - B @ D)) > tol:
            fail("c1", p, "A != BD")
        if not symmetric["B"] or _min_eig(B) < -tol:
            fail("c1", p, "B is not positive semidefinite")
        if not symmetric["D"] or _min_eig(D) <= tol:
            fail("c1", p, "D is not positive definite")

        if np.max(np.abs(D @ ones - ones)) > tol or np.max(np.abs(B @ ones - ones)) > tol:
            fail("c2", p, "B or D does not fix the consensus space")

        if not symmetric["C"]:
            fail("c3", p, "C is not symmetric")
        else:
            eigenvalues = np.linalg.eigvalsh((C + C.T) / 2.0)
            if eigenvalues[0] < -tol:
                fail("c3", p, "C is not positive semidefinite")
            if int(np.sum(eigenvalues <= tol)) != 1 or np.linalg.norm(C @ ones) > tol:
                fail("c3", p, "null space of C is not the consensus space")
            if n >= 2:
                lambda_twos.append(float(eigenvalues[1]))

        if np.max(np.abs(B @ C - C @ B)) > tol:
            fail("c4", p, "B and C do not commute")

        if symmetric["B"] and symmetric["D"]:
            root_b = _psd_sqrt(B)
            margin = identity - C / 2.0 - root_b @ D @ root_b
            if _min_eig((margin + margin.T) / 2.0) < -tol:
                fail("c5", p, "I - C/2 - sqrt(B) D sqrt(B) is not positive semidefinite")
        else:
            fail("c5", p, "requires symmetric B and D")

        if symmetric["D"]:
            lambda_min_d.append(_min_eig(D))
        b_gaps.append(float(np.linalg.norm(B - np.outer(ones, ones) / n, 2)))

    return AbcConditionReport(
        c1=flags["c1"],
        c2=flags["c2"],
        c3=flags["c3"],
        c4=flags["c4"],
        c5=flags["c5"],
        lambda_lower=min(lambda_twos) if lambda_twos else float("inf"),
        lambda_min_d=min(lambda_min_d) if lambda_min_d else 0.0,
        b_minus_parallel_norm=max(b_gaps) if b_gaps else 0.0,
        failures=tuple(failures),
    )


def augdgm_matrices(weights: StackedWeightOperator, gamma: float) -> AbcMatrices:
    """A = B = W², C = (I − W)², D = I per component."""
    layout = weights.layout
    A, C, D = {}, {}, {}
    for p in layout.components:
        W = weights.matrix(p)
        if not _is_symmetric(W, 1e-12):
            raise ValidationError(f"AugDGM needs symmetric weights, component {p} is not")
        identity = np.eye(W.shape[0])
        A[p] = W @ W
        C[p] = (identity - W) @ (identity - W)
        D[p] = identity
    return AbcMatrices(layout, A, dict(A), C, D, gamma)


def abc_rate_bound(
    y0: StackedVector,
    y_star: StackedVector,
    grad_at_star: StackedVector,
    matrices: AbcMatrices,
    report: AbcConditionReport,
) -> Callable[[int], float]:
    """k ↦ h(𝒚⋆, 2𝒛⋆)/(2k) with 𝒛⋆ = −∇𝒇(𝒚⋆)."""
    if not report.passed:
        raise ConditionsNotVerifiedError(
            "Rate bound requested for matrices that fail the convergence conditions",
            details="; ".join(report.failures),
        )
    gamma = matrices.gamma
    difference = y0 - y_star
    weighted = matrices.apply(matrices.D, difference)
    distance_term = difference.dot(weighted) / gamma

    if np.isinf(report.lambda_lower):
        dual_term = 0.0
    else:
        dual_term = gamma * report.b_minus_parallel_norm / report.lambda_lower * 4.0 * grad_at_star.norm() ** 2
    h = distance_term + dual_term

    def bound(k: int) -> float:
        if k < 1:
            raise ValidationError("Rate bound is defined for k >= 1")
        return h / (2.0 * k)

    return bound


@dataclass(frozen=True)
class AugDgmState:
    """Estimates y, tracked gradients v and the last local gradient."""
    y: StackedVector
    v: StackedVector
    gradient: StackedVector
    k: int = 0


def augdgm_initial_state(
    layout: ENDLayout,
    weights: StackedWeightOperator,
    problem: SeparableCost,
    gamma: float,
) -> AugDgmState:
    """y⁰ = 0 and v⁰ = 𝑾∇𝒇(y⁰)."""
    smoothness = problem.smoothness
    if gamma <= 0 or (smoothness is not None and gamma >= 1.0 / smoothness):
        logger.warning("AugDGM step %.4g is outside (0, 1/L); convergence is not guaranteed", gamma)
    y0 = StackedVector.zeros(layout)
    gradient = stacked_gradient(problem, y0)
    return AugDgmState(y=y0, v=weights.apply(gradient), gradient=gradient)


def augdgm_step(
    state: AugDgmState,
    weights: StackedWeightOperator,
    problem: SeparableCost,
    gamma: float,
    monitor: Optional[LocalityMonitor] = None,
) -> AugDgmState:
    """y⁺ = 𝑾(y − γv); v⁺ = 𝑾(v + ∇𝒇(y⁺) − ∇𝒇(y)); two mixing rounds."""
    if monitor is not None:
        monitor.begin_round()
    y_next = weights.apply(state.y - state.v * gamma, monitor)
    gradient_next = stacked_gradient(problem, y_next, monitor)
    if monitor is not None:
        monitor.begin_round()
    v_next = weights.apply(state.v + gradient_next - state.gradient, monitor)
    return AugDgmState(y=y_next, v=v_next, gradient=gradient_next, k=state.k + 1)


def _is_symmetric(M: np.ndarray, tol: float) -> bool:
    return bool(np.max(np.abs(M - M.T)) <= tol)


def _min_eig(M: np.ndarray) -> float:
    return float(np.min(np.linalg.eigvalsh((M + M.T) / 2.0)))


def _psd_sqrt(M: np.ndarray) -> np.ndarray:
    eigenvalues, vectors = np.linalg.eigh((M + M.T) / 2.0)
    return (vectors * np.sqrt(np.clip(eigenvalues, 0.0, None))) @ vectors.T
