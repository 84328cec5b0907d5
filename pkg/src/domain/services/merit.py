"""
Merit functions measuring distance from the optimal consensus point.
"""

import numpy as np

from src.domain.entities.end_layout import ENDLayout
from src.domain.entities.separable_cost import SeparableCost
from src.domain.entities.stacked_vector import StackedVector
from src.domain.services.cost_evaluation import stacked_gradient, stacked_subgradient, total_cost


def gradient_at_star(problem: SeparableCost, y_star_stacked: StackedVector) -> StackedVector:
    """∇𝒇(𝒚⋆), or the subgradient selection for nonsmooth costs."""
    if problem.differentiable:
        return stacked_gradient(problem, y_star_stacked)
    return stacked_subgradient(problem, y_star_stacked)


def merit_M(problem: SeparableCost, y: StackedVector, y_star: StackedVector, grad_at_star: StackedVector) -> float:
    """max{‖Π_⊥𝒚‖·‖∇𝒇(𝒚⋆)‖, |𝒇(𝒚) − 𝒇(𝒚⋆)|}."""
    consensus_term = y.consensus_residual() * grad_at_star.norm()
    cost_term = abs(total_cost(problem, y) - total_cost(problem, y_star))
    return max(consensus_term, cost_term)


def merit_V(problem: SeparableCost, y: StackedVector, y_star: StackedVector, grad_at_star: StackedVector) -> float:
    """max{‖diag((1/N_p)I)Π_⊥𝒚‖·‖∇𝒇(𝒚⋆)‖, |𝒇(Π_∥𝒚) − 𝒇(𝒚⋆)|}."""
    parallel, _ = y.consensus_project()
    consensus_term = y.weighted_consensus_residual() * grad_at_star.norm()
    cost_term = abs(total_cost(problem, parallel) - total_cost(problem, y_star))
    return max(consensus_term, cost_term)


class MeritEvaluator:
    """Both merit functions against one reference solution, with ∇𝒇(𝒚⋆) cached."""

    def __init__(self, problem: SeparableCost, layout: ENDLayout, y_star: np.ndarray):
        self._problem = problem
        self._y_star = StackedVector.lift(layout, y_star)
        self._grad_at_star = gradient_at_star(problem, self._y_star)
        self._f_star = total_cost(problem, self._y_star)

    @property
    def y_star(self) -> StackedVector:
        return self._y_star

    @property
    def grad_at_star(self) -> StackedVector:
        return self._grad_at_star

    @property
    def f_star(self) -> float:
        return self._f_star

    def merit_M(self, y: StackedVector) -> float:
        consensus_term = y.consensus_residual() * self._grad_at_star.norm()
        return max(consensus_term, abs(total_cost(self._problem, y) - self._f_star))

    def merit_V(self, y: StackedVector) -> float:
        parallel, _ = y.consensus_project()
        consensus_term = y.weighted_consensus_residual() * self._grad_at_star.norm()
        return max(consensus_term, abs(total_cost(self._problem, parallel) - self._f_star))
