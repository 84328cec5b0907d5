"""
Evaluation of partially separable costs on stacked vectors.
"""

from typing import Dict, Optional

import numpy as np

from src.domain.entities.constraint_coupled import ConstraintCoupledInstance
from src.domain.entities.least_squares import LassoInstance
from src.domain.entities.separable_cost import SeparableCost, View
from src.domain.entities.stacked_vector import StackedVector
from src.domain.services.locality import LocalityMonitor
from src.shared.exceptions import EntityNotFoundError, NotDifferentiableError


def _agent_view(problem: SeparableCost, y: StackedVector, i: int) -> View:
    estimated = set(y.layout.estimated_components(i))
    missing = [p for p in problem.components_of(i) if p not in estimated]
    if missing:
        raise EntityNotFoundError("Estimate", f"(components={missing}, agent={i})")
    return y.agent_view(i)


def total_cost(problem: SeparableCost, y: StackedVector) -> float:
    """𝒇(𝒚) = Σ_i f_i(ỹ_i)."""
    return float(sum(problem.value_i(i, _agent_view(problem, y, i)) for i in problem.agents))


def _stack_blocks(problem: SeparableCost, y: StackedVector, oracle, monitor: Optional[LocalityMonitor]) -> StackedVector:
    layout = y.layout
    blocks = {p: np.zeros_like(y.component(p)) for p in layout.components}
    for i in problem.agents:
        if monitor is not None:
            monitor.record_local_view(i)
        for p, g in oracle(i, _agent_view(problem, y, i)).items():
            blocks[p][layout.local_index(p, i)] = g
    return StackedVector(layout, blocks)


def stacked_gradient(problem: SeparableCost, y: StackedVector, monitor: Optional[LocalityMonitor] = None) -> StackedVector:
    """∇𝒇(𝒚): block (i, p) is ∇_{y_p} f_i(ỹ_i), zero when f_i does not depend on p."""
    if not problem.differentiable:
        raise NotDifferentiableError(
            f"{type(problem).__name__} is not differentiable; use stacked_subgradient instead"
        )
    return _stack_blocks(problem, y, problem.agent_gradient, monitor)


def stacked_subgradient(problem: SeparableCost, y: StackedVector, monitor: Optional[LocalityMonitor] = None) -> StackedVector:
    """A subgradient selection of 𝒇 at 𝒚, with the same zero blocks as the gradient."""
    return _stack_blocks(problem, y, problem.agent_subgradient, monitor)


def lasso_subgradient(problem: LassoInstance, y: StackedVector, p: int, i: int) -> np.ndarray:
    """Quadratic gradient plus λ/|𝒩^out_I(p)| · sign(𝒚_{i,p}), sign(0) = 0."""
    return problem.subgradient_i(i, _agent_view(problem, y, i), p)


def dual_subgradient(problem: ConstraintCoupledInstance, dual_view: View, i: int) -> Dict[int, np.ndarray]:
    """g_{i,p} = A_{p,i}x_i⋆ − a_{p,i} for p ∈ 𝒩_I(i)."""
    return problem.dual_subgradient(i, dual_view)
