"""
END ADMM.

Each agent i keeps, per estimated component p and design in-neighbour j,
an auxiliary z_{i,j,p}. One iteration solves the local proximal problem

    min f_i(ỹ_i) + Σ_p Σ_j (ρ/2)‖y_{i,p}‖² − ⟨z_{i,j,p}, y_{i,p}⟩

and then relaxes z_{i,j,p} ← (1−α)z_{i,j,p} − α z_{j,i,p} + 2αρ y_{j,p}.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from src.domain.entities.end_layout import ENDLayout
from src.domain.entities.separable_cost import SeparableCost
from src.domain.entities.stacked_vector import StackedVector
from src.domain.services.locality import LocalityMonitor
from src.shared.exceptions import GraphDisconnectedError, GraphNotUndirectedError, ValidationError

logger = logging.getLogger(__name__)

AuxKey = Tuple[int, int, int]


@dataclass(frozen=True)
class AdmmState:
    """Estimates and auxiliaries z_{i,j,p} keyed by (i, j, p)."""
    estimates: StackedVector
    auxiliaries: Dict[AuxKey, np.ndarray] = field(default_factory=dict)
    alpha: float = 0.5
    rho: float = 1.0
    k: int = 0


def admm_initial_state(
    layout: ENDLayout,
    alpha: float,
    rho: float = 1.0,
    y0: Optional[StackedVector] = None,
) -> AdmmState:
    """Zero auxiliaries on every design in-neighbourhood."""
    if not 0.0 < alpha < 1.0:
        raise ValidationError(f"ADMM relaxation alpha must lie in (0, 1), got {alpha}")
    if rho <= 0.0:
        raise ValidationError(f"ADMM penalty rho must be positive, got {rho}")
    for p in layout.components:
        graph = layout.design_graph(p)
        if not graph.is_symmetric():
            raise GraphNotUndirectedError(f"ADMM needs an undirected design graph for component {p}")
        if not graph.is_connected_undirected():
            raise GraphDisconnectedError(f"ADMM needs a connected design graph for component {p}")

    auxiliaries = {
        (i, j, p): np.zeros(layout.partition.size_of(p))
        for p in layout.components
        for i in layout.copies(p)
        for j in layout.design_in_neighbors(p, i)
    }
    return AdmmState(
        estimates=y0 if y0 is not None else StackedVector.zeros(layout),
        auxiliaries=auxiliaries,
        alpha=alpha,
        rho=rho,
    )


def admm_step(
    state: AdmmState,
    problem: SeparableCost,
    layout: ENDLayout,
    monitor: Optional[LocalityMonitor] = None,
) -> AdmmState:
    """One synchronous END ADMM iteration."""
    blocks = {p: np.zeros((layout.copy_count(p), layout.partition.size_of(p))) for p in layout.components}
    for i in layout.agents:
        penalty, linear = {}, {}
        for p in layout.estimated_components(i):
            neighbors = layout.design_in_neighbors(p, i)
            penalty[p] = state.rho * len(neighbors)
            linear[p] = sum(
                (state.auxiliaries[(i, j, p)] for j in neighbors),
                np.zeros(layout.partition.size_of(p)),
            )
        if monitor is not None:
            monitor.record_local_view(i)
        for p, value in problem.local_argmin(i, penalty, linear).items():
            blocks[p][layout.local_index(p, i)] = value
    estimates = StackedVector(layout, blocks)

    if monitor is not None:
        monitor.begin_round()
    alpha, rho = state.alpha, state.rho
    auxiliaries = {}
    for (i, j, p), z_ijp in state.auxiliaries.items():
        if monitor is not None:
            monitor.record_read(i, j, p)
        received = state.auxiliaries[(j, i, p)]
        auxiliaries[(i, j, p)] = (1.0 - alpha) * z_ijp - alpha * received + 2.0 * alpha * rho * estimates.select(p, j)

    return AdmmState(estimates=estimates, auxiliaries=auxiliaries, alpha=alpha, rho=rho, k=state.k + 1)
