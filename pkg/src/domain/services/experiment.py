"""
Experiment orchestration on generated scenarios.
"""

import logging
from typing import Optional, Tuple

import numpy as np

from src.domain.entities.directed_graph import DirectedGraph
from src.domain.entities.end_layout import ENDLayout
from src.domain.entities.scenario import Scenario
from src.domain.services.algorithms.runner import AlgorithmConfig, StopRule, build_runner, run_algorithm
from src.domain.services.estimate_design import standard_design, steiner_design_directed, steiner_design_undirected
from src.domain.services.locality import LocalityMonitor
from src.domain.services.reference_solver import centralized_reference
from src.domain.value_objects.design_mode import AlgorithmKind, EdgePolicy, ExperimentDesignMode
from src.domain.value_objects.run_trace import RunTrace
from src.shared.exceptions import IncompatibleExperimentError

logger = logging.getLogger(__name__)


def experiment_comm(scenario: Scenario, algorithm: AlgorithmKind, symmetrize: bool) -> Tuple[DirectedGraph, bool]:
    """Communication graph an algorithm may use, and whether it was symmetrized."""
    comm = scenario.comm
    if not algorithm.needs_undirected_design:
        return comm, False
    if comm.is_symmetric():
        return comm, False
    if not symmetrize:
        raise IncompatibleExperimentError(
            f"{algorithm} needs an undirected communication graph",
            details="enable symmetrization to keep only bidirectional links",
        )
    core = comm.symmetric_core()
    if not core.is_connected_undirected():
        raise IncompatibleExperimentError(
            "Symmetrized communication graph is disconnected",
            details=f"{len(comm.asymmetric_edges())} one-way links were dropped",
        )
    logger.info("Communication graph symmetrized for %s: %d one-way links dropped", algorithm, len(comm.asymmetric_edges()))
    return core, True


def experiment_layout(
    scenario: Scenario,
    design_mode: ExperimentDesignMode,
    algorithm: AlgorithmKind,
    symmetrize: bool = False,
    edge_policy: EdgePolicy = EdgePolicy.ALL_AVAILABLE,
) -> Tuple[ENDLayout, bool]:
    """Standard layout, or the Steiner design that suits the algorithm."""
    comm, symmetrized = experiment_comm(scenario, algorithm, symmetrize)
    if design_mode is ExperimentDesignMode.STANDARD:
        layout = standard_design(comm, scenario.interference, scenario.partition)
    elif algorithm.needs_undirected_design:
        layout = steiner_design_undirected(comm, scenario.interference, scenario.partition, edge_policy)
    else:
        layout = steiner_design_directed(comm, scenario.interference, scenario.partition)
    layout.require_usable()
    return layout, symmetrized


def run_experiment(
    scenario: Scenario,
    design_mode: ExperimentDesignMode,
    algorithm: AlgorithmKind,
    stop: StopRule,
    symmetrize: bool = False,
    config: Optional[AlgorithmConfig] = None,
    y_star: Optional[np.ndarray] = None,
    monitor: Optional[LocalityMonitor] = None,
    divergence_bound: float = 1e6,
) -> RunTrace:
    """Synthesize the layout, run the algorithm to the stopping rule and return its trace."""
    layout, symmetrized = experiment_layout(scenario, design_mode, algorithm, symmetrize)
    if y_star is None:
        y_star, _ = centralized_reference(scenario.problem)

    config = config or AlgorithmConfig(kind=algorithm)
    if config.kind is not algorithm:
        raise IncompatibleExperimentError(f"Algorithm config is for {config.kind}, not {algorithm}")
    runner = build_runner(layout, scenario.problem, config, monitor)

    logger.info("Running %s with %s design on %s", algorithm, design_mode, scenario.label())
    return run_algorithm(
        runner,
        y_star,
        stop,
        divergence_bound=divergence_bound,
        symmetrized=symmetrized,
        seed=scenario.seed_used,
    )
