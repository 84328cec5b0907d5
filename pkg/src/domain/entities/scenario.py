"""
Scenario Domain Entity.
"""

from typing import Union

import numpy as np

from src.domain.entities.bipartite_graph import BipartiteGraph
from src.domain.entities.directed_graph import DirectedGraph
from src.domain.entities.least_squares import LassoInstance, LeastSquaresInstance
from src.domain.entities.partition import Partition
from src.domain.value_objects.scenario_parameters import ScenarioParameters

Problem = Union[LeastSquaresInstance, LassoInstance]


class Scenario:
    """A generated sensor field: geometry, graphs and the estimation problem."""

    GENERATOR = "PCG64"

    def __init__(
        self,
        parameters: ScenarioParameters,
        seed_used: int,
        attempts: int,
        sensor_positions: np.ndarray,
        source_positions: np.ndarray,
        comm_radii: np.ndarray,
        comm: DirectedGraph,
        interference: BipartiteGraph,
        problem: Problem,
    ):
        """Initialize Scenario entity."""
        self._parameters = parameters
        self._seed_used = seed_used
        self._attempts = attempts
        self._sensor_positions = sensor_positions
        self._source_positions = source_positions
        self._comm_radii = comm_radii
        self._comm = comm
        self._interference = interference
        self._problem = problem

    @property
    def parameters(self) -> ScenarioParameters:
        """Get the requested parameters."""
        return self._parameters

    @property
    def seed_used(self) -> int:
        """Get the seed of the accepted draw."""
        return self._seed_used

    @property
    def attempts(self) -> int:
        """Get the number of draws until acceptance."""
        return self._attempts

    @property
    def sensor_positions(self) -> np.ndarray:
        return self._sensor_positions

    @property
    def source_positions(self) -> np.ndarray:
        return self._source_positions

    @property
    def comm_radii(self) -> np.ndarray:
        return self._comm_radii

    @property
    def comm(self) -> DirectedGraph:
        """Get the directed communication graph."""
        return self._comm

    @property
    def interference(self) -> BipartiteGraph:
        """Get the source/sensor interference graph."""
        return self._interference

    @property
    def partition(self) -> Partition:
        return self._problem.partition

    @property
    def problem(self) -> Problem:
        """Get the estimation problem."""
        return self._problem

    @property
    def truth(self) -> np.ndarray:
        """Get the emitted signals ȳ."""
        return self._problem.truth

    def label(self) -> str:
        p = self._parameters
        return f"{p.problem}-N{p.agents}-P{p.sources}-rs{p.sensing_radius:g}-rc{p.comm_radius_min:g}-seed{p.seed}"

    def __repr__(self) -> str:
        return f"Scenario({self.label()}, seed_used={self._seed_used}, attempts={self._attempts})"
