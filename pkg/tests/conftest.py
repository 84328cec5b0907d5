"""
Pytest configuration and fixtures for END Optimizer tests.
"""

from pathlib import Path

import numpy as np
import pytest
from fastapi.testclient import TestClient

from main import app
from mock_data.data_loader import MockDataLoader
from src.application.dtos.scenario_dto import ScenarioConfig
from src.domain.entities.bipartite_graph import BipartiteGraph
from src.domain.entities.directed_graph import DirectedGraph
from src.domain.entities.least_squares import LassoInstance, LeastSquaresInstance
from src.domain.entities.partition import Partition
from src.domain.services.estimate_design import standard_design, steiner_design_undirected
from src.infrastructure.api.dependencies import get_run_repository
from src.infrastructure.database.repositories.in_memory_run_repository import InMemoryRunRepository

# Five agents on a ring, three scalar components.
# Component 0 is needed by agents 0 and 2, component 1 by 1, 2 and 3, component 2 by 3 and 4.
RING_AGENTS = 5
RING_INTERFERENCE = {0: (0, 2), 1: (1, 2, 3), 2: (3, 4)}
RING_TRUTH = np.array([1.0, -0.5, 2.0])

# Ten agents on a ring with chords to the second and opposite neighbour.
# Agent i measures components i mod 4 and (i + 1) mod 4.
CHORDED_AGENTS = 10

# Six agents on a ring where agents 1 and 5 sense nothing and only relay.
RELAY_AGENTS = 6
RELAY_INTERFERENCE = {0: (0, 2), 1: (3, 4)}


@pytest.fixture
def mock_data() -> MockDataLoader:
    """Loader for the bundled scenario configs and layouts."""
    return MockDataLoader()


@pytest.fixture
def ring_comm() -> DirectedGraph:
    """Undirected ring 0-1-2-3-4-0."""
    return DirectedGraph.undirected(range(RING_AGENTS), [(i, (i + 1) % RING_AGENTS) for i in range(RING_AGENTS)])


@pytest.fixture
def ring_partition() -> Partition:
    return Partition([1, 1, 1])


@pytest.fixture
def ring_interference() -> BipartiteGraph:
    edges = [(p, i) for p, agents in RING_INTERFERENCE.items() for i in agents]
    return BipartiteGraph(range(3), range(RING_AGENTS), edges)


@pytest.fixture
def ring_problem(ring_partition, ring_interference) -> LeastSquaresInstance:
    """Least squares on the ring with three noisy measurements per agent."""
    rng = np.random.Generator(np.random.PCG64(7))
    agent_components = {i: ring_interference.components_of(i) for i in range(RING_AGENTS)}
    output_matrices, measurements = {}, {}
    for i, comps in agent_components.items():
        H = rng.uniform(0.2, 1.0, size=(3, len(comps)))
        H /= np.linalg.norm(H, axis=1, keepdims=True)
        output_matrices[i] = H
        measurements[i] = H @ RING_TRUTH[list(comps)] + rng.normal(0.0, 0.1, size=3)
    return LeastSquaresInstance(ring_partition, agent_components, output_matrices, measurements, truth=RING_TRUTH)


@pytest.fixture
def ring_lasso(ring_problem) -> LassoInstance:
    return LassoInstance(ring_problem, regularization=0.5)


@pytest.fixture
def ring_standard_layout(ring_comm, ring_interference, ring_partition):
    return standard_design(ring_comm, ring_interference, ring_partition)


@pytest.fixture
def ring_steiner_layout(ring_comm, ring_interference, ring_partition):
    return steiner_design_undirected(ring_comm, ring_interference, ring_partition)


@pytest.fixture
def chorded_problem() -> LeastSquaresInstance:
    rng = np.random.Generator(np.random.PCG64(21))
    truth = rng.uniform(-1.0, 1.0, size=4)
    agent_components = {i: tuple(sorted({i % 4, (i + 1) % 4})) for i in range(CHORDED_AGENTS)}
    output_matrices, measurements = {}, {}
    for i, comps in agent_components.items():
        H = rng.uniform(0.2, 1.0, size=(3, 2))
        output_matrices[i] = H
        measurements[i] = H @ truth[list(comps)] + rng.normal(0.0, 0.1, size=3)
    return LeastSquaresInstance(Partition([1, 1, 1, 1]), agent_components, output_matrices, measurements, truth=truth)


@pytest.fixture
def chorded_steiner_layout(chorded_problem):
    pairs = [(i, (i + step) % CHORDED_AGENTS) for i in range(CHORDED_AGENTS) for step in (1, 2, 5)]
    comm = DirectedGraph.undirected(range(CHORDED_AGENTS), pairs)
    return steiner_design_undirected(comm, chorded_problem.interference_graph(), chorded_problem.partition)


@pytest.fixture
def relay_problem() -> LeastSquaresInstance:
    rng = np.random.Generator(np.random.PCG64(11))
    agent_components = {i: tuple(p for p, agents in RELAY_INTERFERENCE.items() if i in agents) for i in range(RELAY_AGENTS)}
    output_matrices, measurements = {}, {}
    for i, comps in agent_components.items():
        H = rng.uniform(0.2, 1.0, size=(2, len(comps)))
        output_matrices[i] = H
        measurements[i] = H @ np.ones(len(comps)) + rng.normal(0.0, 0.1, size=2)
    return LeastSquaresInstance(Partition([1, 1]), agent_components, output_matrices, measurements)


@pytest.fixture
def relay_steiner_layout(relay_problem):
    comm = DirectedGraph.undirected(range(RELAY_AGENTS), [(i, (i + 1) % RELAY_AGENTS) for i in range(RELAY_AGENTS)])
    return steiner_design_undirected(comm, relay_problem.interference_graph(), relay_problem.partition)


@pytest.fixture
def tiny_scenario_config() -> ScenarioConfig:
    """Small field that generates in a handful of draws."""
    return ScenarioConfig(
        agents=8,
        sources=3,
        sensing_radius=0.6,
        comm_radius_min=0.6,
        comm_radius_spread=0.2,
        measurement_size=4,
        seed=3,
    )


@pytest.fixture
def run_repository() -> InMemoryRunRepository:
    return InMemoryRunRepository()


@pytest.fixture(scope="function")
def test_client(run_repository):
    """Create test client for FastAPI app with runs kept in memory."""
    app.dependency_overrides[get_run_repository] = lambda: run_repository
    yield TestClient(app)
    app.dependency_overrides.clear()


@pytest.fixture
def results_dir(tmp_path) -> Path:
    return tmp_path / "results"
