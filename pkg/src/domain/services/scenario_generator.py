"""
Random sensor-network scenarios.

Sensors and sources are placed uniformly on the unit square. A sensor measures
every source closer than the sensing radius and can send to every sensor within
its own communication radius. Sensors that sense nothing stay in the network as
relays. When the drawn links do not form a strongly connected graph, radii are
raised along a Euclidean minimum spanning tree, or the draw is rejected if
radius extension is off. Draws use numpy's PCG64 generator in a fixed
order (sensor positions, source positions, comm radii, signals, active set,
then H_i and noise agent by agent), so a seed fully determines the scenario.
"""

import logging
from typing import Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

from src.domain.entities.bipartite_graph import BipartiteGraph
from src.domain.entities.directed_graph import DirectedGraph
from src.domain.entities.least_squares import LassoInstance, LeastSquaresInstance
from src.domain.entities.partition import Partition
from src.domain.entities.scenario import Scenario
from src.domain.value_objects.scenario_parameters import ProblemKind, ScenarioParameters
from src.shared.exceptions import ScenarioGenerationError

logger = logging.getLogger(__name__)

SEED_MODULUS = 2 ** 64


def generate_scenario(parameters: ScenarioParameters, max_attempts: int = 50) -> Scenario:
    """Draw scenarios from the configured seed upwards until one is usable."""
    seed = parameters.seed
    for attempt in range(1, max_attempts + 1):
        scenario, reason = _draw(parameters, seed, attempt)
        if scenario is not None:
            if attempt > 1:
                logger.info("Scenario accepted with seed %d after %d draws", seed, attempt)
            return scenario
        logger.debug("Rejected draw with seed %d: %s", seed, reason)
        seed = (seed + 1) % SEED_MODULUS

    raise ScenarioGenerationError(
        f"No usable scenario in {max_attempts} draws starting from seed {parameters.seed}",
        details=(
            f"sensing_radius={parameters.sensing_radius}, comm_radius_min={parameters.comm_radius_min}, "
            f"extend_radii={parameters.extend_radii}"
        ),
    )


def pairwise_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)


def sensing_sets(sensors: np.ndarray, sources: np.ndarray, radius: float) -> Dict[int, Tuple[int, ...]]:
    """Sources strictly closer than radius, per sensor; empty for relays."""
    distance = pairwise_distances(sensors, sources)
    return {i: tuple(int(p) for p in np.flatnonzero(distance[i] < radius)) for i in range(sensors.shape[0])}


def communication_graph(sensors: np.ndarray, radii: np.ndarray) -> DirectedGraph:
    """Edge i → j whenever j lies within r_c^i of i."""
    distance = pairwise_distances(sensors, sensors)
    n = sensors.shape[0]
    edges = [(i, j) for i in range(n) for j in range(n) if i != j and distance[i, j] <= radii[i]]
    return DirectedGraph(range(n), edges)


def spanning_radii(sensors: np.ndarray, radii: np.ndarray) -> np.ndarray:
    """Raise every radius to the longest minimum-spanning-tree link at that sensor.

    Each tree link then works both ways, so the resulting graph is strongly
    connected. Radii already long enough are kept.
    """
    distance = pairwise_distances(sensors, sensors)
    extended = np.array(radii, dtype=float)
    for i, j, data in nx.minimum_spanning_edges(nx.from_numpy_array(distance), data=True):
        extended[i] = max(extended[i], data["weight"])
        extended[j] = max(extended[j], data["weight"])
    return extended


def _draw(parameters: ScenarioParameters, seed: int, attempt: int) -> Tuple[Optional[Scenario], str]:
    rng = np.random.Generator(np.random.PCG64(seed))
    n, count = parameters.agents, parameters.sources

    sensors = rng.uniform(0.0, 1.0, size=(n, 2))
    sources = rng.uniform(0.0, 1.0, size=(count, 2))
    radii = rng.uniform(
        parameters.comm_radius_min,
        parameters.comm_radius_min + parameters.comm_radius_spread,
        size=n,
    )
    truth = rng.uniform(0.0, 1.0, size=count)
    if parameters.problem is ProblemKind.LASSO and parameters.active_fraction < 1.0:
        active = max(1, int(round(parameters.active_fraction * count)))
        silent = rng.permutation(count)[active:]
        truth[silent] = 0.0

    sensed = sensing_sets(sensors, sources, parameters.sensing_radius)
    unseen = sorted(set(range(count)) - {p for comps in sensed.values() for p in comps})
    if unseen:
        return None, f"sources {unseen} are sensed by nobody"
    comm = communication_graph(sensors, radii)
    if not comm.is_strongly_connected():
        if not parameters.extend_radii:
            return None, "communication graph is not strongly connected"
        radii = spanning_radii(sensors, radii)
        comm = communication_graph(sensors, radii)
        logger.debug("Radii extended along the spanning tree for seed %d", seed)
    relays = [i for i, comps in sensed.items() if not comps]
    if relays:
        logger.debug("Sensors %s sense no source and act as relays", relays)

    output_matrices, measurements = {}, {}
    deviation = float(np.sqrt(parameters.noise_variance))
    for i in range(n):
        comps = list(sensed[i])
        H = rng.uniform(0.0, 1.0, size=(parameters.measurement_size, len(comps)))
        if comps:
            H /= np.linalg.norm(H, axis=1, keepdims=True)
        noise = rng.normal(0.0, deviation, size=parameters.measurement_size)
        output_matrices[i] = H
        measurements[i] = H @ truth[comps] + noise

    partition = Partition([1] * count)
    least_squares = LeastSquaresInstance(partition, sensed, output_matrices, measurements, truth=truth)
    problem = least_squares
    if parameters.problem is ProblemKind.LASSO:
        problem = LassoInstance(least_squares, parameters.regularization)

    interference = BipartiteGraph(range(count), range(n), _pairs(sensed))
    scenario = Scenario(
        parameters=parameters,
        seed_used=seed,
        attempts=attempt,
        sensor_positions=sensors,
        source_positions=sources,
        comm_radii=radii,
        comm=comm,
        interference=interference,
        problem=problem,
    )
    return scenario, ""


def _pairs(sensed: Dict[int, Tuple[int, ...]]) -> List[Tuple[int, int]]:
    return [(p, i) for i, comps in sensed.items() for p in comps]
