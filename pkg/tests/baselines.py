"""
Sparsity-unaware reference algorithms for equivalence tests.

Every agent keeps the whole y as a row of an (N, n) array and mixes over the
communication graph. On the standard layout the END algorithms must follow
these trajectories.
"""

from typing import Dict, List, Tuple

import numpy as np

from src.domain.entities.directed_graph import DirectedGraph
from src.domain.entities.least_squares import LeastSquaresInstance
from src.domain.entities.separable_cost import SeparableCost
from src.domain.services.algorithms.push_sum import diminishing_step
from src.domain.services.weights import metropolis_weights, uniform_column_stochastic_weights


def full_gradient(problem: SeparableCost, i: int, y: np.ndarray) -> np.ndarray:
    """∇f_i over the whole vector, zero outside 𝒩_I(i)."""
    partition = problem.partition
    gradient = np.zeros(partition.total_size)
    for p, block in problem.agent_subgradient(i, partition.split(y)).items():
        gradient[partition.slice_of(p)] = block
    return gradient


def _gradients(problem: SeparableCost, Y: np.ndarray) -> np.ndarray:
    return np.vstack([full_gradient(problem, i, Y[i]) for i in problem.agents])


def augdgm_full(problem: SeparableCost, comm: DirectedGraph, gamma: float, iterations: int) -> List[np.ndarray]:
    """Classic AugDGM; returns Y^0..Y^iterations."""
    W = metropolis_weights(comm).entries
    Y = np.zeros((comm.vertex_count, problem.partition.total_size))
    gradient = _gradients(problem, Y)
    V = W @ gradient
    history = [Y]
    for _ in range(iterations):
        Y_next = W @ (Y - gamma * V)
        gradient_next = _gradients(problem, Y_next)
        V = W @ (V + gradient_next - gradient)
        Y, gradient = Y_next, gradient_next
        history.append(Y)
    return history


def push_sum_full(problem: SeparableCost, comm: DirectedGraph, iterations: int, scale: float = 1.0) -> List[np.ndarray]:
    """Classic subgradient push-sum with γ^k = scale·k^-0.51; returns the ratios y^0..y^iterations."""
    W = uniform_column_stochastic_weights(comm.with_self_loops()).entries
    n = problem.partition.total_size
    q = np.ones(comm.vertex_count)
    Z = np.zeros((comm.vertex_count, n))
    history = [Z]
    for k in range(iterations):
        q = W @ q
        Wz = W @ Z
        Y = Wz / q[:, None]
        Z = Wz - diminishing_step(k, scale) * _gradients(problem, Y)
        history.append(Y)
    return history


def admm_full(
    problem: LeastSquaresInstance, comm: DirectedGraph, alpha: float, rho: float, iterations: int
) -> List[np.ndarray]:
    """Relaxed consensus ADMM for least squares, auxiliaries on every comm edge."""
    partition = problem.partition
    n = partition.total_size
    neighbors = {i: sorted(comm.in_neighbors(i) - {i}) for i in comm.vertices}
    Z: Dict[Tuple[int, int], np.ndarray] = {(i, j): np.zeros(n) for i in comm.vertices for j in neighbors[i]}

    local = {}
    for i in problem.agents:
        H = np.zeros((problem.output_matrix(i).shape[0], n))
        start = 0
        for p in problem.components_of(i):
            width = partition.size_of(p)
            H[:, partition.slice_of(p)] = problem.output_matrix(i)[:, start:start + width]
            start += width
        Q = 2.0 * H.T @ H + rho * len(neighbors[i]) * np.eye(n)
        local[i] = (Q, 2.0 * H.T @ problem.measurement(i))

    history = [np.zeros((comm.vertex_count, n))]
    for _ in range(iterations):
        Y = np.vstack([
            np.linalg.solve(local[i][0], local[i][1] + sum((Z[(i, j)] for j in neighbors[i]), np.zeros(n)))
            for i in problem.agents
        ])
        Z = {
            (i, j): (1.0 - alpha) * z - alpha * Z[(j, i)] + 2.0 * alpha * rho * Y[j]
            for (i, j), z in Z.items()
        }
        history.append(Y)
    return history
