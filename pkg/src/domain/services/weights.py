"""
Weight matrix constructors.
"""

import numpy as np

from src.domain.entities.directed_graph import DirectedGraph
from src.domain.entities.weight_matrix import WeightMatrix
from src.shared.exceptions import GraphDisconnectedError, MissingSelfLoopError


def metropolis_weights(g: DirectedGraph) -> WeightMatrix:
    """Symmetric doubly stochastic weights on an undirected connected graph.

    Off-diagonal entries are 1/(1 + max(deg u, deg v)) with degrees counted
    without self-loops; the diagonal takes the remaining mass. The returned
    matrix complies with g plus a self-loop at every vertex.
    """
    if not g.is_connected_undirected():
        raise GraphDisconnectedError("Metropolis weights need a connected undirected graph")

    loops = g.with_self_loops()
    vertices = g.vertices
    degree = {v: len(g.out_neighbors(v) - {v}) for v in vertices}
    entries = np.zeros((len(vertices), len(vertices)))
    for u, v in g.edges:
        if u != v:
            entries[g.index_of(u), g.index_of(v)] = 1.0 / (1.0 + max(degree[u], degree[v]))
    np.fill_diagonal(entries, 1.0 - entries.sum(axis=1))
    return WeightMatrix(loops, entries)


def uniform_column_stochastic_weights(g: DirectedGraph) -> WeightMatrix:
    """Column v spreads 1/out-degree(v) over the out-neighbours of v, itself included."""
    missing = [v for v in g.vertices if not g.has_edge(v, v)]
    if missing:
        raise MissingSelfLoopError(f"Vertices {missing} have no self-loop")

    entries = np.zeros((g.vertex_count, g.vertex_count))
    for v in g.vertices:
        targets = g.out_neighbors(v)
        share = 1.0 / len(targets)
        for w in targets:
            entries[g.index_of(w), g.index_of(v)] = share
    return WeightMatrix(g, entries)
