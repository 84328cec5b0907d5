"""
Weight Matrix Domain Entity.
"""

import numpy as np

from src.domain.entities.directed_graph import DirectedGraph
from src.shared.exceptions import ValidationError


class WeightMatrix:
    """Dense nonnegative matrix compliant with a directed graph.

    Entry (u, v) is positive iff (v, u) is an edge, so row u collects what u
    receives. Rows and columns follow the graph's vertex order.
    """

    def __init__(self, graph: DirectedGraph, entries: np.ndarray):
        """Initialize WeightMatrix entity."""
        matrix = np.array(entries, dtype=float)
        size = graph.vertex_count
        if matrix.shape != (size, size):
            raise ValidationError(f"Weight matrix must be {size}x{size}, got {matrix.shape}")
        if np.any(matrix < 0) or not np.all(np.isfinite(matrix)):
            raise ValidationError("Weight matrix entries must be finite and nonnegative")

        vertices = graph.vertices
        for a, u in enumerate(vertices):
            for b, v in enumerate(vertices):
                if (matrix[a, b] > 0) != graph.has_edge(v, u):
                    raise ValidationError(
                        f"Weight ({u}, {v}) = {matrix[a, b]} is not compliant with the graph"
                    )

        matrix.setflags(write=False)
        self._graph = graph
        self._entries = matrix

    @property
    def graph(self) -> DirectedGraph:
        """Get the graph the weights comply with."""
        return self._graph

    @property
    def entries(self) -> np.ndarray:
        """Get read-only dense entries."""
        return self._entries

    @property
    def size(self) -> int:
        return self._entries.shape[0]

    def weight(self, u: int, v: int) -> float:
        """Get the weight u puts on what it receives from v."""
        return float(self._entries[self._graph.index_of(u), self._graph.index_of(v)])

    def is_row_stochastic(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self._entries.sum(axis=1) - 1.0)) <= tol)

    def is_column_stochastic(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self._entries.sum(axis=0) - 1.0)) <= tol)

    def is_symmetric(self, tol: float = 0.0) -> bool:
        return bool(np.max(np.abs(self._entries - self._entries.T)) <= tol)

    def min_positive_entry(self) -> float:
        positive = self._entries[self._entries > 0]
        return float(positive.min()) if positive.size else 0.0

    @classmethod
    def identity(cls, graph: DirectedGraph) -> "WeightMatrix":
        """Identity weights on a graph whose only edges are self-loops."""
        return cls(graph, np.eye(graph.vertex_count))

    def __repr__(self) -> str:
        return f"WeightMatrix(vertices={list(self._graph.vertices)})"
