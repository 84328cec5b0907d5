"""
Time-Varying Graph Domain Entity.
"""

from typing import Callable, Iterable, Sequence

from src.domain.entities.directed_graph import DirectedGraph, Edge
from src.shared.exceptions import ValidationError


class TimeVaryingGraph:
    """Sequence of directed graphs over a fixed vertex set, indexed by iteration k."""

    def __init__(self, vertices: Iterable[int], edge_sequence: Callable[[int], Iterable[Edge]]):
        """Initialize TimeVaryingGraph entity."""
        self._vertices = tuple(sorted(set(vertices)))
        if not self._vertices:
            raise ValidationError("Time-varying graph must have at least one vertex")
        self._edge_sequence = edge_sequence

    @property
    def vertices(self):
        """Get the fixed vertex set."""
        return self._vertices

    def at(self, k: int) -> DirectedGraph:
        """Get the graph active at iteration k."""
        if k < 0:
            raise ValidationError("Iteration index must be non-negative")
        return DirectedGraph(self._vertices, self._edge_sequence(k))

    def window_union(self, start: int, length: int) -> DirectedGraph:
        """Union of graphs for k in [start, start + length - 1]."""
        edges = set()
        for k in range(start, start + length):
            edges |= self.at(k).edges
        return DirectedGraph(self._vertices, edges)

    def is_q_strongly_connected(self, q: int, horizon: int) -> bool:
        """Check strong connectivity of every complete q-window inside [0, horizon)."""
        if q <= 0:
            raise ValidationError("Window length q must be positive")
        if horizon < q:
            raise ValidationError("Horizon must cover at least one window")
        for window in range(horizon // q):
            if not self.window_union(window * q, q).is_strongly_connected():
                return False
        return True

    def map_graphs(self, transform: Callable[[DirectedGraph], DirectedGraph]) -> "TimeVaryingGraph":
        """Apply a per-iteration transform keeping the vertex set."""
        return TimeVaryingGraph(self._vertices, lambda k: transform(self.at(k)).edges)

    @classmethod
    def constant(cls, graph: DirectedGraph) -> "TimeVaryingGraph":
        edges = graph.edges
        return cls(graph.vertices, lambda k: edges)

    @classmethod
    def periodic(cls, graphs: Sequence[DirectedGraph]) -> "TimeVaryingGraph":
        """Cycle through the given graphs, which must share one vertex set."""
        if not graphs:
            raise ValidationError("Periodic sequence needs at least one graph")
        vertices = graphs[0].vertices
        for graph in graphs[1:]:
            if graph.vertices != vertices:
                raise ValidationError("All graphs in a sequence must share the vertex set")
        edge_sets = [graph.edges for graph in graphs]
        return cls(vertices, lambda k: edge_sets[k % len(edge_sets)])


def is_q_strongly_connected(tv: TimeVaryingGraph, q: int, horizon: int) -> bool:
    return tv.is_q_strongly_connected(q, horizon)
