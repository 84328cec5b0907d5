"""
Directed Graph Domain Entity.
"""

from typing import Dict, FrozenSet, Iterable, Tuple

import networkx as nx

from src.shared.exceptions import (
    EntityNotFoundError,
    GraphNotUndirectedError,
    ValidationError,
)

Edge = Tuple[int, int]


class DirectedGraph:
    """Immutable directed graph; edge (u, v) means v can receive from u.

    Vertices are integer labels kept in ascending order. The position of a
    label in that order is the dense index used by weight matrices.
    """

    def __init__(self, vertices: Iterable[int], edges: Iterable[Edge] = ()):
        """Initialize DirectedGraph entity."""
        vertex_tuple = tuple(sorted(set(int(v) for v in vertices)))
        if not vertex_tuple:
            raise ValidationError("Graph must have at least one vertex")

        edge_set = frozenset((int(u), int(v)) for u, v in edges)
        vertex_set = frozenset(vertex_tuple)
        for u, v in edge_set:
            if u not in vertex_set or v not in vertex_set:
                raise ValidationError(f"Edge ({u}, {v}) has an endpoint outside the vertex set")

        self._vertices = vertex_tuple
        self._vertex_set = vertex_set
        self._edges = edge_set
        self._index: Dict[int, int] = {v: position for position, v in enumerate(vertex_tuple)}

    @property
    def vertices(self) -> Tuple[int, ...]:
        """Get vertices in ascending order."""
        return self._vertices

    @property
    def edges(self) -> FrozenSet[Edge]:
        """Get edge set."""
        return self._edges

    @property
    def vertex_count(self) -> int:
        """Get number of vertices."""
        return len(self._vertices)

    def sorted_edges(self) -> Tuple[Edge, ...]:
        """Get edges sorted by (u, v)."""
        return tuple(sorted(self._edges))

    def has_vertex(self, v: int) -> bool:
        return v in self._vertex_set

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edges

    def index_of(self, v: int) -> int:
        """Get dense storage index of a vertex."""
        try:
            return self._index[v]
        except KeyError:
            raise EntityNotFoundError("Vertex", str(v)) from None

    def in_neighbors(self, v: int) -> FrozenSet[int]:
        """Get { u | (u, v) is an edge }."""
        self._require_vertex(v)
        return frozenset(u for u, w in self._edges if w == v)

    def out_neighbors(self, v: int) -> FrozenSet[int]:
        """Get { w | (v, w) is an edge }."""
        self._require_vertex(v)
        return frozenset(w for u, w in self._edges if u == v)

    def has_self_loops(self) -> bool:
        """Check whether every vertex carries an explicit self-loop."""
        return all((v, v) in self._edges for v in self._vertices)

    def is_symmetric(self) -> bool:
        """Check whether every edge has its reverse."""
        return all((v, u) in self._edges for u, v in self._edges)

    def is_strongly_connected(self) -> bool:
        """Check whether every ordered vertex pair is joined by a path."""
        if self.vertex_count == 1:
            return True
        return nx.is_strongly_connected(self.to_networkx())

    def is_connected_undirected(self) -> bool:
        """Check connectivity of an undirected (symmetric) graph."""
        if not self.is_symmetric():
            raise GraphNotUndirectedError(
                "Connectivity of an undirected graph requested on a directed graph",
                details=str(self.asymmetric_edges()[:5]),
            )
        if self.vertex_count == 1:
            return True
        return nx.is_weakly_connected(self.to_networkx())

    def asymmetric_edges(self) -> Tuple[Edge, ...]:
        """Get edges whose reverse is missing."""
        return tuple(sorted((u, v) for u, v in self._edges if (v, u) not in self._edges))

    def restrict(self, subset: Iterable[int]) -> "DirectedGraph":
        """Restrict the graph to a vertex subset."""
        subset_set = frozenset(subset)
        if not subset_set:
            raise ValidationError("Cannot restrict a graph to an empty vertex set")
        outside = subset_set - self._vertex_set
        if outside:
            raise ValidationError(f"Vertices {sorted(outside)} are not in the graph")
        return DirectedGraph(
            subset_set,
            ((u, v) for u, v in self._edges if u in subset_set and v in subset_set),
        )

    def union(self, other: "DirectedGraph") -> "DirectedGraph":
        """Vertex and edge union."""
        return DirectedGraph(self._vertex_set | other._vertex_set, self._edges | other._edges)

    def intersect_edges(self, other: "DirectedGraph") -> "DirectedGraph":
        """Keep this vertex set and the edges present in both graphs."""
        return DirectedGraph(self._vertices, self._edges & other._edges)

    def with_self_loops(self) -> "DirectedGraph":
        """Add an explicit self-loop at every vertex."""
        return DirectedGraph(self._vertices, self._edges | {(v, v) for v in self._vertices})

    def without_self_loops(self) -> "DirectedGraph":
        return DirectedGraph(self._vertices, ((u, v) for u, v in self._edges if u != v))

    def symmetric_core(self) -> "DirectedGraph":
        """Keep only edges whose reverse is also present."""
        return DirectedGraph(self._vertices, ((u, v) for u, v in self._edges if (v, u) in self._edges))

    def symmetrized(self) -> "DirectedGraph":
        """Add the reverse of every edge."""
        return DirectedGraph(self._vertices, self._edges | {(v, u) for u, v in self._edges})

    def is_subgraph_of(self, other: "DirectedGraph") -> bool:
        return self._vertex_set <= other._vertex_set and self._edges <= other._edges

    def to_networkx(self) -> nx.DiGraph:
        """Convert to a networkx directed graph."""
        graph = nx.DiGraph()
        graph.add_nodes_from(self._vertices)
        graph.add_edges_from(self.sorted_edges())
        return graph

    @classmethod
    def complete(cls, vertices: Iterable[int], self_loops: bool = False) -> "DirectedGraph":
        vertex_tuple = tuple(sorted(set(vertices)))
        return cls(
            vertex_tuple,
            ((u, v) for u in vertex_tuple for v in vertex_tuple if self_loops or u != v),
        )

    @classmethod
    def undirected(cls, vertices: Iterable[int], pairs: Iterable[Edge]) -> "DirectedGraph":
        """Build a symmetric graph from unordered pairs."""
        edge_set = set()
        for u, v in pairs:
            edge_set.add((u, v))
            edge_set.add((v, u))
        return cls(vertices, edge_set)

    def _require_vertex(self, v: int) -> None:
        if v not in self._vertex_set:
            raise EntityNotFoundError("Vertex", str(v))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirectedGraph):
            return False
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"DirectedGraph(vertices={list(self._vertices)}, edges={list(self.sorted_edges())})"


def in_neighbors(graph: DirectedGraph, v: int) -> FrozenSet[int]:
    return graph.in_neighbors(v)


def graph_union(a: DirectedGraph, b: DirectedGraph) -> DirectedGraph:
    return a.union(b)
