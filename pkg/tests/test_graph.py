"""
Tests for directed, bipartite and time-varying graphs, partitions and weights.
"""

import numpy as np
import pytest

from src.domain.entities.bipartite_graph import BipartiteGraph
from src.domain.entities.directed_graph import DirectedGraph, graph_union
from src.domain.entities.partition import Partition
from src.domain.entities.time_varying_graph import TimeVaryingGraph
from src.domain.entities.weight_matrix import WeightMatrix
from src.domain.services.weights import metropolis_weights, uniform_column_stochastic_weights
from src.shared.exceptions import (
    EntityNotFoundError,
    GraphDisconnectedError,
    GraphNotUndirectedError,
    MissingSelfLoopError,
    ValidationError,
)


class TestDirectedGraph:
    """Test directed graph queries."""

    def test_neighbors_follow_edge_direction(self):
        """Edge (u, v) makes u an in-neighbour of v."""
        graph = DirectedGraph(range(3), [(0, 1), (1, 2)])

        assert graph.in_neighbors(1) == frozenset({0})
        assert graph.out_neighbors(1) == frozenset({2})
        assert graph.in_neighbors(0) == frozenset()

    def test_edge_outside_vertex_set_rejected(self):
        with pytest.raises(ValidationError):
            DirectedGraph(range(2), [(0, 5)])

    def test_unknown_vertex(self):
        graph = DirectedGraph(range(2), [(0, 1)])

        with pytest.raises(EntityNotFoundError):
            graph.in_neighbors(7)
        with pytest.raises(EntityNotFoundError):
            graph.index_of(7)

    def test_single_vertex_is_connected(self):
        graph = DirectedGraph([4])

        assert graph.is_strongly_connected()
        assert graph.is_connected_undirected()

    def test_union(self):
        graph = DirectedGraph(range(2), [(0, 1)])

        assert graph_union(graph, DirectedGraph([0])) == graph
        assert graph_union(graph, DirectedGraph([1, 2], [(2, 1)])).edges == frozenset({(0, 1), (2, 1)})

    def test_strong_connectivity(self):
        cycle = DirectedGraph(range(3), [(0, 1), (1, 2), (2, 0)])
        path = DirectedGraph(range(3), [(0, 1), (1, 2)])

        assert cycle.is_strongly_connected()
        assert not path.is_strongly_connected()
        assert not cycle.is_symmetric()

    def test_undirected_connectivity_requires_symmetry(self):
        with pytest.raises(GraphNotUndirectedError):
            DirectedGraph(range(2), [(0, 1)]).is_connected_undirected()

    def test_undirected_connectivity(self, ring_comm):
        split = DirectedGraph.undirected(range(4), [(0, 1), (2, 3)])

        assert ring_comm.is_connected_undirected()
        assert not split.is_connected_undirected()

    def test_symmetric_core_and_symmetrized(self):
        graph = DirectedGraph(range(3), [(0, 1), (1, 0), (1, 2)])

        assert graph.asymmetric_edges() == ((1, 2),)
        assert graph.symmetric_core().edges == frozenset({(0, 1), (1, 0)})
        assert graph.symmetrized().edges == frozenset({(0, 1), (1, 0), (1, 2), (2, 1)})

    def test_restrict(self, ring_comm):
        """Induced subgraph keeps only edges inside the subset."""
        sub = ring_comm.restrict([0, 1, 2])

        assert sub.vertices == (0, 1, 2)
        assert sub.edges == frozenset({(0, 1), (1, 0), (1, 2), (2, 1)})
        assert sub.is_subgraph_of(ring_comm)

    def test_restrict_rejects_unknown_vertices(self, ring_comm):
        with pytest.raises(ValidationError):
            ring_comm.restrict([0, 9])

    def test_self_loops(self, ring_comm):
        with_loops = ring_comm.with_self_loops()

        assert with_loops.has_self_loops()
        assert not ring_comm.has_self_loops()
        assert with_loops.without_self_loops() == ring_comm

    def test_complete(self):
        graph = DirectedGraph.complete(range(3))

        assert len(graph.edges) == 6
        assert len(DirectedGraph.complete(range(3), self_loops=True).edges) == 9

    def test_networkx_conversion(self, ring_comm):
        nx_graph = ring_comm.to_networkx()

        assert sorted(nx_graph.nodes) == [0, 1, 2, 3, 4]
        assert nx_graph.number_of_edges() == 10


class TestBipartiteGraph:
    """Test component/agent bipartite graphs."""

    def test_neighborhoods(self, ring_interference):
        assert ring_interference.agents_of(0) == (0, 2)
        assert ring_interference.components_of(2) == (0, 1)
        assert ring_interference.components_of(4) == (2,)

    def test_component_without_agents_rejected(self):
        with pytest.raises(ValidationError):
            BipartiteGraph(range(2), range(2), [(0, 0), (0, 1)])

    def test_missing_edges(self, ring_interference):
        estimate = BipartiteGraph(range(3), range(5), [(0, 0), (1, 1), (1, 2), (1, 3), (2, 3), (2, 4)])

        assert ring_interference.missing_from(estimate) == ((0, 2),)
        assert ring_interference.missing_from(estimate.with_edges([(0, 2)])) == ()

    def test_complete(self):
        complete = BipartiteGraph.complete(range(2), range(3))

        assert complete.is_complete()
        assert complete.agents_of(1) == (0, 1, 2)


class TestPartition:
    """Test variable partitions."""

    def test_split_and_join(self):
        partition = Partition([2, 1, 3])
        y = np.arange(6.0)

        parts = partition.split(y)

        assert partition.total_size == 6
        assert np.array_equal(parts[2], np.array([3.0, 4.0, 5.0]))
        assert np.array_equal(partition.join(parts), y)

    def test_wrong_length(self):
        with pytest.raises(ValidationError):
            Partition([1, 1]).split(np.zeros(3))

    def test_nonpositive_sizes_rejected(self):
        with pytest.raises(ValidationError):
            Partition([1, 0])


class TestTimeVaryingGraph:
    """Test graph sequences and Q-strong connectivity."""

    def test_periodic_sequence(self):
        a = DirectedGraph(range(2), [(0, 1)])
        b = DirectedGraph(range(2), [(1, 0)])
        sequence = TimeVaryingGraph.periodic([a, b])

        assert sequence.at(0) == a
        assert sequence.at(3) == b
        assert sequence.window_union(0, 2).edges == frozenset({(0, 1), (1, 0)})

    def test_q_strong_connectivity(self):
        a = DirectedGraph(range(2), [(0, 1)])
        b = DirectedGraph(range(2), [(1, 0)])
        sequence = TimeVaryingGraph.periodic([a, b])

        assert sequence.is_q_strongly_connected(2, horizon=10)
        assert not sequence.is_q_strongly_connected(1, horizon=10)

    def test_negative_iteration_rejected(self):
        sequence = TimeVaryingGraph.constant(DirectedGraph(range(2), [(0, 1)]))

        with pytest.raises(ValidationError):
            sequence.at(-1)


class TestWeights:
    """Test weight matrix constructors."""

    def test_metropolis_is_doubly_stochastic(self, ring_comm):
        weights = metropolis_weights(ring_comm)

        assert weights.is_row_stochastic(1e-12)
        assert weights.is_column_stochastic(1e-12)
        assert weights.is_symmetric(1e-12)
        assert weights.graph.has_self_loops()
        assert weights.weight(0, 1) == pytest.approx(1.0 / 3.0)
        assert weights.weight(0, 2) == 0.0

    def test_metropolis_rejects_disconnected(self):
        split = DirectedGraph.undirected(range(4), [(0, 1), (2, 3)])

        with pytest.raises(GraphDisconnectedError):
            metropolis_weights(split)

    def test_uniform_column_stochastic(self):
        graph = DirectedGraph(range(3), [(0, 1), (1, 2), (2, 0)]).with_self_loops()

        weights = uniform_column_stochastic_weights(graph)

        assert weights.is_column_stochastic()
        assert weights.weight(1, 0) == pytest.approx(0.5)
        assert weights.weight(0, 1) == 0.0

    def test_uniform_on_uneven_out_degrees(self):
        """Vertex 0 sends to two neighbours, so its column splits in thirds."""
        graph = DirectedGraph(range(3), [(0, 1), (0, 2), (1, 0), (2, 0)]).with_self_loops()

        weights = uniform_column_stochastic_weights(graph)

        assert weights.is_column_stochastic()
        assert not weights.is_row_stochastic()
        assert weights.weight(1, 0) == pytest.approx(1.0 / 3.0)

    def test_uniform_needs_self_loops(self):
        with pytest.raises(MissingSelfLoopError):
            uniform_column_stochastic_weights(DirectedGraph(range(2), [(0, 1), (1, 0)]))

    def test_weight_outside_graph_rejected(self):
        graph = DirectedGraph(range(2), [(0, 1)])

        with pytest.raises(ValidationError):
            WeightMatrix(graph, np.array([[0.0, 0.5], [0.5, 0.0]]))
