"""
Estimate and design graph synthesis.

Builds END layouts from a communication graph and an interference graph:
the standard choice, Steiner-type heuristics that keep copies close to the
agents that need them, and time-varying intersections for push-sum.
"""

import logging
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple

import networkx as nx

from src.domain.entities.bipartite_graph import BipartiteGraph
from src.domain.entities.directed_graph import DirectedGraph, Edge
from src.domain.entities.end_layout import ENDLayout
from src.domain.entities.partition import Partition
from src.domain.entities.time_varying_graph import TimeVaryingGraph
from src.domain.value_objects.cost_report import CostReport, DesignSpec
from src.domain.value_objects.design_mode import DesignMode, EdgePolicy
from src.shared.exceptions import (
    GraphDisconnectedError,
    GraphNotStronglyConnectedError,
    GraphNotUndirectedError,
    ValidationError,
)

logger = logging.getLogger(__name__)


def standard_design(comm: DirectedGraph, interference: BipartiteGraph, partition: Partition) -> ENDLayout:
    """Every agent estimates every component and exchanges it over the whole comm graph."""
    agents = comm.vertices
    estimate = BipartiteGraph.complete(partition.components, agents)
    return ENDLayout(
        agent_count=comm.vertex_count,
        partition=partition,
        comm=comm,
        interference=interference,
        estimate=estimate,
        design={p: comm for p in partition.components},
    )


def steiner_design_undirected(
    comm: DirectedGraph,
    interference: BipartiteGraph,
    partition: Partition,
    edge_policy: EdgePolicy = EdgePolicy.ALL_AVAILABLE,
) -> ENDLayout:
    """Give copies of each component to a connected Steiner set of its terminals."""
    if not comm.is_symmetric():
        raise GraphNotUndirectedError("Undirected Steiner design needs an undirected communication graph")
    if not comm.is_connected_undirected():
        raise GraphDisconnectedError("Undirected Steiner design needs a connected communication graph")

    node_sets, designs = {}, {}
    for p in partition.components:
        terminals = frozenset(interference.agents_of(p))
        nodes, tree_edges = _undirected_steiner(comm, terminals)
        node_sets[p] = nodes
        if edge_policy is EdgePolicy.TREE_ONLY:
            designs[p] = DirectedGraph.undirected(nodes, tree_edges)
        else:
            designs[p] = comm.restrict(nodes)
        _log_component(p, terminals, nodes)

    return _layout_from_sets(comm, interference, partition, node_sets, designs)


def steiner_design_directed(comm: DirectedGraph, interference: BipartiteGraph, partition: Partition) -> ENDLayout:
    """Give copies of each component to a strongly connected superset of its terminals."""
    if not comm.is_strongly_connected():
        raise GraphNotStronglyConnectedError("Directed Steiner design needs a strongly connected communication graph")

    node_sets, designs = {}, {}
    for p in partition.components:
        terminals = frozenset(interference.agents_of(p))
        nodes = _directed_steiner(comm, terminals)
        node_sets[p] = nodes
        designs[p] = comm.restrict(nodes)
        _log_component(p, terminals, nodes)

    return _layout_from_sets(comm, interference, partition, node_sets, designs)


def synthesize_design(
    spec: DesignSpec, comm: DirectedGraph, interference: BipartiteGraph, partition: Partition
) -> ENDLayout:
    """Dispatch on the design mode."""
    if spec.mode is DesignMode.STANDARD:
        return standard_design(comm, interference, partition)
    if spec.mode is DesignMode.STEINER_UNDIRECTED:
        return steiner_design_undirected(comm, interference, partition, spec.edge_policy)
    if spec.edge_policy is EdgePolicy.TREE_ONLY:
        logger.info("Directed Steiner design always keeps all available edges")
    return steiner_design_directed(comm, interference, partition)


class TimeVaryingDesign:
    """Design graphs per iteration: static design intersected with comm at k."""

    def __init__(self, static_design: Mapping[int, DirectedGraph], comm_seq: TimeVaryingGraph):
        comm_vertices = frozenset(comm_seq.vertices)
        for p, graph in static_design.items():
            if not frozenset(graph.vertices) <= comm_vertices:
                raise ValidationError(f"Design graph of component {p} uses agents outside the communication sequence")
        self._static = dict(static_design)
        self._comm_seq = comm_seq

    @property
    def static_design(self) -> Dict[int, DirectedGraph]:
        return dict(self._static)

    def at(self, k: int) -> Dict[int, DirectedGraph]:
        """Design graphs active at iteration k."""
        comm_k = self._comm_seq.at(k)
        return {p: _intersect_keeping_loops(graph, comm_k) for p, graph in self._static.items()}

    def component_sequence(self, p: int) -> TimeVaryingGraph:
        static = self._static[p]
        return TimeVaryingGraph(static.vertices, lambda k: _intersect_keeping_loops(static, self._comm_seq.at(k)).edges)

    def q_connectivity(self, q: int, horizon: int) -> Dict[int, bool]:
        """Q-strong connectivity of each component's sequence."""
        return {p: self.component_sequence(p).is_q_strongly_connected(q, horizon) for p in self._static}


def time_varying_design(static_design: Mapping[int, DirectedGraph], comm_seq: TimeVaryingGraph) -> TimeVaryingDesign:
    return TimeVaryingDesign(static_design, comm_seq)


def sliced_communication(comm: DirectedGraph, q: int) -> TimeVaryingGraph:
    """Cycle through q edge-disjoint slices of comm; every q-window union is comm again.

    Edges are dealt round-robin in sorted order; self-loops stay in every slice.
    """
    if q <= 0:
        raise ValidationError("Number of slices must be positive")
    loops = {(v, v) for v in comm.vertices if comm.has_edge(v, v)}
    proper = [edge for edge in comm.sorted_edges() if edge[0] != edge[1]]
    slices = [
        DirectedGraph(comm.vertices, loops | set(proper[offset::q]))
        for offset in range(q)
    ]
    return TimeVaryingGraph.periodic(slices)


def cost_report(
    layout: ENDLayout,
    partition: Optional[Partition] = None,
    message_size: Optional[Mapping[int, int]] = None,
) -> CostReport:
    """Memory footprint and per-iteration broadcast count of a layout.

    An agent pays 1 per component it must send, i.e. whenever it has an
    out-neighbour other than itself in that component's design graph.
    """
    partition = partition or layout.partition
    sizes = message_size or {p: partition.size_of(p) for p in partition.components}

    copies = {p: layout.copy_count(p) for p in layout.components}
    memory = sum(copies[p] * sizes[p] for p in layout.components)

    broadcasts = 0
    for i in layout.agents:
        for p in layout.estimated_components(i):
            if layout.design_graph(p).out_neighbors(i) - {i}:
                broadcasts += 1

    steiner = {p: copies[p] - len(layout.interference.agents_of(p)) for p in layout.components}
    return CostReport(
        copies_per_component=copies,
        total_memory=memory,
        per_iteration_broadcast_cost=float(broadcasts),
        steiner_nodes_per_component=steiner,
    )


def lexicographic_shortest_path(graph: nx.DiGraph, sources: Iterable[int], targets: Iterable[int]) -> List[int]:
    """Shortest path from any source to any target, smallest vertex sequence on ties."""
    source_set, target_set = set(sources), set(targets)
    distance = nx.multi_source_dijkstra_path_length(graph.reverse(copy=False), target_set)
    reachable = [s for s in source_set if s in distance]
    if not reachable:
        raise GraphDisconnectedError(f"No path from {sorted(source_set)} to {sorted(target_set)}")

    best = min(distance[s] for s in reachable)
    current = min(s for s in reachable if distance[s] == best)
    path = [current]
    while distance[current] > 0:
        current = min(w for w in graph.successors(current) if distance.get(w) == distance[current] - 1)
        path.append(current)
    return path


def _undirected_steiner(comm: DirectedGraph, terminals: FrozenSet[int]) -> Tuple[FrozenSet[int], Set[Edge]]:
    induced = comm.restrict(terminals)
    if induced.is_connected_undirected():
        return terminals, set(nx.minimum_spanning_edges(induced.to_networkx().to_undirected(), data=False))

    graph = comm.to_networkx()
    tree = {min(terminals)}
    tree_edges: Set[Edge] = set()
    remaining = set(terminals) - tree
    while remaining:
        distance = nx.multi_source_dijkstra_path_length(graph, tree)
        nearest = min(remaining, key=lambda t: (distance[t], t))
        path = lexicographic_shortest_path(graph, tree, {nearest})
        tree.update(path)
        tree_edges.update(zip(path, path[1:]))
        remaining -= tree
    return frozenset(tree), tree_edges


def _directed_steiner(comm: DirectedGraph, terminals: FrozenSet[int]) -> FrozenSet[int]:
    graph = comm.to_networkx()
    nodes = set(terminals)
    while True:
        induced = graph.subgraph(nodes)
        if len(nodes) == 1 or nx.is_strongly_connected(induced):
            return frozenset(nodes)
        condensed = nx.condensation(induced)
        members = {c: frozenset(condensed.nodes[c]["members"]) for c in condensed.nodes}
        sinks = [members[c] for c in condensed.nodes if condensed.out_degree(c) == 0]
        sink = min(sinks, key=min)
        sources = [members[c] for c in condensed.nodes if condensed.in_degree(c) == 0 and members[c] != sink]
        source = min(sources, key=min)
        nodes.update(lexicographic_shortest_path(graph, sink, source))


def _intersect_keeping_loops(static: DirectedGraph, comm_k: DirectedGraph) -> DirectedGraph:
    return DirectedGraph(static.vertices, ((u, v) for u, v in static.edges if u == v or comm_k.has_edge(u, v)))


def _layout_from_sets(
    comm: DirectedGraph,
    interference: BipartiteGraph,
    partition: Partition,
    node_sets: Mapping[int, FrozenSet[int]],
    designs: Mapping[int, DirectedGraph],
) -> ENDLayout:
    estimate = BipartiteGraph(
        partition.components,
        comm.vertices,
        ((p, i) for p, nodes in node_sets.items() for i in nodes),
    )
    return ENDLayout(comm.vertex_count, partition, comm, interference, estimate, designs)


def _log_component(p: int, terminals: FrozenSet[int], nodes: FrozenSet[int]) -> None:
    logger.debug(
        "Component %s: %s copies, %s Steiner nodes added",
        p, len(nodes), len(nodes) - len(terminals),
    )
