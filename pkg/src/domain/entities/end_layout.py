"""
END Layout Domain Entity.
"""

from types import MappingProxyType
from typing import Dict, Mapping, Tuple

from src.domain.entities.bipartite_graph import BipartiteGraph
from src.domain.entities.directed_graph import DirectedGraph
from src.domain.entities.partition import Partition
from src.domain.value_objects.layout_report import ComponentConnectivity, LayoutValidationReport
from src.shared.exceptions import EntityNotFoundError, LayoutValidationError, ValidationError


class ENDLayout:
    """Agents, variable partition and the four graph families of an END setup.

    Agents are 0..N-1 and components 0..P-1. The design graph of component p
    lives on the agents holding a copy of p. Self-loops in design graphs stand
    for an agent's own memory and are never checked against the
    communication graph.

    Agents estimating nothing are pure relays: they hold no copy and never
    enter a design graph.
    """

    def __init__(
        self,
        agent_count: int,
        partition: Partition,
        comm: DirectedGraph,
        interference: BipartiteGraph,
        estimate: BipartiteGraph,
        design: Mapping[int, DirectedGraph],
    ):
        """Initialize ENDLayout entity."""
        if agent_count < 1:
            raise ValidationError("Layout needs at least one agent")
        agents = tuple(range(agent_count))
        if comm.vertices != agents:
            raise ValidationError("Communication graph must be defined on agents 0..N-1")

        components = partition.components
        for name, graph in (("interference", interference), ("estimate", estimate)):
            if graph.left != components or graph.right != agents:
                raise ValidationError(f"The {name} graph must connect components 0..P-1 to agents 0..N-1")

        if tuple(sorted(design)) != components:
            raise ValidationError("A design graph is required for every component")
        for p in components:
            if design[p].vertices != estimate.agents_of(p):
                raise ValidationError(f"Design graph of component {p} must span exactly its copy set")

        self._agent_count = agent_count
        self._partition = partition
        self._comm = comm
        self._interference = interference
        self._estimate = estimate
        self._design: Dict[int, DirectedGraph] = {p: design[p] for p in components}
        self._local_index = {
            p: {i: position for position, i in enumerate(estimate.agents_of(p))} for p in components
        }

    @property
    def agent_count(self) -> int:
        """Get N."""
        return self._agent_count

    @property
    def agents(self) -> Tuple[int, ...]:
        return self._comm.vertices

    @property
    def partition(self) -> Partition:
        """Get variable partition."""
        return self._partition

    @property
    def components(self) -> Tuple[int, ...]:
        return self._partition.components

    @property
    def comm(self) -> DirectedGraph:
        """Get communication graph."""
        return self._comm

    @property
    def interference(self) -> BipartiteGraph:
        """Get interference graph."""
        return self._interference

    @property
    def estimate(self) -> BipartiteGraph:
        """Get estimate graph."""
        return self._estimate

    @property
    def design(self) -> Mapping[int, DirectedGraph]:
        """Get design graphs keyed by component."""
        return MappingProxyType(self._design)

    def design_graph(self, p: int) -> DirectedGraph:
        try:
            return self._design[p]
        except KeyError:
            raise EntityNotFoundError("Component", str(p)) from None

    def copies(self, p: int) -> Tuple[int, ...]:
        """Get agents holding a copy of p, ascending."""
        return self._estimate.agents_of(p)

    def copy_count(self, p: int) -> int:
        return len(self.copies(p))

    def estimated_components(self, i: int) -> Tuple[int, ...]:
        return self._estimate.components_of(i)

    def interfering_components(self, i: int) -> Tuple[int, ...]:
        return self._interference.components_of(i)

    def local_index(self, p: int, i: int) -> int:
        """Get the 0-based rank of agent i among the holders of p."""
        try:
            return self._local_index[p][i]
        except KeyError:
            raise EntityNotFoundError("Estimate", f"(component={p}, agent={i})") from None

    def design_in_neighbors(self, p: int, i: int) -> Tuple[int, ...]:
        """Get holders of p that send to i in the design graph, excluding i."""
        return tuple(sorted(self.design_graph(p).in_neighbors(i) - {i}))

    @property
    def stacked_size(self) -> int:
        """Get n_𝒚 = Σ_p N_p · n_{y_p}."""
        return sum(self.copy_count(p) * self._partition.size_of(p) for p in self.components)

    def is_standard(self) -> bool:
        """Check the sparsity-oblivious choice: everyone estimates everything over comm."""
        return self._estimate.is_complete() and all(
            graph.without_self_loops() == self._comm for graph in self._design.values()
        )

    def with_design(self, design: Mapping[int, DirectedGraph]) -> "ENDLayout":
        """Same layout with replaced design graphs."""
        return ENDLayout(
            self._agent_count, self._partition, self._comm, self._interference, self._estimate, design
        )

    def with_comm(self, comm: DirectedGraph) -> "ENDLayout":
        return ENDLayout(
            self._agent_count, self._partition, comm, self._interference, self._estimate, self._design
        )

    def validate(self) -> LayoutValidationReport:
        """Collect every consistency finding."""
        outside = {}
        for p, graph in self._design.items():
            extra = tuple(
                sorted((u, v) for u, v in graph.edges if u != v and not self._comm.has_edge(u, v))
            )
            if extra:
                outside[p] = extra

        statuses = []
        for p, graph in self._design.items():
            undirected = graph.is_symmetric()
            statuses.append(
                ComponentConnectivity(
                    component=p,
                    copies=graph.vertex_count,
                    undirected=undirected,
                    connected=undirected and graph.is_connected_undirected(),
                    strongly_connected=graph.is_strongly_connected(),
                )
            )

        return LayoutValidationReport(
            missing_estimate_edges=self._interference.missing_from(self._estimate),
            design_edges_outside_comm=outside,
            components=tuple(statuses),
        )

    def require_usable(self) -> LayoutValidationReport:
        """Validate and raise when the standing consistency requirements fail."""
        report = self.validate()
        if not report.standing_assumption_holds:
            raise LayoutValidationError(
                "Layout violates the estimate/design consistency requirements",
                details="; ".join(report.failures()),
            )
        return report

    def __repr__(self) -> str:
        copies = [self.copy_count(p) for p in self.components]
        return f"ENDLayout(agents={self._agent_count}, partition={self._partition}, copies={copies})"
