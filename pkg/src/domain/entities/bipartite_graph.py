"""
Bipartite Graph Domain Entity.
"""

from typing import FrozenSet, Iterable, Tuple

from src.shared.exceptions import EntityNotFoundError, ValidationError

BipartiteEdge = Tuple[int, int]


class BipartiteGraph:
    """Bipartite graph between components (left) and agents (right).

    An edge (p, i) records that agent i is associated with component p,
    either because its cost depends on p or because it stores a copy of p.
    """

    def __init__(self, left: Iterable[int], right: Iterable[int], edges: Iterable[BipartiteEdge]):
        """Initialize BipartiteGraph entity."""
        left_tuple = tuple(sorted(set(int(p) for p in left)))
        right_tuple = tuple(sorted(set(int(i) for i in right)))
        if not left_tuple:
            raise ValidationError("Bipartite graph needs at least one component")
        if not right_tuple:
            raise ValidationError("Bipartite graph needs at least one agent")

        left_set, right_set = frozenset(left_tuple), frozenset(right_tuple)
        edge_set = frozenset((int(p), int(i)) for p, i in edges)
        for p, i in edge_set:
            if p not in left_set or i not in right_set:
                raise ValidationError(f"Edge ({p}, {i}) does not connect a component to an agent")

        by_component = {p: [] for p in left_tuple}
        by_agent = {i: [] for i in right_tuple}
        for p, i in sorted(edge_set):
            by_component[p].append(i)
            by_agent[i].append(p)

        lonely = [p for p, agents in by_component.items() if not agents]
        if lonely:
            raise ValidationError(f"Components {lonely} are not associated with any agent")

        self._left = left_tuple
        self._right = right_tuple
        self._edges = edge_set
        self._by_component = {p: tuple(agents) for p, agents in by_component.items()}
        self._by_agent = {i: tuple(components) for i, components in by_agent.items()}

    @property
    def left(self) -> Tuple[int, ...]:
        """Get components in ascending order."""
        return self._left

    @property
    def right(self) -> Tuple[int, ...]:
        """Get agents in ascending order."""
        return self._right

    @property
    def edges(self) -> FrozenSet[BipartiteEdge]:
        """Get (component, agent) edges."""
        return self._edges

    def agents_of(self, p: int) -> Tuple[int, ...]:
        """Get agents attached to component p, ascending."""
        try:
            return self._by_component[p]
        except KeyError:
            raise EntityNotFoundError("Component", str(p)) from None

    def components_of(self, i: int) -> Tuple[int, ...]:
        """Get components attached to agent i, ascending."""
        try:
            return self._by_agent[i]
        except KeyError:
            raise EntityNotFoundError("Agent", str(i)) from None

    def has_edge(self, p: int, i: int) -> bool:
        return (p, i) in self._edges

    def is_complete(self) -> bool:
        return len(self._edges) == len(self._left) * len(self._right)

    def missing_from(self, other: "BipartiteGraph") -> Tuple[BipartiteEdge, ...]:
        """Get edges of this graph absent from other."""
        return tuple(sorted(self._edges - other._edges))

    def with_edges(self, extra: Iterable[BipartiteEdge]) -> "BipartiteGraph":
        return BipartiteGraph(self._left, self._right, self._edges | frozenset(extra))

    @classmethod
    def complete(cls, left: Iterable[int], right: Iterable[int]) -> "BipartiteGraph":
        left_tuple, right_tuple = tuple(left), tuple(right)
        return cls(left_tuple, right_tuple, ((p, i) for p in left_tuple for i in right_tuple))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BipartiteGraph):
            return False
        return (self._left, self._right, self._edges) == (other._left, other._right, other._edges)

    def __hash__(self) -> int:
        return hash((self._left, self._right, self._edges))

    def __repr__(self) -> str:
        return f"BipartiteGraph(components={list(self._left)}, agents={list(self._right)}, edges={len(self._edges)})"
