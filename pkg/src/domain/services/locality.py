"""
Locality monitor for simulated runs.

Records which copies an agent's update consumes and flags every read of a
copy held by an agent that is not a design in-neighbour for that component.
"""

import logging
from dataclasses import dataclass
from typing import List, Mapping, Optional

import numpy as np

from src.domain.entities.directed_graph import DirectedGraph
from src.domain.entities.end_layout import ENDLayout
from src.domain.entities.weight_matrix import WeightMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockRead:
    """One read of copy (owner, component) performed by reader."""
    round_index: int
    reader: int
    owner: int
    component: int


class LocalityMonitor:
    """Collects block reads round by round against the active design graphs."""

    def __init__(self, layout: ENDLayout):
        self._layout = layout
        self._design = dict(layout.design)
        self._round = 0
        self._read_count = 0
        self._violations: List[BlockRead] = []

    @property
    def read_count(self) -> int:
        return self._read_count

    @property
    def rounds(self) -> int:
        return self._round

    @property
    def violations(self) -> List[BlockRead]:
        return list(self._violations)

    def is_clean(self) -> bool:
        return not self._violations

    def begin_round(self, design_graphs: Optional[Mapping[int, DirectedGraph]] = None) -> None:
        """Start a communication round, optionally with time-varying design graphs."""
        self._round += 1
        if design_graphs is not None:
            self._design = dict(design_graphs)

    def record_read(self, reader: int, owner: int, component: int) -> None:
        self._read_count += 1
        if reader == owner:
            return
        graph = self._design[component]
        if not (graph.has_vertex(reader) and graph.has_edge(owner, reader)):
            read = BlockRead(self._round, reader, owner, component)
            self._violations.append(read)
            logger.warning(
                "Non-local read: agent %s used copy of component %s held by agent %s",
                reader, component, owner,
            )

    def record_mixing(self, component: int, weights: WeightMatrix) -> None:
        """Record the reads implied by the nonzero pattern of a mixing matrix."""
        copies = self._layout.copies(component)
        rows, cols = np.nonzero(weights.entries)
        for a, b in zip(rows, cols):
            self.record_read(copies[a], copies[b], component)

    def record_local_view(self, agent: int) -> None:
        """Record an agent evaluating its own oracle on its own copies."""
        for p in self._layout.estimated_components(agent):
            self.record_read(agent, agent, p)
