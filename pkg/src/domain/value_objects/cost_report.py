"""
Design specification and cost report value objects.
"""

from dataclasses import dataclass, field
from typing import Dict

from src.domain.value_objects.design_mode import DesignMode, EdgePolicy


@dataclass(frozen=True)
class DesignSpec:
    """Requested synthesis mode and edge policy."""
    mode: DesignMode = DesignMode.STANDARD
    edge_policy: EdgePolicy = EdgePolicy.ALL_AVAILABLE


@dataclass(frozen=True)
class CostReport:
    """Memory and broadcast cost of a layout."""
    copies_per_component: Dict[int, int]
    total_memory: int
    per_iteration_broadcast_cost: float
    steiner_nodes_per_component: Dict[int, int] = field(default_factory=dict)

    @property
    def total_copies(self) -> int:
        return sum(self.copies_per_component.values())

    @property
    def total_steiner_nodes(self) -> int:
        return sum(self.steiner_nodes_per_component.values())
