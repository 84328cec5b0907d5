"""
Layout validation report value object.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple


@dataclass(frozen=True)
class ComponentConnectivity:
    """Connectivity status of one design graph."""
    component: int
    copies: int
    undirected: bool
    connected: bool
    strongly_connected: bool


@dataclass(frozen=True)
class LayoutValidationReport:
    """All consistency findings for a layout, collected without failing fast."""
    missing_estimate_edges: Tuple[Tuple[int, int], ...] = ()
    design_edges_outside_comm: Dict[int, Tuple[Tuple[int, int], ...]] = field(default_factory=dict)
    components: Tuple[ComponentConnectivity, ...] = ()

    @property
    def standing_assumption_holds(self) -> bool:
        """Interference inside estimate and every design graph inside comm."""
        return not self.missing_estimate_edges and not any(self.design_edges_outside_comm.values())

    @property
    def undirected_connected(self) -> bool:
        """Every design graph is undirected and connected."""
        return all(c.undirected and c.connected for c in self.components)

    @property
    def strongly_connected(self) -> bool:
        return all(c.strongly_connected for c in self.components)

    def failures(self) -> List[str]:
        """Human readable list of every finding."""
        messages = []
        for p, i in self.missing_estimate_edges:
            messages.append(f"agent {i} depends on component {p} but does not estimate it")
        for p, edges in sorted(self.design_edges_outside_comm.items()):
            for u, v in edges:
                messages.append(f"design edge {u}->{v} of component {p} is not a communication edge")
        for status in self.components:
            if not status.undirected:
                messages.append(f"design graph of component {status.component} is directed")
            elif not status.connected:
                messages.append(f"design graph of component {status.component} is disconnected")
            if not status.strongly_connected:
                messages.append(f"design graph of component {status.component} is not strongly connected")
        return messages
