"""
Layout text format.

    AGENTS <N>
    PARTITION <n_1> ... <n_P>
    COMM
    <graph records>
    INTERF
    C <p> <agent> ...
    ESTIM
    C <p> <agent> ...
    DESIGN <p>
    <graph records>

ESTIM and DESIGN sections are optional so the same file can describe the
input of a design synthesis.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from src.domain.entities.bipartite_graph import BipartiteGraph
from src.domain.entities.directed_graph import DirectedGraph
from src.domain.entities.end_layout import ENDLayout
from src.domain.entities.partition import Partition
from src.infrastructure.serialization.graph_format import graph_lines, parse_graph
from src.infrastructure.serialization.text_format import (
    PathLike,
    Record,
    labels,
    parse_int,
    parse_label,
    read_records,
    split_sections,
    write_text,
)
from src.shared.exceptions import DomainException, SerializationError

SECTIONS = ("AGENTS", "PARTITION", "COMM", "INTERF", "ESTIM", "DESIGN")


@dataclass
class LayoutDocument:
    """Parsed layout file; estimate and design may be absent."""
    agent_count: int
    partition: Partition
    comm: DirectedGraph
    interference: BipartiteGraph
    estimate: Optional[BipartiteGraph] = None
    design: Dict[int, DirectedGraph] = field(default_factory=dict)

    @property
    def is_complete(self) -> bool:
        return self.estimate is not None and set(self.design) == set(self.partition.components)

    def to_layout(self) -> ENDLayout:
        if not self.is_complete:
            raise SerializationError("Layout file has no ESTIM section or misses DESIGN sections")
        return ENDLayout(self.agent_count, self.partition, self.comm, self.interference, self.estimate, self.design)


def layout_lines(layout: ENDLayout) -> List[str]:
    lines = [f"AGENTS {layout.agent_count}", f"PARTITION {' '.join(str(s) for s in layout.partition.block_sizes)}"]
    lines.append("COMM")
    lines.extend(graph_lines(layout.comm))
    lines.append("INTERF")
    lines.extend(_bipartite_lines(layout.interference))
    lines.append("ESTIM")
    lines.extend(_bipartite_lines(layout.estimate))
    for p in layout.components:
        lines.append(f"DESIGN {p + 1}")
        lines.extend(graph_lines(layout.design_graph(p)))
    return lines


def parse_layout(records: List[Record], path: str = "") -> LayoutDocument:
    values: Dict[str, object] = {}
    design: Dict[int, DirectedGraph] = {}
    for (number, head), body in split_sections(records, SECTIONS):
        keyword = head[0]
        if keyword == "AGENTS":
            values["agents"] = parse_int(head[1], number, path) if len(head) == 2 else _bad(number, head, path)
        elif keyword == "PARTITION":
            values["partition"] = [parse_int(t, number, path) for t in head[1:]]
        elif keyword == "COMM":
            values["comm"] = parse_graph(body, path)[0]
        elif keyword in ("INTERF", "ESTIM"):
            values[keyword] = _parse_bipartite(body, path)
        elif keyword == "DESIGN":
            if len(head) != 2:
                _bad(number, head, path)
            design[parse_label(head[1], number, path)] = parse_graph(body, path)[0]
        else:
            _bad(number, head, path)

    missing = [name for name in ("agents", "partition", "comm", "INTERF") if name not in values]
    if missing:
        raise SerializationError(f"Layout file lacks sections {missing}", path=path)

    try:
        partition = Partition(values["partition"])
        agents = range(values["agents"])
        interference = BipartiteGraph(partition.components, agents, values["INTERF"])
        estimate = None
        if "ESTIM" in values:
            estimate = BipartiteGraph(partition.components, agents, values["ESTIM"])
        return LayoutDocument(values["agents"], partition, values["comm"], interference, estimate, design)
    except DomainException as e:
        raise SerializationError(f"Invalid layout: {e.message}", path=path) from e


def save_layout(path: PathLike, layout: ENDLayout) -> None:
    write_text(path, layout_lines(layout))


def load_layout(path: PathLike) -> LayoutDocument:
    return parse_layout(read_records(path), str(path))


def _bipartite_lines(graph: BipartiteGraph) -> List[str]:
    return [f"C {p + 1} {labels(graph.agents_of(p))}" for p in graph.left]


def _parse_bipartite(body: List[Record], path: str):
    edges = []
    for number, tokens in body:
        if tokens[0] != "C" or len(tokens) < 2:
            _bad(number, tokens, path)
        p = parse_label(tokens[1], number, path)
        edges.extend((p, parse_label(t, number, path)) for t in tokens[2:])
    return edges


def _bad(number: int, tokens: List[str], path: str):
    raise SerializationError(f"Line {number}: unexpected record '{' '.join(tokens)}'", path=path)
