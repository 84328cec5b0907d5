"""
Graph text format.

    V <count> [<label> ...]
    E <u> <v>
    W <u> <v> <weight>

Vertex labels are listed only when the vertex set is not 1..count. A `W`
line carries the weight the receiver v puts on what it gets from u.
"""

from typing import List, Optional, Tuple

import numpy as np

from src.domain.entities.directed_graph import DirectedGraph
from src.domain.entities.weight_matrix import WeightMatrix
from src.infrastructure.serialization.text_format import (
    PathLike,
    Record,
    format_float,
    labels,
    parse_floats,
    parse_int,
    parse_label,
    read_records,
    write_text,
)
from src.shared.exceptions import DomainException, SerializationError


def graph_lines(graph: DirectedGraph, weights: Optional[WeightMatrix] = None) -> List[str]:
    count = graph.vertex_count
    header = f"V {count}"
    if graph.vertices != tuple(range(count)):
        header += f" {labels(graph.vertices)}"
    lines = [header]
    lines.extend(f"E {u + 1} {v + 1}" for u, v in graph.sorted_edges())
    if weights is not None:
        lines.extend(
            f"W {u + 1} {v + 1} {format_float(weights.weight(v, u))}" for u, v in graph.sorted_edges()
        )
    return lines


def parse_graph(records: List[Record], path: str = "") -> Tuple[DirectedGraph, Optional[WeightMatrix]]:
    """Build a graph, and its weights when `W` lines are present."""
    if not records or records[0][1][0] != "V":
        number = records[0][0] if records else 0
        raise SerializationError(f"Line {number}: graph must start with a 'V' line", path=path)

    number, tokens = records[0]
    if len(tokens) < 2:
        raise SerializationError(f"Line {number}: 'V' needs a vertex count", path=path)
    count = parse_int(tokens[1], number, path)
    if len(tokens) > 2:
        vertices = [parse_label(t, number, path) for t in tokens[2:]]
        if len(vertices) != count:
            raise SerializationError(f"Line {number}: {count} vertices announced, {len(vertices)} listed", path=path)
    else:
        vertices = list(range(count))

    edges, weighted = [], {}
    for number, tokens in records[1:]:
        keyword = tokens[0]
        if keyword == "E" and len(tokens) == 3:
            edges.append((parse_label(tokens[1], number, path), parse_label(tokens[2], number, path)))
        elif keyword == "W" and len(tokens) == 4:
            u, v = parse_label(tokens[1], number, path), parse_label(tokens[2], number, path)
            weighted[(u, v)] = parse_floats(tokens[3:], number, path)[0]
        else:
            raise SerializationError(f"Line {number}: unexpected graph record '{' '.join(tokens)}'", path=path)

    try:
        graph = DirectedGraph(vertices, edges)
        if not weighted:
            return graph, None
        entries = np.zeros((graph.vertex_count, graph.vertex_count))
        for (u, v), value in weighted.items():
            entries[graph.index_of(v), graph.index_of(u)] = value
        return graph, WeightMatrix(graph, entries)
    except DomainException as e:
        raise SerializationError(f"Invalid graph: {e.message}", path=path) from e


def save_graph(path: PathLike, graph: DirectedGraph, weights: Optional[WeightMatrix] = None) -> None:
    write_text(path, graph_lines(graph, weights))


def load_graph(path: PathLike) -> Tuple[DirectedGraph, Optional[WeightMatrix]]:
    return parse_graph(read_records(path), str(path))
