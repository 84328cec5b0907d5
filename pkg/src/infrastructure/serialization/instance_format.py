"""
Problem instance text format.

    PARTITION <n_1> ... <n_P>
    KIND ls | lasso | constraint_coupled
    REGULARIZATION <lambda>          (lasso only, default 1)
    AGENT <i>
    COMPONENTS <p> ...
    H <row>                          (ls / lasso, one line per row)
    h <values>
    Q <row>                          (constraint_coupled)
    c <values>
    BOX <lower> <upper>              (one line per coordinate)
    A <p> <row>
    a <p> <values>
"""

from collections import defaultdict
from typing import Dict, List, Union

import numpy as np

from src.domain.entities.constraint_coupled import ConstraintCoupledInstance
from src.domain.entities.least_squares import LassoInstance, LeastSquaresInstance
from src.domain.entities.partition import Partition
from src.infrastructure.serialization.text_format import (
    PathLike,
    Record,
    format_floats,
    labels,
    parse_floats,
    parse_int,
    parse_label,
    read_records,
    split_sections,
    write_text,
)
from src.shared.exceptions import DomainException, SerializationError

Instance = Union[LeastSquaresInstance, LassoInstance, ConstraintCoupledInstance]
KINDS = ("ls", "lasso", "constraint_coupled")


def instance_lines(instance: Instance) -> List[str]:
    partition = instance.partition
    lines = [f"PARTITION {' '.join(str(s) for s in partition.block_sizes)}"]
    if isinstance(instance, ConstraintCoupledInstance):
        lines.append("KIND constraint_coupled")
        for i in instance.agents:
            lines.extend(_agent_header(i, instance.components_of(i)))
            lines.extend(f"Q {format_floats(row)}" for row in instance.quadratic(i))
            lines.append(f"c {format_floats(instance.linear(i))}")
            lower, upper = instance.box(i)
            lines.extend(f"BOX {format_floats(bounds)}" for bounds in zip(lower, upper))
            for p in instance.components_of(i):
                lines.extend(f"A {p + 1} {format_floats(row)}" for row in instance.coupling(p, i))
                lines.append(f"a {p + 1} {format_floats(instance.offset(p, i))}")
        return lines

    least_squares = instance
    if isinstance(instance, LassoInstance):
        lines.append("KIND lasso")
        lines.append(f"REGULARIZATION {format_floats([instance.regularization])}")
        least_squares = instance.least_squares
    else:
        lines.append("KIND ls")
    for i in least_squares.agents:
        lines.extend(_agent_header(i, least_squares.components_of(i)))
        lines.extend(f"H {format_floats(row)}" for row in least_squares.output_matrix(i))
        lines.append(f"h {format_floats(least_squares.measurement(i))}")
    return lines


def parse_instance(records: List[Record], path: str = "") -> Instance:
    header: Dict[str, List[str]] = {}
    agents: Dict[int, Dict[str, object]] = {}
    for (number, head), body in split_sections(records, ("PARTITION", "KIND", "REGULARIZATION", "AGENT")):
        keyword = head[0]
        if keyword == "AGENT":
            if len(head) != 2:
                raise SerializationError(f"Line {number}: 'AGENT' needs one label", path=path)
            agents[parse_label(head[1], number, path)] = _parse_agent(body, path)
        elif keyword in ("PARTITION", "KIND", "REGULARIZATION"):
            header[keyword] = head[1:]
            if body:
                raise SerializationError(f"Line {body[0][0]}: records outside an AGENT section", path=path)
        else:
            raise SerializationError(f"Line {number}: records before the first section", path=path)

    if "PARTITION" not in header or "KIND" not in header:
        raise SerializationError("Instance file needs PARTITION and KIND lines", path=path)
    kind = header["KIND"][0] if header["KIND"] else ""
    if kind not in KINDS:
        raise SerializationError(f"Unknown instance kind '{kind}', expected one of {KINDS}", path=path)

    try:
        partition = Partition([parse_int(t, 0, path) for t in header["PARTITION"]])
        components = {i: data["components"] for i, data in agents.items()}
        if kind == "constraint_coupled":
            return ConstraintCoupledInstance(
                partition,
                components,
                quadratic={i: np.array(data["Q"]) for i, data in agents.items()},
                linear={i: np.array(data["c"]) for i, data in agents.items()},
                lower={i: np.array([b[0] for b in data["BOX"]]) for i, data in agents.items()},
                upper={i: np.array([b[1] for b in data["BOX"]]) for i, data in agents.items()},
                coupling={(p, i): np.array(rows) for i, data in agents.items() for p, rows in data["A"].items()},
                offsets={(p, i): np.array(values) for i, data in agents.items() for p, values in data["a"].items()},
            )
        least_squares = LeastSquaresInstance(
            partition,
            components,
            {i: np.array(data["H"]) for i, data in agents.items()},
            {i: np.array(data["h"]) for i, data in agents.items()},
        )
        if kind == "lasso":
            regularization = parse_floats(header.get("REGULARIZATION", ["1"]), 0, path)[0]
            return LassoInstance(least_squares, regularization)
        return least_squares
    except (DomainException, KeyError, ValueError) as e:
        raise SerializationError(f"Invalid instance: {e}", path=path) from e


def save_instance(path: PathLike, instance: Instance) -> None:
    write_text(path, instance_lines(instance))


def load_instance(path: PathLike) -> Instance:
    return parse_instance(read_records(path), str(path))


def _agent_header(i: int, components) -> List[str]:
    return [f"AGENT {i + 1}", f"COMPONENTS {labels(components)}"]


def _parse_agent(body: List[Record], path: str) -> Dict[str, object]:
    data: Dict[str, object] = {"H": [], "h": [], "Q": [], "c": [], "BOX": [], "A": defaultdict(list), "a": {}}
    for number, tokens in body:
        keyword, rest = tokens[0], tokens[1:]
        if keyword == "COMPONENTS":
            data["components"] = [parse_label(t, number, path) for t in rest]
        elif keyword in ("H", "Q"):
            data[keyword].append(parse_floats(rest, number, path))
        elif keyword in ("h", "c"):
            data[keyword] = parse_floats(rest, number, path)
        elif keyword == "BOX" and len(rest) == 2:
            data["BOX"].append(parse_floats(rest, number, path))
        elif keyword == "A" and rest:
            data["A"][parse_label(rest[0], number, path)].append(parse_floats(rest[1:], number, path))
        elif keyword == "a" and rest:
            data["a"][parse_label(rest[0], number, path)] = parse_floats(rest[1:], number, path)
        else:
            raise SerializationError(f"Line {number}: unexpected agent record '{' '.join(tokens)}'", path=path)
    if "components" not in data:
        raise SerializationError("Every AGENT section needs a COMPONENTS line", path=path)
    return data
