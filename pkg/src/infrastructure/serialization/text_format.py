"""
Line-oriented text helpers shared by the graph, layout and instance formats.

Files hold one record per line: a keyword followed by whitespace separated
fields. Blank lines and lines starting with `#` are ignored. Labels are
1-based on disk and 0-based in memory.
"""

from pathlib import Path
from typing import Iterable, List, Sequence, Tuple, Union

from src.shared.exceptions import SerializationError

PathLike = Union[str, Path]
Record = Tuple[int, List[str]]


def format_float(value: float) -> str:
    return format(float(value), ".17g")


def format_floats(values: Iterable[float]) -> str:
    return " ".join(format_float(v) for v in values)


def labels(values: Iterable[int]) -> str:
    """0-based ids as 1-based labels."""
    return " ".join(str(int(v) + 1) for v in values)


def tokenize(text: str) -> List[Record]:
    records = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        records.append((number, line.split()))
    return records


def read_records(path: PathLike) -> List[Record]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SerializationError(f"Cannot read file: {str(e)}", path=str(path)) from e
    return tokenize(text)


def write_text(path: PathLike, lines: Sequence[str]) -> None:
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as e:
        raise SerializationError(f"Cannot write file: {str(e)}", path=str(path)) from e


def parse_label(token: str, number: int, path: str = "") -> int:
    """1-based label to 0-based id."""
    try:
        value = int(token)
    except ValueError:
        raise SerializationError(f"Line {number}: expected an integer label, got '{token}'", path=path) from None
    if value < 1:
        raise SerializationError(f"Line {number}: labels start at 1, got {value}", path=path)
    return value - 1


def parse_int(token: str, number: int, path: str = "") -> int:
    try:
        return int(token)
    except ValueError:
        raise SerializationError(f"Line {number}: expected an integer, got '{token}'", path=path) from None


def parse_floats(tokens: Iterable[str], number: int, path: str = "") -> List[float]:
    try:
        return [float(t) for t in tokens]
    except ValueError as e:
        raise SerializationError(f"Line {number}: {str(e)}", path=path) from None


def split_sections(records: List[Record], keywords: Iterable[str]) -> List[Tuple[Record, List[Record]]]:
    """Group records under the most recent section keyword."""
    heads = set(keywords)
    sections: List[Tuple[Record, List[Record]]] = []
    for record in records:
        if record[1][0] in heads:
            sections.append((record, []))
        elif sections:
            sections[-1][1].append(record)
        else:
            sections.append(((record[0], ["_"]), [record]))
    return sections
