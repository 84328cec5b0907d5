"""
CSV output for run traces and sweep summaries.
"""

import csv
import io
from pathlib import Path
from typing import Any, Dict, List, Sequence

from src.domain.value_objects.run_trace import RunTrace
from src.infrastructure.serialization.text_format import PathLike, format_float
from src.shared.exceptions import SerializationError

TRACE_HEADER = ("k", "merit", "consensus_residual", "cum_cost")
SUMMARY_COLUMNS = (
    "scenario",
    "seed",
    "agents",
    "sources",
    "sensing_radius",
    "comm_radius_min",
    "algorithm",
    "mode",
    "symmetrized",
    "iters_to_threshold",
    "total_cost",
    "memory",
    "final_merit",
)


def trace_csv_text(trace: RunTrace) -> str:
    """Trace rows without wall time, then the summary as `#` comment lines."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(TRACE_HEADER)
    for row in trace.rows:
        writer.writerow(
            [row.k, format_float(row.merit), format_float(row.consensus_residual), format_float(row.cum_cost)]
        )
    summary = trace.summary
    if summary is not None:
        reached = "" if summary.iterations_to_threshold is None else summary.iterations_to_threshold
        buffer.write(f"# generator={summary.generator}\n")
        buffer.write(f"# seed={'' if summary.seed is None else summary.seed}\n")
        buffer.write(f"# iterations={summary.iterations}\n")
        buffer.write(f"# iterations_to_threshold={reached}\n")
        buffer.write(f"# total_cost={format_float(summary.total_cost)}\n")
        buffer.write(f"# memory={summary.memory}\n")
        buffer.write(f"# final_merit={format_float(summary.final_merit)}\n")
        buffer.write(f"# symmetrized={str(summary.symmetrized).lower()}\n")
    return buffer.getvalue()


def emit_csv(trace: RunTrace, path: PathLike) -> None:
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", encoding="utf-8", newline="") as f:
            f.write(trace_csv_text(trace))
    except OSError as e:
        raise SerializationError(f"Cannot write trace: {str(e)}", path=str(path)) from e


def write_summary_csv(rows: Sequence[Dict[str, Any]], path: PathLike) -> None:
    """One row per sweep cell, in the given order."""
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=SUMMARY_COLUMNS, lineterminator="\n", extrasaction="ignore")
            writer.writeheader()
            for row in rows:
                writer.writerow({key: _cell(row.get(key)) for key in SUMMARY_COLUMNS})
    except OSError as e:
        raise SerializationError(f"Cannot write summary: {str(e)}", path=str(path)) from e


def read_trace_rows(path: PathLike) -> List[Dict[str, str]]:
    """Data rows of a trace file, comment lines skipped."""
    try:
        with Path(path).open(encoding="utf-8", newline="") as f:
            return list(csv.DictReader(line for line in f if not line.startswith("#")))
    except OSError as e:
        raise SerializationError(f"Cannot read trace: {str(e)}", path=str(path)) from e


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format_float(value)
    return str(value)
