"""
Run trace value objects.
"""

from dataclasses import dataclass, field
from typing import List, Optional

from src.shared.exceptions import ValidationError


@dataclass(frozen=True)
class TraceRow:
    """One recorded iteration."""
    k: int
    merit: float
    consensus_residual: float
    cum_cost: float
    wall_time: float = 0.0


@dataclass(frozen=True)
class RunSummary:
    """Outcome of a run."""
    iterations: int
    iterations_to_threshold: Optional[int]
    total_cost: float
    memory: int
    final_merit: float
    symmetrized: bool = False
    seed: Optional[int] = None
    generator: str = "PCG64"

    @property
    def reached_threshold(self) -> bool:
        return self.iterations_to_threshold is not None


@dataclass
class RunTrace:
    """Rows of a run plus its summary; cumulative cost never decreases."""
    rows: List[TraceRow] = field(default_factory=list)
    summary: Optional[RunSummary] = None

    def append(self, row: TraceRow) -> None:
        if self.rows and row.cum_cost < self.rows[-1].cum_cost:
            raise ValidationError(
                f"Cumulative cost decreased at k={row.k}: {row.cum_cost} < {self.rows[-1].cum_cost}"
            )
        self.rows.append(row)

    @property
    def last(self) -> Optional[TraceRow]:
        return self.rows[-1] if self.rows else None

    def __len__(self) -> int:
        return len(self.rows)
