"""
Algorithm diagnostic reports.
"""

from dataclasses import dataclass, field
from typing import List, Tuple


@dataclass(frozen=True)
class AbcConditionReport:
    """Numerical verdict on the convergence conditions of an ABC matrix set."""
    c1: bool
    c2: bool
    c3: bool
    c4: bool
    c5: bool
    lambda_lower: float
    lambda_min_d: float
    b_minus_parallel_norm: float
    failures: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.c1 and self.c2 and self.c3 and self.c4 and self.c5


@dataclass(frozen=True)
class PushSumDiagnosticsReport:
    """Per-iteration checks of the push-sum averaged dynamics."""
    averaged_recursion_residuals: List[float] = field(default_factory=list)
    consensus_errors: List[float] = field(default_factory=list)
    descent_violations: List[int] = field(default_factory=list)
    subgradient_bound: float = 0.0
    bound_exceedances: List[int] = field(default_factory=list)

    @property
    def max_averaged_recursion_residual(self) -> float:
        return max(self.averaged_recursion_residuals, default=0.0)

    @property
    def violation_count(self) -> int:
        return len(self.descent_violations)
