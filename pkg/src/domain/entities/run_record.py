"""
Run Record Domain Entity.
"""

from datetime import datetime
from typing import Optional
from uuid import UUID, uuid4

from src.domain.value_objects.design_mode import AlgorithmKind, ExperimentDesignMode
from src.domain.value_objects.run_trace import RunSummary
from src.shared.exceptions import ValidationError


class RunRecord:
    """Stored summary of one experiment run."""

    def __init__(
        self,
        run_id: Optional[UUID] = None,
        scenario: str = "",
        seed: int = 0,
        algorithm: AlgorithmKind = AlgorithmKind.PUSH_SUM,
        design_mode: ExperimentDesignMode = ExperimentDesignMode.STANDARD,
        iterations: int = 0,
        iterations_to_threshold: Optional[int] = None,
        total_cost: float = 0.0,
        memory: int = 0,
        final_merit: float = 0.0,
        symmetrized: bool = False,
        created_at: Optional[datetime] = None,
    ):
        """Initialize RunRecord entity."""
        if not scenario or not scenario.strip():
            raise ValidationError("Run record needs a scenario label")
        if iterations < 0 or total_cost < 0 or memory < 0:
            raise ValidationError("Run counters cannot be negative")
        if iterations_to_threshold is not None and iterations_to_threshold > iterations:
            raise ValidationError("Threshold iteration cannot exceed the run length")

        self._id = run_id or uuid4()
        self._scenario = scenario.strip()
        self._seed = seed
        self._algorithm = AlgorithmKind(algorithm)
        self._design_mode = ExperimentDesignMode(design_mode)
        self._iterations = iterations
        self._iterations_to_threshold = iterations_to_threshold
        self._total_cost = total_cost
        self._memory = memory
        self._final_merit = final_merit
        self._symmetrized = symmetrized
        self._created_at = created_at or datetime.utcnow()

    @classmethod
    def from_summary(
        cls,
        scenario: str,
        algorithm: AlgorithmKind,
        design_mode: ExperimentDesignMode,
        summary: RunSummary,
    ) -> "RunRecord":
        return cls(
            scenario=scenario,
            seed=summary.seed or 0,
            algorithm=algorithm,
            design_mode=design_mode,
            iterations=summary.iterations,
            iterations_to_threshold=summary.iterations_to_threshold,
            total_cost=summary.total_cost,
            memory=summary.memory,
            final_merit=summary.final_merit,
            symmetrized=summary.symmetrized,
        )

    @property
    def id(self) -> UUID:
        """Get run ID."""
        return self._id

    @property
    def scenario(self) -> str:
        """Get scenario label."""
        return self._scenario

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def algorithm(self) -> AlgorithmKind:
        return self._algorithm

    @property
    def design_mode(self) -> ExperimentDesignMode:
        return self._design_mode

    @property
    def iterations(self) -> int:
        return self._iterations

    @property
    def iterations_to_threshold(self) -> Optional[int]:
        return self._iterations_to_threshold

    @property
    def total_cost(self) -> float:
        return self._total_cost

    @property
    def memory(self) -> int:
        return self._memory

    @property
    def final_merit(self) -> float:
        return self._final_merit

    @property
    def symmetrized(self) -> bool:
        return self._symmetrized

    @property
    def created_at(self) -> datetime:
        """Get creation timestamp."""
        return self._created_at

    def __eq__(self, other) -> bool:
        if not isinstance(other, RunRecord):
            return False
        return self._id == other._id

    def __hash__(self) -> int:
        return hash(self._id)
