"""
Design mode value objects.
"""

from enum import Enum


class DesignMode(str, Enum):
    """How estimate and design graphs are synthesized."""

    STANDARD = "standard"
    STEINER_UNDIRECTED = "steiner_undirected"
    STEINER_DIRECTED = "steiner_directed"

    def __str__(self) -> str:
        return self.value


class EdgePolicy(str, Enum):
    """Which communication edges a synthesized design graph keeps."""

    ALL_AVAILABLE = "all_available"
    TREE_ONLY = "tree_only"

    def __str__(self) -> str:
        return self.value


class ExperimentDesignMode(str, Enum):
    """Design choice compared in experiments."""

    STANDARD = "standard"
    CUSTOMIZED = "customized"

    def __str__(self) -> str:
        return self.value


class AlgorithmKind(str, Enum):
    """Distributed algorithms available to experiments."""

    PUSH_SUM = "push_sum"
    AUGDGM = "augdgm"
    ADMM = "admm"

    @property
    def rounds_per_iteration(self) -> int:
        """Communication rounds consumed by one iteration."""
        return 2 if self is AlgorithmKind.AUGDGM else 1

    @property
    def needs_undirected_design(self) -> bool:
        return self is not AlgorithmKind.PUSH_SUM

    def __str__(self) -> str:
        return self.value
