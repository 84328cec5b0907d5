"""
Partition Domain Entity.
"""

from typing import Dict, Iterable, Tuple

import numpy as np

from src.shared.exceptions import EntityNotFoundError, ValidationError


class Partition:
    """Split of the decision variable y into components y_0, ..., y_{P-1}."""

    def __init__(self, block_sizes: Iterable[int]):
        """Initialize Partition entity."""
        sizes = tuple(int(n) for n in block_sizes)
        if not sizes:
            raise ValidationError("Partition needs at least one component")
        if any(n < 1 for n in sizes):
            raise ValidationError("Component sizes must be positive")

        self._sizes = sizes
        self._offsets = tuple(int(o) for o in np.concatenate(([0], np.cumsum(sizes)[:-1])))

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        """Get component sizes n_{y_p}."""
        return self._sizes

    @property
    def component_count(self) -> int:
        """Get number of components P."""
        return len(self._sizes)

    @property
    def components(self) -> Tuple[int, ...]:
        return tuple(range(len(self._sizes)))

    @property
    def total_size(self) -> int:
        """Get n_y."""
        return sum(self._sizes)

    def size_of(self, p: int) -> int:
        self._require_component(p)
        return self._sizes[p]

    def slice_of(self, p: int) -> slice:
        self._require_component(p)
        return slice(self._offsets[p], self._offsets[p] + self._sizes[p])

    def split(self, y: np.ndarray) -> Dict[int, np.ndarray]:
        """Cut a full vector into its components."""
        vector = np.asarray(y, dtype=float).reshape(-1)
        if vector.shape[0] != self.total_size:
            raise ValidationError(f"Vector length {vector.shape[0]} does not match partition size {self.total_size}")
        return {p: vector[self.slice_of(p)].copy() for p in self.components}

    def join(self, parts: Dict[int, np.ndarray]) -> np.ndarray:
        """Concatenate components in ascending order."""
        return np.concatenate([np.asarray(parts[p], dtype=float).reshape(-1) for p in self.components])

    def _require_component(self, p: int) -> None:
        if not 0 <= p < len(self._sizes):
            raise EntityNotFoundError("Component", str(p))

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self._sizes == other._sizes

    def __hash__(self) -> int:
        return hash(self._sizes)

    def __repr__(self) -> str:
        return f"Partition({list(self._sizes)})"
