"""
Stacked Vector Domain Entity.
"""

from typing import TYPE_CHECKING, Callable, Dict, Mapping, Optional, Tuple

import numpy as np

from src.domain.entities.end_layout import ENDLayout
from src.domain.entities.weight_matrix import WeightMatrix
from src.shared.exceptions import EntityNotFoundError, ValidationError

if TYPE_CHECKING:
    from src.domain.services.locality import LocalityMonitor


class StackedVector:
    """All copies of all components.

    Component p is stored as an (N_p, n_{y_p}) array whose rows follow the
    ascending agent order of the copy set. Instances are values: arrays are
    copied in and frozen.
    """

    def __init__(self, layout: ENDLayout, blocks: Mapping[int, np.ndarray]):
        """Initialize StackedVector entity."""
        stored = {}
        for p in layout.components:
            if p not in blocks:
                raise ValidationError(f"Missing block for component {p}")
            shape = (layout.copy_count(p), layout.partition.size_of(p))
            block = np.array(blocks[p], dtype=float).reshape(shape)
            block.setflags(write=False)
            stored[p] = block
        self._layout = layout
        self._blocks = stored

    @property
    def layout(self) -> ENDLayout:
        """Get the layout this vector is stacked on."""
        return self._layout

    def component(self, p: int) -> np.ndarray:
        """Get the (N_p, n_{y_p}) block of component p."""
        try:
            return self._blocks[p]
        except KeyError:
            raise EntityNotFoundError("Component", str(p)) from None

    def select(self, p: int, i: int) -> np.ndarray:
        """Get the copy 𝒚_{i,p} held by agent i."""
        return self.component(p)[self._layout.local_index(p, i)].copy()

    def agent_view(self, i: int) -> Dict[int, np.ndarray]:
        """Get ỹ_i, the copies held by agent i in ascending component order."""
        return {p: self.select(p, i) for p in self._layout.estimated_components(i)}

    def with_block(self, p: int, i: int, value: np.ndarray) -> "StackedVector":
        """Copy of this vector with 𝒚_{i,p} replaced."""
        blocks = {q: block.copy() for q, block in self._blocks.items()}
        blocks[p][self._layout.local_index(p, i)] = np.asarray(value, dtype=float).reshape(-1)
        return StackedVector(self._layout, blocks)

    @classmethod
    def zeros(cls, layout: ENDLayout) -> "StackedVector":
        return cls(
            layout,
            {p: np.zeros((layout.copy_count(p), layout.partition.size_of(p))) for p in layout.components},
        )

    @classmethod
    def lift(cls, layout: ENDLayout, y: np.ndarray) -> "StackedVector":
        """𝑬(y): every copy of component p equals y_p."""
        parts = layout.partition.split(y)
        return cls(layout, {p: np.tile(parts[p], (layout.copy_count(p), 1)) for p in layout.components})

    @classmethod
    def from_flat(cls, layout: ENDLayout, flat: np.ndarray) -> "StackedVector":
        """Rebuild from the component-blocked flat ordering."""
        vector = np.asarray(flat, dtype=float).reshape(-1)
        if vector.shape[0] != layout.stacked_size:
            raise ValidationError(f"Stacked vector needs {layout.stacked_size} entries, got {vector.shape[0]}")
        blocks, offset = {}, 0
        for p in layout.components:
            count = layout.copy_count(p) * layout.partition.size_of(p)
            blocks[p] = vector[offset:offset + count]
            offset += count
        return cls(layout, blocks)

    def to_flat(self) -> np.ndarray:
        return np.concatenate([self._blocks[p].reshape(-1) for p in self._layout.components])

    def averages(self) -> Dict[int, np.ndarray]:
        """Per-component block averages."""
        return {p: block.mean(axis=0) for p, block in self._blocks.items()}

    def consensus_project(self) -> Tuple["StackedVector", "StackedVector"]:
        """Split into the consensus part and its orthogonal complement."""
        parallel = {p: np.tile(block.mean(axis=0), (block.shape[0], 1)) for p, block in self._blocks.items()}
        orthogonal = {p: self._blocks[p] - parallel[p] for p in self._blocks}
        return StackedVector(self._layout, parallel), StackedVector(self._layout, orthogonal)

    def consensus_residual(self) -> float:
        """‖Π_⊥ 𝒚‖."""
        _, orthogonal = self.consensus_project()
        return orthogonal.norm()

    def weighted_consensus_residual(self) -> float:
        """‖diag((1/N_p) I) Π_⊥ 𝒚‖."""
        total = 0.0
        for p, block in self._blocks.items():
            deviation = block - block.mean(axis=0)
            total += float(np.sum(deviation ** 2)) / block.shape[0] ** 2
        return float(np.sqrt(total))

    def map_components(self, fn: Callable[[int, np.ndarray], np.ndarray]) -> "StackedVector":
        return StackedVector(self._layout, {p: fn(p, block) for p, block in self._blocks.items()})

    def norm(self) -> float:
        return float(np.sqrt(sum(float(np.sum(block ** 2)) for block in self._blocks.values())))

    def max_abs(self) -> float:
        return max(float(np.max(np.abs(block))) for block in self._blocks.values())

    def dot(self, other: "StackedVector") -> float:
        self._require_same_layout(other)
        return float(sum(np.sum(self._blocks[p] * other._blocks[p]) for p in self._blocks))

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(block)) for block in self._blocks.values())

    def _require_same_layout(self, other: "StackedVector") -> None:
        if other._layout is not self._layout and other._layout.estimate != self._layout.estimate:
            raise ValidationError("Stacked vectors belong to different layouts")

    def __add__(self, other: "StackedVector") -> "StackedVector":
        self._require_same_layout(other)
        return StackedVector(self._layout, {p: self._blocks[p] + other._blocks[p] for p in self._blocks})

    def __sub__(self, other: "StackedVector") -> "StackedVector":
        self._require_same_layout(other)
        return StackedVector(self._layout, {p: self._blocks[p] - other._blocks[p] for p in self._blocks})

    def __mul__(self, scalar: float) -> "StackedVector":
        return StackedVector(self._layout, {p: block * scalar for p, block in self._blocks.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "StackedVector":
        return self * -1.0

    def __eq__(self, other) -> bool:
        if not isinstance(other, StackedVector):
            return False
        return self._layout.estimate == other._layout.estimate and all(
            np.array_equal(self._blocks[p], other._blocks[p]) for p in self._blocks
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"StackedVector(size={self._layout.stacked_size}, residual={self.consensus_residual():.3e})"


class StackedWeightOperator:
    """Per-component weight matrices acting block-diagonally on a stacked vector."""

    def __init__(self, layout: ENDLayout, weights: Mapping[int, WeightMatrix]):
        """Initialize StackedWeightOperator entity."""
        for p in layout.components:
            if p not in weights:
                raise ValidationError(f"Missing weight matrix for component {p}")
            graph = weights[p].graph
            if graph.vertices != layout.copies(p):
                raise ValidationError(f"Weights of component {p} are not indexed by its copy set")
            if not graph.without_self_loops().is_subgraph_of(layout.design_graph(p)):
                raise ValidationError(f"Weights of component {p} use edges outside its design graph")
        self._layout = layout
        self._weights = {p: weights[p] for p in layout.components}

    @property
    def layout(self) -> ENDLayout:
        return self._layout

    def weight_matrix(self, p: int) -> WeightMatrix:
        return self._weights[p]

    def matrix(self, p: int) -> np.ndarray:
        """Get dense W_p."""
        return self._weights[p].entries

    def apply(self, y: StackedVector, monitor: Optional["LocalityMonitor"] = None) -> StackedVector:
        """Mix each component with its weights: 𝒚_p ← (W_p ⊗ I) 𝒚_p."""
        if y.layout.estimate != self._layout.estimate:
            raise ValidationError("Weight operator and stacked vector belong to different layouts")
        if monitor is not None:
            for p in self._layout.components:
                monitor.record_mixing(p, self._weights[p])
        return y.map_components(lambda p, block: self._weights[p].entries @ block)

    def apply_scalars(self, values: Mapping[int, np.ndarray]) -> Dict[int, np.ndarray]:
        """Mix one scalar per copy, component by component."""
        return {p: self._weights[p].entries @ np.asarray(values[p], dtype=float) for p in self._layout.components}

    def is_doubly_stochastic(self, tol: float = 1e-12) -> bool:
        return all(w.is_row_stochastic(tol) and w.is_column_stochastic(tol) for w in self._weights.values())

    def is_column_stochastic(self, tol: float = 1e-12) -> bool:
        return all(w.is_column_stochastic(tol) for w in self._weights.values())


def apply_stacked_weights(weights: StackedWeightOperator, y: StackedVector) -> StackedVector:
    return weights.apply(y)
