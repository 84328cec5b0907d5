"""
Partially Separable Cost Domain Entity.
"""

from abc import ABC, abstractmethod
from typing import Dict, Iterable, Mapping, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from src.domain.entities.bipartite_graph import BipartiteGraph
from src.domain.entities.partition import Partition
from src.shared.exceptions import (
    EntityNotFoundError,
    InnerSolverError,
    MissingArgminOracleError,
    NotDifferentiableError,
    ValidationError,
)

View = Mapping[int, np.ndarray]


class SeparableCost(ABC):
    """Cost f(y) = Σ_i f_i(y_p : p ∈ 𝒩_I(i)).

    Oracles take a view, a mapping from component to the agent's copy. The
    view may carry extra components; only the interfering ones are read.
    An agent with an empty 𝒩_I(i) is a relay: its f_i is constant and its
    gradient has no blocks.
    """

    def __init__(self, partition: Partition, agent_components: Mapping[int, Iterable[int]]):
        agents = tuple(sorted(agent_components))
        if agents != tuple(range(len(agents))) or not agents:
            raise ValidationError("Agents must be numbered 0..N-1")

        components = {}
        for i in agents:
            comps = tuple(sorted(set(int(p) for p in agent_components[i])))
            for p in comps:
                if p not in partition.components:
                    raise ValidationError(f"Agent {i} refers to unknown component {p}")
            components[i] = comps

        self._partition = partition
        self._components = components

    @property
    def partition(self) -> Partition:
        return self._partition

    @property
    def agent_count(self) -> int:
        return len(self._components)

    @property
    def agents(self) -> Tuple[int, ...]:
        return tuple(range(len(self._components)))

    def components_of(self, i: int) -> Tuple[int, ...]:
        """Get 𝒩_I(i)."""
        try:
            return self._components[i]
        except KeyError:
            raise EntityNotFoundError("Agent", str(i)) from None

    def interference_graph(self) -> BipartiteGraph:
        """𝒢_I implied by the per-agent component lists."""
        return BipartiteGraph(
            self._partition.components,
            self.agents,
            ((p, i) for i, comps in self._components.items() for p in comps),
        )

    @property
    def differentiable(self) -> bool:
        return True

    @property
    def convex(self) -> bool:
        return True

    @property
    def smoothness(self) -> Optional[float]:
        """Lipschitz constant of the gradients, when known."""
        return None

    @abstractmethod
    def value_i(self, i: int, view: View) -> float:
        """Evaluate f_i at the agent's copies."""

    def agent_gradient(self, i: int, view: View) -> Dict[int, np.ndarray]:
        """∇_{y_p} f_i for every p ∈ 𝒩_I(i)."""
        raise NotDifferentiableError(
            f"{type(self).__name__} has no gradient oracle; use the subgradient path"
        )

    def agent_subgradient(self, i: int, view: View) -> Dict[int, np.ndarray]:
        """A subgradient selection of f_i, block by block."""
        return self.agent_gradient(i, view)

    def gradient_i(self, i: int, view: View, p: int) -> np.ndarray:
        self._require_interfering(i, p)
        return self.agent_gradient(i, view)[p]

    def subgradient_i(self, i: int, view: View, p: int) -> np.ndarray:
        self._require_interfering(i, p)
        return self.agent_subgradient(i, view)[p]

    def local_subgradient_norm_bound(self, i: int, view: View) -> float:
        """Upper bound on ‖g‖ over the subdifferential of f_i at the view."""
        blocks = self.agent_subgradient(i, view)
        return float(np.sqrt(sum(float(g @ g) for g in blocks.values())))

    @property
    def subgradient_growth(self) -> Optional[float]:
        """How much local_subgradient_norm_bound can grow per unit move of the view."""
        return self.smoothness

    def value(self, y: np.ndarray) -> float:
        """Centralized f(y)."""
        parts = self._partition.split(y)
        return float(sum(self.value_i(i, parts) for i in self.agents))

    def gradient(self, y: np.ndarray) -> np.ndarray:
        """Centralized ∇f(y)."""
        parts = self._partition.split(y)
        total = {p: np.zeros(self._partition.size_of(p)) for p in self._partition.components}
        for i in self.agents:
            for p, g in self.agent_gradient(i, parts).items():
                total[p] = total[p] + g
        return self._partition.join(total)

    def local_argmin(self, i: int, penalty: Mapping[int, float], linear: Mapping[int, np.ndarray]) -> Dict[int, np.ndarray]:
        """argmin_u f_i(u) + Σ_p (penalty_p/2)‖u_p‖² − ⟨linear_p, u_p⟩ over the keys of penalty.

        Components outside 𝒩_I(i) do not enter f_i and are solved in closed
        form; the rest go to the class-specific oracle.
        """
        interfering = self.components_of(i)
        solution = {}
        for p in penalty:
            if p in interfering:
                continue
            if penalty[p] <= 0:
                raise ValidationError(f"Component {p} of agent {i} needs a positive penalty")
            solution[p] = np.asarray(linear[p], dtype=float) / penalty[p]

        inner_penalty = {p: float(penalty.get(p, 0.0)) for p in interfering}
        inner_linear = {
            p: np.asarray(linear[p], dtype=float) if p in linear else np.zeros(self._partition.size_of(p))
            for p in interfering
        }
        if interfering:
            solution.update(self._interfering_argmin(i, inner_penalty, inner_linear))
        return solution

    def _interfering_argmin(self, i: int, penalty: Dict[int, float], linear: Dict[int, np.ndarray]) -> Dict[int, np.ndarray]:
        if not self.differentiable:
            raise MissingArgminOracleError(f"{type(self).__name__} provides no local argmin oracle")

        comps = self.components_of(i)
        sizes = [self._partition.size_of(p) for p in comps]
        offsets = np.cumsum([0] + sizes)

        def unpack(u):
            return {p: u[offsets[k]:offsets[k + 1]] for k, p in enumerate(comps)}

        def objective(u):
            view = unpack(u)
            value = self.value_i(i, view)
            grads = self.agent_gradient(i, view)
            grad = []
            for p in comps:
                value += 0.5 * penalty[p] * float(view[p] @ view[p]) - float(linear[p] @ view[p])
                grad.append(grads[p] + penalty[p] * view[p] - linear[p])
            return value, np.concatenate(grad)

        result = minimize(
            objective,
            np.zeros(offsets[-1]),
            jac=True,
            method="L-BFGS-B",
            options={"gtol": 1e-12, "ftol": 1e-15, "maxiter": 10000},
        )
        residual = float(np.linalg.norm(result.jac))
        if not result.success and residual > 1e-6:
            raise InnerSolverError(f"Local argmin of agent {i} failed: {result.message}", residual=residual)
        return unpack(result.x)

    def _require_interfering(self, i: int, p: int) -> None:
        if p not in self.components_of(i):
            raise ValidationError(f"Cost of agent {i} does not depend on component {p}")

    @staticmethod
    def concat_view(view: View, components: Iterable[int]) -> np.ndarray:
        blocks = [np.asarray(view[p], dtype=float).reshape(-1) for p in components]
        return np.concatenate(blocks) if blocks else np.zeros(0)
