"""
Constraint-Coupled Problem Instance and its Dual.
"""

import logging
from typing import Dict, Iterable, Mapping, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from src.domain.entities.partition import Partition
from src.domain.entities.separable_cost import SeparableCost, View
from src.shared.exceptions import EntityNotFoundError, InnerSolverError, ValidationError

logger = logging.getLogger(__name__)

INNER_TOLERANCE = 1e-8


class ConstraintCoupledInstance:
    """min Σ_i ½x_iᵀQ_i x_i + c_iᵀx_i over boxes, s.t. Σ_i (A_{p,i}x_i − a_{p,i}) = 0 for each p.

    The partition describes the constraint blocks: component p has as many
    rows as constraint p, and its dual variable lives in that space.
    """

    def __init__(
        self,
        partition: Partition,
        agent_components: Mapping[int, Iterable[int]],
        quadratic: Mapping[int, np.ndarray],
        linear: Mapping[int, np.ndarray],
        lower: Mapping[int, np.ndarray],
        upper: Mapping[int, np.ndarray],
        coupling: Mapping[Tuple[int, int], np.ndarray],
        offsets: Mapping[Tuple[int, int], np.ndarray],
    ):
        """Initialize ConstraintCoupledInstance entity."""
        agents = tuple(sorted(agent_components))
        if agents != tuple(range(len(agents))) or not agents:
            raise ValidationError("Agents must be numbered 0..N-1")

        self._partition = partition
        self._components: Dict[int, Tuple[int, ...]] = {}
        self._Q, self._c, self._lower, self._upper = {}, {}, {}, {}
        self._A: Dict[Tuple[int, int], np.ndarray] = {}
        self._a: Dict[Tuple[int, int], np.ndarray] = {}

        for i in agents:
            Q = np.array(quadratic[i], dtype=float, ndmin=2)
            n = Q.shape[0]
            if Q.shape != (n, n) or not np.allclose(Q, Q.T):
                raise ValidationError(f"Q of agent {i} must be square and symmetric")
            if np.min(np.linalg.eigvalsh(Q)) < -1e-12:
                raise ValidationError(f"Q of agent {i} must be positive semidefinite")
            c = np.array(linear[i], dtype=float).reshape(-1)
            lo = np.array(lower[i], dtype=float).reshape(-1)
            hi = np.array(upper[i], dtype=float).reshape(-1)
            if c.shape[0] != n or lo.shape[0] != n or hi.shape[0] != n:
                raise ValidationError(f"Local data of agent {i} must have {n} entries")
            if not np.all(np.isfinite(lo)) or not np.all(np.isfinite(hi)) or np.any(lo > hi):
                raise ValidationError(f"Domain of agent {i} must be a nonempty bounded box")

            comps = tuple(sorted(set(int(p) for p in agent_components[i])))
            if not comps:
                raise ValidationError(f"Agent {i} takes part in no constraint")
            for p in comps:
                A = np.array(coupling[(p, i)], dtype=float, ndmin=2)
                a = np.array(offsets[(p, i)], dtype=float).reshape(-1)
                if A.shape != (partition.size_of(p), n):
                    raise ValidationError(
                        f"A of constraint {p}, agent {i} must be {partition.size_of(p)}x{n}, got {A.shape}"
                    )
                if a.shape[0] != partition.size_of(p):
                    raise ValidationError(f"a of constraint {p}, agent {i} has the wrong length")
                self._A[(p, i)], self._a[(p, i)] = A, a

            self._components[i] = comps
            self._Q[i], self._c[i], self._lower[i], self._upper[i] = Q, c, lo, hi

    @property
    def partition(self) -> Partition:
        return self._partition

    @property
    def agents(self) -> Tuple[int, ...]:
        return tuple(range(len(self._components)))

    def components_of(self, i: int) -> Tuple[int, ...]:
        try:
            return self._components[i]
        except KeyError:
            raise EntityNotFoundError("Agent", str(i)) from None

    def local_dimension(self, i: int) -> int:
        return self._Q[i].shape[0]

    def quadratic(self, i: int) -> np.ndarray:
        return self._Q[i]

    def linear(self, i: int) -> np.ndarray:
        return self._c[i]

    def box(self, i: int) -> Tuple[np.ndarray, np.ndarray]:
        return self._lower[i], self._upper[i]

    def coupling(self, p: int, i: int) -> np.ndarray:
        return self._A[(p, i)]

    def offset(self, p: int, i: int) -> np.ndarray:
        return self._a[(p, i)]

    def local_cost(self, i: int, x: np.ndarray) -> float:
        return float(0.5 * x @ self._Q[i] @ x + self._c[i] @ x)

    def is_strongly_convex(self) -> bool:
        return all(np.min(np.linalg.eigvalsh(Q)) > 1e-12 for Q in self._Q.values())

    def primal_response(self, i: int, dual_view: View) -> np.ndarray:
        """x_i⋆ ∈ argmin over the box of f_i(x) + Σ_p ⟨y_p, A_{p,i}x − a_{p,i}⟩."""
        Q, lo, hi = self._Q[i], self._lower[i], self._upper[i]
        shift = self._c[i].copy()
        for p in self._components[i]:
            shift = shift + self._A[(p, i)].T @ np.asarray(dual_view[p], dtype=float)

        if np.min(np.linalg.eigvalsh(Q)) > 1e-12:
            x = np.linalg.solve(Q, -shift)
            if np.all(x >= lo) and np.all(x <= hi):
                return x

        def objective(x):
            return 0.5 * x @ Q @ x + shift @ x, Q @ x + shift

        result = minimize(
            objective,
            np.clip(np.zeros_like(shift), lo, hi),
            jac=True,
            method="L-BFGS-B",
            bounds=list(zip(lo, hi)),
            options={"gtol": 1e-12, "ftol": 1e-15, "maxiter": 10000},
        )
        x = result.x
        gradient = Q @ x + shift
        projected = x - np.clip(x - gradient, lo, hi)
        residual = float(np.linalg.norm(projected))
        if residual > INNER_TOLERANCE:
            raise InnerSolverError(f"Inner box-constrained solve of agent {i} failed", residual=residual)
        return x

    def dual_value_i(self, i: int, dual_view: View) -> float:
        """φ_i at the agent's dual copies."""
        x = self.primal_response(i, dual_view)
        return self.local_cost(i, x) + sum(
            float(np.asarray(dual_view[p], dtype=float) @ (self._A[(p, i)] @ x - self._a[(p, i)]))
            for p in self._components[i]
        )

    def dual_subgradient(self, i: int, dual_view: View) -> Dict[int, np.ndarray]:
        """g_{i,p} = A_{p,i}x_i⋆ − a_{p,i}, a supergradient of the concave φ_i."""
        x = self.primal_response(i, dual_view)
        return {p: self._A[(p, i)] @ x - self._a[(p, i)] for p in self._components[i]}

    def constraint_residual(self, xs: Mapping[int, np.ndarray]) -> Dict[int, np.ndarray]:
        """Σ_i (A_{p,i}x_i − a_{p,i}) for each constraint."""
        total = {p: np.zeros(self._partition.size_of(p)) for p in self._partition.components}
        for i in self.agents:
            for p in self._components[i]:
                total[p] = total[p] + self._A[(p, i)] @ xs[i] - self._a[(p, i)]
        return total

    def subgradient_bound(self, i: int) -> float:
        """Largest ‖(A_{p,i}x − a_{p,i})_p‖ over the box."""
        lo, hi = self._lower[i], self._upper[i]
        radius = float(np.linalg.norm(np.maximum(np.abs(lo), np.abs(hi))))
        stacked_A = np.vstack([self._A[(p, i)] for p in self._components[i]])
        stacked_a = np.concatenate([self._a[(p, i)] for p in self._components[i]])
        return float(np.linalg.norm(stacked_A, 2)) * radius + float(np.linalg.norm(stacked_a))


class DualProblem(SeparableCost):
    """Minimization form of the dual: agent i holds −φ_i over its dual copies."""

    def __init__(self, primal: ConstraintCoupledInstance):
        """Initialize DualProblem entity."""
        super().__init__(primal.partition, {i: primal.components_of(i) for i in primal.agents})
        self._primal = primal
        self._strongly_convex = primal.is_strongly_convex()
        self._smoothness: Optional[float] = None
        if self._strongly_convex:
            self._smoothness = max(
                float(np.linalg.norm(np.vstack([primal.coupling(p, i) for p in primal.components_of(i)]), 2)) ** 2
                / float(np.min(np.linalg.eigvalsh(primal.quadratic(i))))
                for i in primal.agents
            )

    @property
    def primal(self) -> ConstraintCoupledInstance:
        return self._primal

    @property
    def differentiable(self) -> bool:
        return self._strongly_convex

    @property
    def smoothness(self) -> Optional[float]:
        return self._smoothness

    def value_i(self, i: int, view: View) -> float:
        return -self._primal.dual_value_i(i, view)

    def agent_gradient(self, i: int, view: View) -> Dict[int, np.ndarray]:
        if not self._strongly_convex:
            return super().agent_gradient(i, view)
        return self.agent_subgradient(i, view)

    def agent_subgradient(self, i: int, view: View) -> Dict[int, np.ndarray]:
        return {p: -g for p, g in self._primal.dual_subgradient(i, view).items()}

    def local_subgradient_norm_bound(self, i: int, view: View) -> float:
        return self._primal.subgradient_bound(i)

    @property
    def subgradient_growth(self) -> float:
        # the box bound already holds for every dual point
        return 0.0

    def recover_primal(self, dual: np.ndarray) -> Dict[int, np.ndarray]:
        """x_i⋆ at a consensus dual point."""
        parts = self.partition.split(dual)
        return {i: self._primal.primal_response(i, parts) for i in self.agents}
