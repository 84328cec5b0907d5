"""
Least Squares and LASSO Problem Instances.
"""

from typing import Dict, Iterable, Mapping, Optional

import numpy as np

from src.domain.entities.partition import Partition
from src.domain.entities.separable_cost import SeparableCost, View
from src.domain.services.proximal import minimize_quadratic_l1
from src.shared.exceptions import ValidationError


class LeastSquaresInstance(SeparableCost):
    """f_i(u) = ‖h_i − H_i u‖² with u the concatenation of y_p, p ∈ 𝒩_I(i), ascending."""

    def __init__(
        self,
        partition: Partition,
        agent_components: Mapping[int, Iterable[int]],
        output_matrices: Mapping[int, np.ndarray],
        measurements: Mapping[int, np.ndarray],
        truth: Optional[np.ndarray] = None,
    ):
        """Initialize LeastSquaresInstance entity."""
        super().__init__(partition, agent_components)

        self._H: Dict[int, np.ndarray] = {}
        self._h: Dict[int, np.ndarray] = {}
        self._gram: Dict[int, np.ndarray] = {}
        self._Hh: Dict[int, np.ndarray] = {}
        self._offsets: Dict[int, Dict[int, slice]] = {}
        for i in self.agents:
            comps = self.components_of(i)
            width = sum(partition.size_of(p) for p in comps)
            H = np.array(output_matrices[i], dtype=float, ndmin=2)
            h = np.array(measurements[i], dtype=float).reshape(-1)
            if H.shape[1] != width:
                raise ValidationError(f"H of agent {i} needs {width} columns, got {H.shape[1]}")
            if H.shape[0] != h.shape[0]:
                raise ValidationError(f"H and h of agent {i} disagree on the measurement count")
            H.setflags(write=False)
            h.setflags(write=False)
            self._H[i], self._h[i] = H, h
            self._gram[i] = H.T @ H
            self._Hh[i] = H.T @ h

            offsets, start = {}, 0
            for p in comps:
                offsets[p] = slice(start, start + partition.size_of(p))
                start += partition.size_of(p)
            self._offsets[i] = offsets

        self._truth = None if truth is None else np.array(truth, dtype=float).reshape(-1)
        self._smoothness = 2.0 * max(
            (float(np.max(np.linalg.eigvalsh(g))) for g in self._gram.values() if g.size), default=0.0
        )

    def output_matrix(self, i: int) -> np.ndarray:
        """Get H_i."""
        return self._H[i]

    def measurement(self, i: int) -> np.ndarray:
        """Get h_i."""
        return self._h[i]

    @property
    def truth(self) -> Optional[np.ndarray]:
        """Get the generating ȳ, when known."""
        return self._truth

    @property
    def smoothness(self) -> float:
        return self._smoothness

    def value_i(self, i: int, view: View) -> float:
        residual = self._h[i] - self._H[i] @ self.concat_view(view, self.components_of(i))
        return float(residual @ residual)

    def agent_gradient(self, i: int, view: View) -> Dict[int, np.ndarray]:
        u = self.concat_view(view, self.components_of(i))
        g = 2.0 * (self._gram[i] @ u - self._Hh[i])
        return {p: g[s] for p, s in self._offsets[i].items()}

    def design_matrix(self) -> np.ndarray:
        """Stack every H_i into one matrix over the full y."""
        rows = []
        for i in self.agents:
            block = np.zeros((self._H[i].shape[0], self.partition.total_size))
            for p, s in self._offsets[i].items():
                block[:, self.partition.slice_of(p)] = self._H[i][:, s]
            rows.append(block)
        return np.vstack(rows)

    def stacked_measurements(self) -> np.ndarray:
        return np.concatenate([self._h[i] for i in self.agents])

    def local_normal_system(self, i: int, penalty: Mapping[int, float], linear: Mapping[int, np.ndarray]):
        """Q and c of the local quadratic ½uᵀQu − cᵀu."""
        comps = self.components_of(i)
        diagonal = np.concatenate([np.full(self.partition.size_of(p), penalty[p]) for p in comps])
        Q = 2.0 * self._gram[i] + np.diag(diagonal)
        c = 2.0 * self._Hh[i] + self.concat_view(linear, comps)
        return Q, c

    def _interfering_argmin(self, i, penalty, linear):
        Q, c = self.local_normal_system(i, penalty, linear)
        if np.linalg.matrix_rank(Q) == Q.shape[0]:
            u = np.linalg.solve(Q, c)
        else:
            u = np.linalg.lstsq(Q, c, rcond=None)[0]
        return {p: u[s] for p, s in self._offsets[i].items()}


class LassoInstance(SeparableCost):
    """Least squares plus λ‖y‖₁, split so that agent i pays λ/|𝒩^out_I(p)| · ‖y_p‖₁ for each p ∈ 𝒩_I(i)."""

    def __init__(self, least_squares: LeastSquaresInstance, regularization: float = 1.0):
        """Initialize LassoInstance entity."""
        super().__init__(
            least_squares.partition,
            {i: least_squares.components_of(i) for i in least_squares.agents},
        )
        if regularization < 0:
            raise ValidationError("Regularization must be nonnegative")
        self._ls = least_squares
        self._regularization = float(regularization)
        interference = least_squares.interference_graph()
        self._weights = {p: 1.0 / len(interference.agents_of(p)) for p in self.partition.components}

    @property
    def least_squares(self) -> LeastSquaresInstance:
        return self._ls

    @property
    def regularization(self) -> float:
        return self._regularization

    @property
    def differentiable(self) -> bool:
        return False

    @property
    def smoothness(self) -> float:
        """Lipschitz constant of the quadratic part."""
        return self._ls.smoothness

    @property
    def truth(self) -> Optional[np.ndarray]:
        return self._ls.truth

    def l1_weight(self, p: int) -> float:
        """Get 1/|𝒩^out_I(p)|."""
        return self._weights[p]

    def value_i(self, i: int, view: View) -> float:
        penalty = sum(self._weights[p] * float(np.sum(np.abs(view[p]))) for p in self.components_of(i))
        return self._ls.value_i(i, view) + self._regularization * penalty

    def agent_subgradient(self, i: int, view: View) -> Dict[int, np.ndarray]:
        quadratic = self._ls.agent_gradient(i, view)
        return {
            p: quadratic[p] + self._regularization * self._weights[p] * np.sign(np.asarray(view[p], dtype=float))
            for p in self.components_of(i)
        }

    def local_subgradient_norm_bound(self, i: int, view: View) -> float:
        quadratic = self._ls.agent_gradient(i, view)
        quad_norm = float(np.sqrt(sum(float(g @ g) for g in quadratic.values())))
        l1_norm = self._regularization * float(
            np.sqrt(sum(self.partition.size_of(p) * self._weights[p] ** 2 for p in self.components_of(i)))
        )
        return quad_norm + l1_norm

    def l1_weight_vector(self, i: int) -> np.ndarray:
        comps = self.components_of(i)
        return self._regularization * np.concatenate(
            [np.full(self.partition.size_of(p), self._weights[p]) for p in comps]
        )

    def _interfering_argmin(self, i, penalty, linear):
        Q, c = self._ls.local_normal_system(i, penalty, linear)
        u = minimize_quadratic_l1(Q, c, self.l1_weight_vector(i))
        offsets, start = {}, 0
        for p in self.components_of(i):
            offsets[p] = u[start:start + self.partition.size_of(p)]
            start += self.partition.size_of(p)
        return offsets
