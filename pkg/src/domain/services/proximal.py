"""
Proximal-gradient solver for quadratic plus weighted l1 objectives.
"""

import logging

import numpy as np

from src.shared.exceptions import InnerSolverError

logger = logging.getLogger(__name__)


def soft_threshold(u: np.ndarray, threshold: np.ndarray) -> np.ndarray:
    return np.sign(u) * np.maximum(np.abs(u) - threshold, 0.0)


def minimize_quadratic_l1(
    quadratic: np.ndarray,
    linear: np.ndarray,
    l1_weights: np.ndarray,
    tol: float = 1e-10,
    max_iterations: int = 200000,
    start: np.ndarray = None,
) -> np.ndarray:
    """Minimize ½ uᵀQu − cᵀu + Σ_k w_k |u_k| with Q positive semidefinite.

    Accelerated proximal gradient with adaptive restart; stops when the
    iterate moves less than tol (relative to max(1, ‖u‖)).
    """
    Q = np.asarray(quadratic, dtype=float)
    c = np.asarray(linear, dtype=float).reshape(-1)
    w = np.broadcast_to(np.asarray(l1_weights, dtype=float), c.shape)

    lipschitz = float(np.max(np.linalg.eigvalsh((Q + Q.T) / 2.0))) if c.size else 0.0
    if lipschitz <= 0.0:
        if np.any(np.abs(c) > w):
            raise InnerSolverError("Objective is unbounded below")
        return np.zeros_like(c)
    step = 1.0 / lipschitz

    u = np.zeros_like(c) if start is None else np.array(start, dtype=float).reshape(-1)
    momentum_point, t = u.copy(), 1.0
    for _ in range(max_iterations):
        gradient = Q @ momentum_point - c
        u_next = soft_threshold(momentum_point - step * gradient, step * w)
        change = float(np.linalg.norm(u_next - u))
        if change <= tol * max(1.0, float(np.linalg.norm(u_next))):
            return u_next

        t_next = (1.0 + np.sqrt(1.0 + 4.0 * t * t)) / 2.0
        if float((momentum_point - u_next) @ (u_next - u)) > 0.0:
            # restart
            t_next, momentum_point = 1.0, u_next.copy()
        else:
            momentum_point = u_next + ((t - 1.0) / t_next) * (u_next - u)
        u, t = u_next, t_next

    raise InnerSolverError("Proximal gradient did not reach tolerance", residual=change)
