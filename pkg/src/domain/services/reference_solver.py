"""
Centralized reference solutions used as oracles for merit functions.
"""

import logging
from typing import Tuple, Union

import numpy as np

from src.domain.entities.constraint_coupled import ConstraintCoupledInstance, DualProblem
from src.domain.entities.least_squares import LassoInstance, LeastSquaresInstance
from src.domain.entities.separable_cost import SeparableCost
from src.domain.services.proximal import minimize_quadratic_l1
from src.shared.exceptions import UnsupportedProblemError

logger = logging.getLogger(__name__)

BOX_TOLERANCE = 1e-9


def centralized_reference(
    problem: Union[SeparableCost, ConstraintCoupledInstance],
) -> Tuple[np.ndarray, float]:
    """Return (y⋆, f⋆) for least squares, LASSO or the dual of a constraint-coupled problem."""
    if isinstance(problem, ConstraintCoupledInstance):
        problem = DualProblem(problem)

    if isinstance(problem, LeastSquaresInstance):
        A, b = problem.design_matrix(), problem.stacked_measurements()
        y_star = np.linalg.lstsq(A, b, rcond=None)[0]
    elif isinstance(problem, LassoInstance):
        A = problem.least_squares.design_matrix()
        b = problem.least_squares.stacked_measurements()
        weights = np.full(problem.partition.total_size, problem.regularization)
        y_star = minimize_quadratic_l1(2.0 * A.T @ A, 2.0 * A.T @ b, weights, tol=1e-12, max_iterations=1000000)
    elif isinstance(problem, DualProblem):
        y_star = _dual_kkt_solution(problem.primal)
    else:
        raise UnsupportedProblemError(f"No centralized reference for {type(problem).__name__}")

    f_star = problem.value(y_star)
    logger.debug("Reference solution computed: f* = %.12g", f_star)
    return y_star, f_star


def _dual_kkt_solution(primal: ConstraintCoupledInstance) -> np.ndarray:
    """Multipliers of Σ_i (A_{p,i}x_i − a_{p,i}) = 0 from the KKT system, box assumed inactive."""
    partition = primal.partition
    sizes = [primal.local_dimension(i) for i in primal.agents]
    starts = np.cumsum([0] + sizes)
    n_x, n_y = int(starts[-1]), partition.total_size

    Q = np.zeros((n_x, n_x))
    c = np.zeros(n_x)
    M = np.zeros((n_y, n_x))
    m = np.zeros(n_y)
    for i in primal.agents:
        block = slice(starts[i], starts[i + 1])
        Q[block, block] = primal.quadratic(i)
        c[block] = primal.linear(i)
        for p in primal.components_of(i):
            M[partition.slice_of(p), block] = primal.coupling(p, i)
            m[partition.slice_of(p)] += primal.offset(p, i)

    kkt = np.block([[Q, M.T], [M, np.zeros((n_y, n_y))]])
    rhs = np.concatenate([-c, m])
    solution = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
    x, multipliers = solution[:n_x], solution[n_x:]

    for i in primal.agents:
        lo, hi = primal.box(i)
        xi = x[starts[i]:starts[i + 1]]
        if np.any(xi < lo - BOX_TOLERANCE) or np.any(xi > hi + BOX_TOLERANCE):
            raise UnsupportedProblemError(
                "Reference solve assumes the box constraints are inactive at the optimum",
                details=f"agent {i}",
            )
    return multipliers
