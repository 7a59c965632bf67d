"""
Tree energy E(T) = sum |lambda_i| by two independent routes.

energy_coulson integrates (2/pi) * x^-2 * log m+(T, x) over [0, inf); energy_eigen sums the
absolute adjacency eigenvalues from the in-repo Householder/QL solver.
"""

import math
from typing import Optional

import numpy as np
import structlog

from treeenergy.config import QuadratureConfig
from treeenergy.models import EnergyMethod, EnergyResult
from treeenergy.polynomials import MatchingPolynomial, log_mplus, log_mplus_reversed, matching_polynomial
from treeenergy.trees import FamilyParamsError, Tree
from treeenergy.utils import EPS, integrate, symmetric_eigenvalues

logger = structlog.get_logger(__name__)

TWO_OVER_PI = 2.0 / math.pi
DEFAULT_EIGEN_CAP = 500


class EigenCapError(ValueError):
    """Exception raised when a tree is too large for the dense eigenvalue oracle."""

    def __init__(self, order: int, cap: int):
        super().__init__(f"Tree of order {order} exceeds the eigenvalue cap of {cap}")
        self.order = order
        self.cap = cap


def _series_head(p: MatchingPolynomial) -> tuple[float, float, float]:
    """Taylor coefficients of x^-2 log m+(x) in y = x^2, up to y^2."""
    m1, m2, m3 = (float(c) for c in (p.coeffs + (0, 0, 0, 0))[1:4])
    return m1, m2 - m1 * m1 / 2.0, m3 - m1 * m2 + m1**3 / 3.0


def energy_coulson(p: MatchingPolynomial, cfg: Optional[QuadratureConfig] = None) -> EnergyResult:
    """
    Coulson integral of m+(T, x).

    [0, split] is integrated in x, with a three-term series below cfg.series_cutoff. On
    [split, inf) the substitution u = 1/x gives log m+(T, 1/u) = -2d log u + log(sum_k m_k u^(2(d-k)));
    the log u part is integrated exactly, the smooth remainder by quadrature.
    """
    cfg = cfg or QuadratureConfig.from_env()
    d = p.degree
    if d <= 0:
        return EnergyResult(0.0, 0.0, EnergyMethod.COULSON, 0)

    c0, c1, c2 = _series_head(p)

    def head(x: float) -> float:
        if x < cfg.series_cutoff:
            y = x * x
            return c0 + y * (c1 + y * c2)
        return log_mplus(p, x) / (x * x)

    def tail(u: float) -> float:
        return log_mplus_reversed(p, u)

    split = cfg.split_point
    bound = 1.0 / split
    head_part = integrate(head, 0.0, split, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions)
    tail_part = integrate(tail, 0.0, bound, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions)
    singular = 2.0 * d * bound * (1.0 - math.log(bound))

    value = TWO_OVER_PI * math.fsum((head_part.value, tail_part.value, singular))
    abs_error = TWO_OVER_PI * (head_part.abs_error + tail_part.abs_error)
    evaluations = head_part.evaluations + tail_part.evaluations

    logger.debug("Coulson energy", order=p.order, value=value, abs_error=abs_error, evaluations=evaluations)
    return EnergyResult(value, abs_error, EnergyMethod.COULSON, evaluations)


def adjacency_matrix(tree: Tree) -> np.ndarray:
    matrix = np.zeros((tree.vertex_count, tree.vertex_count))
    for u, v in tree.edges:
        matrix[u, v] = matrix[v, u] = 1.0
    return matrix


def energy_eigen(tree: Tree, cap: int = DEFAULT_EIGEN_CAP) -> EnergyResult:
    n = tree.vertex_count
    if n > cap:
        raise EigenCapError(n, cap)
    if n == 1:
        return EnergyResult(0.0, 0.0, EnergyMethod.EIGEN, 0)

    matrix = adjacency_matrix(tree)
    eigenvalues = symmetric_eigenvalues(matrix)
    value = math.fsum(abs(float(v)) for v in eigenvalues)
    abs_error = 10.0 * n * EPS * float(np.linalg.norm(matrix))

    logger.debug("Eigen energy", order=n, value=value, abs_error=abs_error)
    return EnergyResult(value, abs_error, EnergyMethod.EIGEN, n)


def path_energy_closed(n: int) -> float:
    """sum_k |2 cos(k pi / (n + 1))|, summed in closed form."""
    if n < 1:
        raise FamilyParamsError("n", n, 1)
    angle = math.pi / (2 * (n + 1))
    if n % 2 == 0:
        return 2.0 / math.sin(angle) - 2.0
    return 2.0 / math.tan(angle) - 2.0


def energy_of_tree(
    tree: Tree,
    method: EnergyMethod,
    cfg: Optional[QuadratureConfig] = None,
    eigen_cap: int = DEFAULT_EIGEN_CAP,
) -> EnergyResult:
    if method is EnergyMethod.COULSON:
        return energy_coulson(matching_polynomial(tree), cfg)
    return energy_eigen(tree, eigen_cap)
