import math
import multiprocessing as mp
import warnings
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any, Callable, TypeVar

import numpy as np
import structlog
from scipy.integrate import IntegrationWarning, quad

logger = structlog.get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")

EPS = float(np.finfo(float).eps)
QL_MAX_ITERATIONS = 30


class QuadratureError(RuntimeError):
    """Exception raised when adaptive quadrature exhausts its subdivision limit."""

    def __init__(self, lower: float, upper: float, limit: int, abs_error: float, message: str = ""):
        super().__init__(
            f"Quadrature on [{lower:.12g}, {upper:.12g}] hit the subdivision limit {limit}"
            f" (estimated error {abs_error:.3g}){': ' + message if message else ''}"
        )
        self.lower = lower
        self.upper = upper
        self.limit = limit
        self.abs_error = abs_error


class EigenConvergenceError(RuntimeError):
    """Exception raised when the QL iteration does not converge for an eigenvalue."""

    def __init__(self, index: int, iterations: int):
        super().__init__(f"QL iteration did not converge for eigenvalue {index} after {iterations} iterations")
        self.index = index
        self.iterations = iterations


class MatrixShapeError(ValueError):
    """Exception raised for a matrix or band whose shape the eigenvalue solver cannot accept."""

    def __init__(self, reason: str):
        super().__init__(f"Invalid matrix shape: {reason}")
        self.reason = reason


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error: float
    evaluations: int
    subintervals: int


def integrate(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    abs_tol: float,
    rel_tol: float,
    limit: int,
) -> QuadratureResult:
    """
    Adaptive Gauss-Kronrod quadrature of func over the finite interval [lower, upper].

    Raises QuadratureError when the subdivision limit is exhausted; other integrator
    complaints (roundoff, slow convergence) are logged and the estimate is kept.
    """
    if upper <= lower:
        return QuadratureResult(0.0, 0.0, 0, 0)

    with warnings.catch_warnings(record=True) as messages:
        warnings.simplefilter("always", category=IntegrationWarning)
        output = quad(func, lower, upper, epsabs=abs_tol, epsrel=rel_tol, limit=limit, full_output=1)

    value, abs_error, info = output[0], output[1], output[2]
    message = output[3] if len(output) > 3 else ""
    for warning in messages:
        logger.warning("Integration warning", message=str(warning.message), lower=lower, upper=upper)

    subintervals = int(info.get("last", 0))
    if subintervals >= limit:
        raise QuadratureError(lower, upper, limit, abs_error, str(message).strip())
    if message:
        logger.warning("Quadrature accepted with warning", lower=lower, upper=upper, message=str(message).strip())

    return QuadratureResult(float(value), float(abs_error), int(info.get("neval", 0)), subintervals)


def tridiagonalize(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Householder reduction of a real symmetric matrix to tridiagonal form.

    Returns (diagonal, off_diagonal) with len(off_diagonal) == n - 1.
    """
    b = np.array(matrix, dtype=float)
    n = b.shape[0]
    if b.shape != (n, n):
        raise MatrixShapeError(f"expected a square matrix, got shape {b.shape}")
    off = np.zeros(max(n - 1, 0))

    for k in range(n - 2):
        x = b[k + 1 :, k]
        norm = float(np.linalg.norm(x))
        if norm == 0.0:
            continue
        alpha = -math.copysign(norm, x[0])
        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)

        trailing = b[k + 1 :, k + 1 :]
        p = trailing @ v
        q = p - (v @ p) * v
        trailing -= 2.0 * (np.outer(v, q) + np.outer(q, v))

        b[k + 1 :, k] = 0.0
        b[k, k + 1 :] = 0.0
        b[k + 1, k] = b[k, k + 1] = alpha
        off[k] = alpha

    if n >= 2:
        off[n - 2] = b[n - 1, n - 2]
    return np.diag(b).copy(), off


def tridiagonal_eigenvalues(
    diagonal: Iterable[float], off_diagonal: Iterable[float], max_iterations: int = QL_MAX_ITERATIONS
) -> np.ndarray:
    """QL with implicit Wilkinson shifts on a symmetric tridiagonal matrix; eigenvalues unsorted."""
    d = [float(v) for v in diagonal]
    n = len(d)
    e = [float(v) for v in off_diagonal] + [0.0]
    if len(e) != n and n > 0:
        raise MatrixShapeError(f"off-diagonal must have {n - 1} entries, got {len(e) - 1}")
    anorm = max((abs(v) for v in d), default=0.0) + max((abs(v) for v in e), default=0.0)

    for low in range(n):
        iterations = 0
        while True:
            m = low
            while m < n - 1:
                if abs(e[m]) <= EPS * (abs(d[m]) + abs(d[m + 1]) + anorm):
                    break
                m += 1
            if m == low:
                break
            iterations += 1
            if iterations > max_iterations:
                raise EigenConvergenceError(low, max_iterations)

            g = (d[low + 1] - d[low]) / (2.0 * e[low])
            r = math.hypot(g, 1.0)
            g = d[m] - d[low] + e[low] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, low - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if underflow:
                continue
            d[low] -= p
            e[low] = g
            e[m] = 0.0

    return np.array(d)


def symmetric_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    diagonal, off_diagonal = tridiagonalize(matrix)
    return tridiagonal_eigenvalues(diagonal, off_diagonal)


def log_grid(low: float, high: float, points: int) -> np.ndarray:
    return np.geomspace(low, high, points)


def format_float(value: float) -> str:
    return f"{value:.12g}"


def round_floats(payload: Any) -> Any:
    """Floats in nested dicts/lists cut to format_float precision; NaN becomes None."""
    if isinstance(payload, float):
        return None if math.isnan(payload) else float(format_float(payload))
    if isinstance(payload, dict):
        return {key: round_floats(value) for key, value in payload.items()}
    if isinstance(payload, (list, tuple)):
        return [round_floats(value) for value in payload]
    return payload


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """Map func over items, in a process pool when workers > 1; results keep input order."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with mp.Pool(min(workers, len(items))) as pool:
        return pool.map(func, items)
