"""
Exact big-integer matching polynomials of trees and the signless companion m+(G, x).

Polynomials are stored as coefficient tuples in y = x^2: index k holds m(G, k), the number
of k-matchings. Float evaluation happens only at the edges of this module (eval_mplus,
log_mplus, the path closed form and the path ratio).
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Union

import numpy as np
import structlog

from treeenergy.trees import CanonicalCode, Tree

logger = structlog.get_logger(__name__)

Coeffs = tuple[int, ...]
Real = Union[int, float, Fraction]

LN2 = math.log(2.0)
ROOTED_CACHE_SIZE = 1 << 16
PATH_CACHE_SIZE = 4096


class PolynomialDomainError(ValueError):
    """Exception raised when an argument is outside the domain of a polynomial operation."""

    def __init__(self, name: str, value: Any, minimum: Any):
        super().__init__(f"Argument {name}={value!r} is below the minimum {minimum!r}")
        self.name = name
        self.value = value
        self.minimum = minimum


class PolynomialInvariantError(ValueError):
    """Exception raised when polynomial data violates a structural invariant."""

    def __init__(self, reason: str):
        super().__init__(f"Polynomial invariant violated: {reason}")
        self.reason = reason


def _trim(coeffs: Coeffs) -> Coeffs:
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return coeffs[:end]


def _pad(coeffs: Coeffs, length: int) -> Coeffs:
    return tuple(coeffs) + (0,) * (length - len(coeffs))


def _add(a: Coeffs, b: Coeffs) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))


def _sub(a: Coeffs, b: Coeffs) -> Coeffs:
    size = max(len(a), len(b))
    return tuple((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(size))


def _mul(a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _shift(a: Coeffs) -> Coeffs:
    return (0, *a)


def _log_sum(log_terms: list[float], unit_constant: bool) -> float:
    """log(sum(exp(v))) with log1p accuracy when the constant term is 1 and dominates."""
    top = max(log_terms)
    if unit_constant and top <= 0.0:
        return math.log1p(math.fsum(math.exp(v) for v in log_terms[1:]))
    return top + math.log(math.fsum(math.exp(v - top) for v in log_terms))


@dataclass(frozen=True)
class MatchingPolynomial:
    """m+(G, x) = sum_k coeffs[k] x^(2k) for a graph of `order` vertices; order -1 is the zero polynomial."""

    coeffs: Coeffs
    order: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if self.order < -1:
            raise PolynomialDomainError("order", self.order, -1)
        if len(self.coeffs) != self.order // 2 + 1:
            expected = self.order // 2 + 1
            raise PolynomialInvariantError(f"order {self.order} needs {expected} coefficients, got {len(self.coeffs)}")
        if any(c < 0 for c in self.coeffs):
            raise PolynomialInvariantError("matching counts must be nonnegative")

    @classmethod
    def zero(cls) -> "MatchingPolynomial":
        return cls((), -1)

    @classmethod
    def from_coeffs(cls, coeffs: Coeffs, order: int) -> "MatchingPolynomial":
        return cls(_pad(_trim(tuple(coeffs)), order // 2 + 1), order)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def degree(self) -> int:
        """Largest k with m(G, k) > 0, or -1 for the zero polynomial."""
        return len(_trim(self.coeffs)) - 1

    @cached_property
    def log_coeffs(self) -> tuple[float, ...]:
        return tuple(math.log(c) if c > 0 else -math.inf for c in _trim(self.coeffs))

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "MatchingPolynomial":
        return cls(tuple(int(c) for c in data["coeffs"]), int(data["n"]))

    def __add__(self, other: "MatchingPolynomial") -> "MatchingPolynomial":
        return add(self, other)

    def __mul__(self, other: "MatchingPolynomial") -> "MatchingPolynomial":
        return mul(self, other)


def add(p: MatchingPolynomial, q: MatchingPolynomial) -> MatchingPolynomial:
    order = max(p.order, q.order)
    return MatchingPolynomial.from_coeffs(_add(p.coeffs, q.coeffs), order)


def mul(p: MatchingPolynomial, q: MatchingPolynomial) -> MatchingPolynomial:
    """m+ of the disjoint union of the two underlying graphs."""
    if p.order < 0 or q.order < 0:
        return MatchingPolynomial.zero()
    return MatchingPolynomial.from_coeffs(_mul(p.coeffs, q.coeffs), p.order + q.order)


def scale(p: MatchingPolynomial, factor: int) -> MatchingPolynomial:
    if factor < 0:
        raise PolynomialDomainError("factor", factor, 0)
    return MatchingPolynomial(tuple(factor * c for c in p.coeffs), p.order)


def shift_x2(p: MatchingPolynomial) -> MatchingPolynomial:
    """Multiply by x^2; the order grows by the two endpoints of the deleted edge."""
    return MatchingPolynomial.from_coeffs(_shift(p.coeffs), p.order + 2)


@dataclass(frozen=True)
class Polynomial:
    """Signed integer polynomial in y = x^2, trailing zeros trimmed."""

    coeffs: Coeffs = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(tuple(int(c) for c in self.coeffs)))

    @classmethod
    def from_matching(cls, p: MatchingPolynomial) -> "Polynomial":
        return cls(p.coeffs)

    @classmethod
    def monomial(cls, power: int, coefficient: int = 1) -> "Polynomial":
        return cls((0,) * power + (coefficient,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def has_nonnegative_coefficients(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(_add(self.coeffs, other.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(_sub(self.coeffs, other.coeffs))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other: Union["Polynomial", int]) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial(tuple(other * c for c in self.coeffs))
        return Polynomial(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise PolynomialDomainError("exponent", exponent, 0)
        result = Polynomial((1,))
        for _ in range(exponent):
            result = result * self
        return result

    def evaluate(self, x: Any) -> Any:
        """Float value at x (scalar or numpy array), Horner in x^2."""
        y = x * x
        value: Any = 0.0
        for c in reversed(self.coeffs):
            value = value * y + float(c)
        return value

    def evaluate_reversed(self, u: Any, degree: int) -> Any:
        """u^(2*degree) * p(1/u), the value used after the substitution x = 1/u."""
        if degree < self.degree:
            raise PolynomialDomainError("degree", degree, self.degree)
        w = u * u
        value: Any = 0.0
        for c in _pad(self.coeffs, degree + 1):
            value = value * w + float(c)
        return value


@dataclass(frozen=True)
class ScaledValue:
    """A positive real stored as mantissa * 2**exponent so that huge m+ values never overflow."""

    mantissa: float
    exponent: int

    @classmethod
    def from_ratio(cls, numerator: int, denominator: int) -> "ScaledValue":
        if numerator == 0:
            return cls(0.0, 0)
        shift = numerator.bit_length() - denominator.bit_length()
        if shift >= 0:
            ratio = numerator / (denominator << shift)
        else:
            ratio = (numerator << -shift) / denominator
        mantissa, exponent = math.frexp(ratio)
        return cls(mantissa, exponent + shift)

    def log(self) -> float:
        if self.mantissa == 0.0:
            return -math.inf
        return math.log(self.mantissa) + self.exponent * LN2

    def to_float(self) -> float:
        return math.ldexp(self.mantissa, self.exponent)


@dataclass(frozen=True)
class PathRatio:
    """rho = m+(P_{t-4}, x) / m+(P_{t-3}, x)."""

    t: int
    x: float
    rho: float

    def __post_init__(self) -> None:
        if not 1.0 / (1.0 + self.x * self.x) <= self.rho <= 1.0:
            raise PolynomialInvariantError(f"path ratio {self.rho} outside [1/(1+x^2), 1] at x={self.x}")


def _check_x(x: Real, strict: bool = False) -> None:
    if x < 0 or (strict and x == 0):
        raise PolynomialDomainError("x", x, 0)


def eval_mplus(p: MatchingPolynomial, x: Real) -> ScaledValue:
    """Exact value of m+(p, x) at the rational x (a float is taken at face value), then scaled."""
    _check_x(x)
    if p.is_zero:
        return ScaledValue(0.0, 0)
    exact = Fraction(x)
    a, b = exact.numerator**2, exact.denominator**2
    coeffs = _trim(p.coeffs)
    acc = coeffs[-1]
    denominator = 1
    for c in reversed(coeffs[:-1]):
        denominator *= b
        acc = acc * a + c * denominator
    return ScaledValue.from_ratio(acc, denominator)


def log_mplus(p: MatchingPolynomial, x: float) -> float:
    """Float log m+(p, x) via log-sum-exp over the coefficient logs; never overflows."""
    _check_x(x)
    logs = p.log_coeffs
    if not logs:
        return -math.inf
    if x == 0:
        return logs[0]
    two_log_x = 2.0 * math.log(x)
    terms = [lc + k * two_log_x for k, lc in enumerate(logs) if lc > -math.inf]
    return _log_sum(terms, unit_constant=logs[0] == 0.0)


def log_mplus_reversed(p: MatchingPolynomial, u: float) -> float:
    """log(sum_k m(G,k) u^(2(d-k))) with d = p.degree, i.e. log m+(p, 1/u) + 2d log u."""
    logs = p.log_coeffs
    if u == 0:
        return logs[-1]
    two_log_u = 2.0 * math.log(u)
    d = len(logs) - 1
    terms = [lc + (d - k) * two_log_u for k, lc in enumerate(logs) if lc > -math.inf]
    return _log_sum(terms, unit_constant=False)


@lru_cache(maxsize=ROOTED_CACHE_SIZE)
def _rooted_mplus(code: CanonicalCode) -> tuple[Coeffs, Coeffs]:
    """(m+ of the rooted tree, m+ of the forest left after deleting its root)."""
    children = [_rooted_mplus(child) for child in code]

    prefix: list[Coeffs] = [(1,)]
    for full, _ in children:
        prefix.append(_mul(prefix[-1], full))
    suffix: list[Coeffs] = [(1,)]
    for full, _ in reversed(children):
        suffix.append(_mul(suffix[-1], full))
    suffix.reverse()

    without_root = prefix[-1]
    # root matched to child i: that child's root goes too, the other children stay whole
    matched: Coeffs = ()
    for i, (_, child_without_root) in enumerate(children):
        matched = _add(matched, _mul(_mul(prefix[i], suffix[i + 1]), child_without_root))
    return _add(without_root, _shift(matched)), without_root


def matching_polynomial(tree: Tree) -> MatchingPolynomial:
    """
    m+(T) by deleting the canonical root: m+(T) = m+(T-v) + x^2 sum_i m+(T-v-v_i).

    Components left by a deletion multiply; every rooted subtree is memoized on its canonical code.
    """
    full, _ = _rooted_mplus(tree.canonical_form)
    return MatchingPolynomial.from_coeffs(full, tree.vertex_count)


Forest = dict[int, frozenset[int]]


def _delete(forest: Forest, removed: set[int]) -> Forest:
    return {v: nbrs - removed for v, nbrs in forest.items() if v not in removed}


def _forest_mplus(forest: Forest) -> Coeffs:
    leaf = next((v for v in sorted(forest) if len(forest[v]) == 1), None)
    if leaf is None:
        return (1,)
    (partner,) = forest[leaf]
    without_edge = _forest_mplus(_delete(forest, {leaf}))
    without_ends = _forest_mplus(_delete(forest, {leaf, partner}))
    return _add(without_edge, _shift(without_ends))


def matching_polynomial_by_edges(tree: Tree) -> MatchingPolynomial:
    """m+(T) by leaf-edge deletion, m+(G) = m+(G-e) + x^2 m+(G-u-v); no memo, small trees only."""
    forest = {v: frozenset(nbrs) for v, nbrs in enumerate(tree.adjacency)}
    return MatchingPolynomial.from_coeffs(_forest_mplus(forest), tree.vertex_count)


def count_matchings(tree: Tree) -> MatchingPolynomial:
    """Brute force over edge subsets."""
    counts = []
    for k in range(tree.vertex_count // 2 + 1):
        counts.append(
            sum(
                1
                for subset in itertools.combinations(tree.edges, k)
                if len({v for edge in subset for v in edge}) == 2 * k
            )
        )
    return MatchingPolynomial(tuple(counts), tree.vertex_count)


@lru_cache(maxsize=PATH_CACHE_SIZE)
def path_mplus(t: int) -> MatchingPolynomial:
    """m+(P_t) from m+(P_t) = m+(P_{t-1}) + x^2 m+(P_{t-2}), m+(P_{-1}) = 0, m+(P_0) = 1."""
    if t < -1:
        raise PolynomialDomainError("t", t, -1)
    if t == -1:
        return MatchingPolynomial.zero()
    if t == 0:
        return MatchingPolynomial((1,), 0)
    return add(path_mplus(t - 1), shift_x2(path_mplus(t - 2)))


def path_roots(x: float) -> tuple[float, float]:
    """(lambda1, lambda2), the roots of lambda^2 - lambda - x^2 = 0, lambda2 formed without cancellation."""
    s = math.sqrt(1.0 + 4.0 * x * x)
    lambda1 = (1.0 + s) / 2.0
    return lambda1, -x * x / lambda1


def closed_form_path(t: int, x: float) -> float:
    """m+(P_t, x) = (lambda1^(t+1) - lambda2^(t+1)) / sqrt(1 + 4x^2)."""
    if t < -1:
        raise PolynomialDomainError("t", t, -1)
    _check_x(x, strict=True)
    s = math.sqrt(1.0 + 4.0 * x * x)
    lambda1 = (1.0 + s) / 2.0
    k = t + 1
    # |lambda2 / lambda1| = (s - 1) / (s + 1)
    log_ratio = math.log1p(-2.0 / (s + 1.0))
    if k % 2:
        factor = 1.0 + math.exp(k * log_ratio)
    else:
        factor = -math.expm1(k * log_ratio)
    return lambda1**k * factor / s


def _check_ratio_args(t: int, x: Any) -> None:
    if t < 4:
        raise PolynomialDomainError("t", t, 4)
    if np.any(np.asarray(x) <= 0):
        raise PolynomialDomainError("x", x, 0)


def path_ratio_value(t: int, x: float) -> float:
    """rho by the forward iteration r_k = 1 / (1 + x^2 r_{k-1}), r_0 = 0, rho = r_{t-3}."""
    _check_ratio_args(t, x)
    x2 = x * x
    r = 0.0
    for _ in range(t - 3):
        r = 1.0 / (1.0 + x2 * r)
    return r


def path_ratio(t: int, x: float) -> PathRatio:
    return PathRatio(t, x, path_ratio_value(t, x))


def path_ratio_array(t: int, xs: Any) -> np.ndarray:
    _check_ratio_args(t, xs)
    x2 = np.square(np.asarray(xs, dtype=float))
    r = np.zeros_like(x2)
    for _ in range(t - 3):
        r = 1.0 / (1.0 + x2 * r)
    return r


def path_ratio_reciprocal(t: int, u: float) -> float:
    """rho at x = 1/u, iterated as r_k = u^2 / (u^2 + r_{k-1}) so large x never squares."""
    _check_ratio_args(t, u)
    u2 = u * u
    r = 0.0
    for _ in range(t - 3):
        r = u2 / (u2 + r)
    return r


def exact_path_ratio(t: int, x: Real) -> Fraction:
    _check_ratio_args(t, x)
    y = Fraction(x) ** 2
    r = Fraction(0)
    for _ in range(t - 3):
        r = 1 / (1 + y * r)
    return r


def _parity_bounds_hold(p: int, q: int, a: int, b: int, even: bool) -> bool:
    # rho = p/q, x^2 = a/b; rho versus 2/(1+s) is compared through rho^2 (1+4x^2) against (2-rho)^2
    if not p * (a + b) >= q * b:
        return False
    lhs = p * p * (b + 4 * a)
    rhs = b * (2 * q - p) ** 2
    if even:
        return p <= q and lhs > rhs
    return lhs < rhs


def parity_bound_failures(x: Real, t_max: int) -> list[int]:
    """
    Every t in [4, t_max] at which the strict parity bounds fail at this x, decided exactly.

    Works on N_k = m+(P_k, x) * b^k with x^2 = a/b, so N_k = b N_{k-1} + a b N_{k-2} stays integral.
    """
    _check_x(x, strict=True)
    y = Fraction(x) ** 2
    a, b = y.numerator, y.denominator
    failures = []
    lower, upper = 0, 1
    for t in range(4, t_max + 1):
        current = b * upper + a * b * lower
        if not _parity_bounds_hold(b * upper, current, a, b, even=t % 2 == 0):
            failures.append(t)
        lower, upper = upper, current
    return failures


def lemma_bounds_hold(t: int, x: Real) -> bool:
    _check_ratio_args(t, x)
    return t not in parity_bound_failures(x, t)
