"""
T_a(delta, t) against T_b(delta, t).

m+(T_a) = (1+x^2)^(2delta-5) (A1 m+(P_{t-3}) + A2 m+(P_{t-4})), T_b the same with B1, B2, and

    m+(T_a) - m+(T_b) = (1+x^2)^(2delta-5) (delta-2) x^6 (x^2-(delta-2)) m+(P_{t-3}).

Every integral here is built from that cancelled form: x^-2 phi(R(x)) with
R = (delta-2) x^6 (x^2-(delta-2)) / (D1 + D2 rho), where rho stands for m+(P_{t-4})/m+(P_{t-3})
or one of the bounds used in place of it, and phi is log1p (energy difference) or the identity
(the linear bounds of Table 1). Tails [a, inf) are integrated in u = 1/x.
"""

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Optional

import numpy as np
import pandas as pd
import structlog

from treeenergy.config import Config, QuadratureConfig
from treeenergy.energy import energy_coulson, energy_eigen
from treeenergy.loader import load_table1_fixture
from treeenergy.models import BoundCertificate, EnergyMethod, ProofConstantCheck, Verdict
from treeenergy.polynomials import (
    Polynomial,
    matching_polynomial,
    path_mplus,
    path_ratio_array,
    path_ratio_reciprocal,
    path_ratio_value,
)
from treeenergy.trees import FamilyParams, FamilyParamsError, build_degenerate_pair, build_Ta, build_Tb, family_order
from treeenergy.utils import QuadratureError, QuadratureResult, integrate, ordered_map

logger = structlog.get_logger(__name__)

TWO_OVER_PI = 2.0 / math.pi
LEADING_DEGREE = 4
TRAILING_DEGREE = 5
BOUNDARY_CELLS = frozenset((5, t) for t in (87, 89, 91, 93))
TABLE1_DELTAS = range(8, 68)


class IndecisiveVerdictError(RuntimeError):
    """Exception raised when the margin stays within the error budget after every escalation."""

    def __init__(self, verdict: Verdict):
        super().__init__(
            f"Indecisive verdict for delta={verdict.delta}, t={verdict.t}:"
            f" margin {verdict.margin:.12g} with error {verdict.margin_error:.3g}"
        )
        self.verdict = verdict
        self.delta = verdict.delta
        self.t = verdict.t
        self.margin = verdict.margin
        self.margin_error = verdict.margin_error


class CrossCheckError(RuntimeError):
    """Exception raised when the direct energy comparison contradicts the cancelled-form integral."""

    def __init__(self, delta: int, t: int, primary: float, secondary: float, method: str):
        super().__init__(
            f"Cross-check failed for delta={delta}, t={t}: cancelled-form margin {primary:.12g}"
            f" but {method} energies differ by {secondary:.12g}"
        )
        self.delta = delta
        self.t = t
        self.primary = primary
        self.secondary = secondary
        self.method = method


class UnsupportedInstanceError(ValueError):
    """Exception raised when no parity threshold instance exists for (delta, parity)."""

    def __init__(self, delta: int, parity: str):
        super().__init__(f"No parity threshold instance for delta={delta}, {parity} t")
        self.delta = delta
        self.parity = parity


class UnknownProofBoundError(ValueError):
    """Exception raised when a proof bound name is not in the registry."""

    def __init__(self, name: str, known: list[str]):
        super().__init__(f"Unknown proof bound {name!r}, expected one of {known}")
        self.name = name


class LogDomainError(ValueError):
    """Exception raised when log(1 + X) is requested for X <= -1."""

    def __init__(self, value: float):
        super().__init__(f"log(1 + X) undefined for X={value!r} (need X > -1)")
        self.value = value


@dataclass(frozen=True)
class CoefficientQuadruple:
    """A1, A2, B1, B2 as exact polynomials in y = x^2 for one delta."""

    delta: int
    A1: Polynomial
    A2: Polynomial
    B1: Polynomial
    B2: Polynomial

    @classmethod
    def for_delta(cls, delta: int) -> "CoefficientQuadruple":
        d = delta
        one_plus_y = Polynomial((1, 1))
        a1 = one_plus_y * Polynomial((1, d)) * Polynomial((1, d + 2, 2))
        a2 = Polynomial((0, 1)) * one_plus_y * Polynomial((1, 2 * d + 1, d * d + 2, 1))
        b1 = Polynomial((1, 2 * d + 3, d * d + 4 * d + 4, 2 * d * d + 6, d + 2))
        return cls(delta, a1, a2, b1, a2)

    def has_nonnegative_coefficients(self) -> bool:
        return all(p.has_nonnegative_coefficients() for p in (self.A1, self.A2, self.B1, self.B2))


def _path(t: int) -> Polynomial:
    return Polynomial.from_matching(path_mplus(t))


def _common_factor(delta: int) -> Polynomial:
    return Polynomial((1, 1)) ** (2 * delta - 5)


def family_identity_check(delta: int, t: int, quadruple: Optional[CoefficientQuadruple] = None) -> bool:
    """Both family recursions as exact polynomial identities."""
    params = FamilyParams(delta, t)
    quadruple = quadruple or CoefficientQuadruple.for_delta(delta)
    factor = _common_factor(delta)
    p3, p4 = _path(t - 3), _path(t - 4)

    ta = Polynomial.from_matching(matching_polynomial(build_Ta(params)))
    tb = Polynomial.from_matching(matching_polynomial(build_Tb(params)))
    ok = ta == factor * (quadruple.A1 * p3 + quadruple.A2 * p4) and tb == factor * (quadruple.B1 * p3 + quadruple.B2 * p4)
    logger.debug("Family identity", delta=delta, t=t, ok=ok)
    return ok


def difference_identity_check(delta: int, t: int) -> bool:
    """m+(T_a) - m+(T_b) against the factored difference; delta = 2 must give zero."""
    ta, tb = build_degenerate_pair(delta, t)
    lhs = Polynomial.from_matching(matching_polynomial(ta)) - Polynomial.from_matching(matching_polynomial(tb))
    if delta == 2:
        return lhs.is_zero
    k = delta - 2
    rhs = _common_factor(delta) * Polynomial.monomial(3, k) * Polynomial((-k, 1)) * _path(t - 3)
    return lhs == rhs


def b_tail_identity_check(delta: int) -> bool:
    quadruple = CoefficientQuadruple.for_delta(delta)
    return quadruple.A2 == quadruple.B2


class RatioKind(str, Enum):
    ONE = "one"
    INVERSE_SQUARE = "inverse_square"
    PARITY = "parity"
    SHIFTED = "shifted"
    PATH = "path"


@dataclass(frozen=True)
class RatioBound:
    """What stands in for rho = m+(P_{t-4})/m+(P_{t-3}) inside an integrand."""

    kind: RatioKind
    c: float = 0.0
    t: int = 0

    @classmethod
    def one(cls) -> "RatioBound":
        return cls(RatioKind.ONE)

    @classmethod
    def inverse_square(cls) -> "RatioBound":
        return cls(RatioKind.INVERSE_SQUARE)

    @classmethod
    def parity(cls, c: float) -> "RatioBound":
        """c / (1 + sqrt(1 + 4x^2)); c = 2 is the limit both parities approach."""
        return cls(RatioKind.PARITY, c=c)

    @classmethod
    def shifted(cls) -> "RatioBound":
        """2 / (sqrt(1 + 4x^2) - 1)."""
        return cls(RatioKind.SHIFTED)

    @classmethod
    def path(cls, t: int) -> "RatioBound":
        return cls(RatioKind.PATH, t=t)

    def at_x(self, x: float) -> float:
        if self.kind is RatioKind.ONE:
            return 1.0
        if self.kind is RatioKind.INVERSE_SQUARE:
            return 1.0 / (1.0 + x * x)
        if self.kind is RatioKind.PARITY:
            return self.c / (1.0 + math.sqrt(1.0 + 4.0 * x * x))
        if self.kind is RatioKind.SHIFTED:
            return (math.sqrt(1.0 + 4.0 * x * x) + 1.0) / (2.0 * x * x)
        return path_ratio_value(self.t, x) if self.t >= 4 else 0.0

    def at_u(self, u: float) -> float:
        """The same bound at x = 1/u."""
        if self.kind is RatioKind.ONE:
            return 1.0
        w = u * u
        if self.kind is RatioKind.INVERSE_SQUARE:
            return w / (w + 1.0)
        root = math.sqrt(w + 4.0)
        if self.kind is RatioKind.PARITY:
            return self.c * u / (u + root)
        if self.kind is RatioKind.SHIFTED:
            return (w + u * root) / 2.0
        return path_ratio_reciprocal(self.t, u) if self.t >= 4 else 0.0

    def label(self) -> str:
        if self.kind is RatioKind.PARITY:
            return f"parity({self.c:g})"
        if self.kind is RatioKind.PATH:
            return f"path({self.t})"
        return self.kind.value


class IntegralForm(str, Enum):
    LOG = "log"
    LINEAR = "linear"


@dataclass(frozen=True)
class BoundPiece:
    lower: float
    upper: float
    ratio: RatioBound


@dataclass(frozen=True)
class DifferenceIntegrand:
    """x^-2 phi(R(x)) for one delta and one choice of denominators (D1, D2)."""

    delta: int
    leading: Polynomial
    trailing: Polynomial
    form: IntegralForm

    @classmethod
    def for_tb(cls, delta: int, form: IntegralForm = IntegralForm.LOG) -> "DifferenceIntegrand":
        quadruple = CoefficientQuadruple.for_delta(delta)
        return cls(delta, quadruple.B1, quadruple.B2, form)

    @classmethod
    def for_ta(cls, delta: int, form: IntegralForm = IntegralForm.LOG) -> "DifferenceIntegrand":
        quadruple = CoefficientQuadruple.for_delta(delta)
        return cls(delta, quadruple.A1, quadruple.A2, form)

    def _apply(self, r: float) -> float:
        if self.form is IntegralForm.LINEAR:
            return r
        if r <= -1.0:
            raise LogDomainError(r)
        return math.log1p(r)

    def in_x(self, ratio: RatioBound) -> Callable[[float], float]:
        k = self.delta - 2

        def integrand(x: float) -> float:
            if x == 0.0:
                return 0.0
            y = x * x
            numerator = k * y**3 * (y - k)
            denominator = self.leading.evaluate(x) + self.trailing.evaluate(x) * ratio.at_x(x)
            return self._apply(numerator / denominator) / y

        return integrand

    def in_u(self, ratio: RatioBound) -> Callable[[float], float]:
        k = self.delta - 2

        def integrand(u: float) -> float:
            if u == 0.0:
                return 0.0
            w = u * u
            numerator = k * w * (1.0 - k * w)
            denominator = w * self.leading.evaluate_reversed(u, LEADING_DEGREE) + self.trailing.evaluate_reversed(
                u, TRAILING_DEGREE
            ) * ratio.at_u(u)
            return self._apply(numerator / denominator)

        return integrand

    def values(self, t: int, xs: np.ndarray) -> np.ndarray:
        """The exact-ratio integrand on a grid of positive x."""
        xs = np.asarray(xs, dtype=float)
        k = self.delta - 2
        y = xs * xs
        rho = path_ratio_array(t, xs) if t >= 4 else np.zeros_like(xs)
        r = k * y**3 * (y - k) / (self.leading.evaluate(xs) + self.trailing.evaluate(xs) * rho)
        if self.form is IntegralForm.LINEAR:
            return r / y
        return np.log1p(r) / y

    def integrate_piece(self, piece: BoundPiece, cfg: QuadratureConfig) -> QuadratureResult:
        parts = []
        if math.isinf(piece.upper):
            if piece.lower <= 0:
                parts.append(self.integrate_piece(BoundPiece(piece.lower, cfg.split_point, piece.ratio), cfg))
                parts.append(self.integrate_piece(BoundPiece(cfg.split_point, math.inf, piece.ratio), cfg))
            else:
                parts.append(
                    integrate(
                        self.in_u(piece.ratio), 0.0, 1.0 / piece.lower, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions
                    )
                )
        else:
            edges = [piece.lower, piece.upper]
            if piece.lower < cfg.split_point < piece.upper:
                edges.insert(1, cfg.split_point)
            integrand = self.in_x(piece.ratio)
            for lower, upper in zip(edges, edges[1:]):
                parts.append(integrate(integrand, lower, upper, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions))
        return _combine(parts)

    def integrate_pieces(self, pieces: Iterable[BoundPiece], cfg: QuadratureConfig) -> QuadratureResult:
        return _combine([self.integrate_piece(piece, cfg) for piece in pieces])


def _combine(parts: Sequence[QuadratureResult]) -> QuadratureResult:
    return QuadratureResult(
        value=math.fsum(p.value for p in parts),
        abs_error=sum(p.abs_error for p in parts),
        evaluations=sum(p.evaluations for p in parts),
        subintervals=sum(p.subintervals for p in parts),
    )


def difference_pieces(delta: int, t: int, split_point: float) -> list[BoundPiece]:
    """Pieces broken at the split point and at the numerator root sqrt(delta - 2)."""
    ratio = RatioBound.path(t)
    points = sorted({0.0, split_point, math.sqrt(delta - 2)})
    pieces = [BoundPiece(lower, upper, ratio) for lower, upper in zip(points, points[1:])]
    pieces.append(BoundPiece(points[-1], math.inf, ratio))
    return pieces


def _difference_verdict(delta: int, t: int, cfg: QuadratureConfig, decisive_factor: float) -> Verdict:
    integrand = DifferenceIntegrand.for_tb(delta)
    result = integrand.integrate_pieces(difference_pieces(delta, t, cfg.split_point), cfg)
    return Verdict.from_margin(
        delta, t, TWO_OVER_PI * result.value, TWO_OVER_PI * result.abs_error, decisive_factor
    )


def energy_difference(
    delta: int, t: int, cfg: Optional[QuadratureConfig] = None, config: Optional[Config] = None
) -> Verdict:
    """
    E(T_a) - E(T_b) from the cancelled-form integral.

    An indecisive margin tightens abs_tol by config.escalation_factor, at most
    config.max_escalations times, before IndecisiveVerdictError is raised.
    """
    FamilyParams(delta, t)
    config = config or Config()
    cfg = cfg or config.quadrature
    if (delta, t) in BOUNDARY_CELLS:
        cfg = replace(cfg, abs_tol=min(cfg.abs_tol, config.boundary_abs_tol))

    verdict = _difference_verdict(delta, t, cfg, config.decisive_factor)
    escalations = 0
    while not verdict.decisive and escalations < config.max_escalations:
        escalations += 1
        cfg = cfg.tightened(config.escalation_factor)
        logger.warning(
            "Escalating quadrature tolerance",
            delta=delta,
            t=t,
            margin=verdict.margin,
            margin_error=verdict.margin_error,
            abs_tol=cfg.abs_tol,
        )
        try:
            verdict = _difference_verdict(delta, t, cfg, config.decisive_factor)
        except QuadratureError as e:
            raise IndecisiveVerdictError(verdict) from e

    if not verdict.decisive:
        raise IndecisiveVerdictError(verdict)

    logger.info("Verdict computed", delta=delta, t=t, winner=verdict.winner.value, margin=verdict.margin)
    return verdict


def _check_direct(verdict: Verdict, method: EnergyMethod, difference: float, error: float) -> bool:
    """False when the direct difference sits inside the combined error; a confident opposite sign raises."""
    if abs(difference) <= error + verdict.margin_error:
        logger.warning(
            "Cross-check unresolved",
            delta=verdict.delta,
            t=verdict.t,
            method=method.value,
            difference=difference,
            error=error,
        )
        return False
    if (difference > 0) != (verdict.margin > 0):
        raise CrossCheckError(verdict.delta, verdict.t, verdict.margin, difference, method.value)
    return True


def maximal_tree(
    delta: int, t: int, cfg: Optional[QuadratureConfig] = None, config: Optional[Config] = None
) -> Verdict:
    """
    The energy_difference verdict, cross-checked against direct energies of both full trees.

    Methods whose direct difference cannot resolve the sign are listed in unresolved_checks.
    """
    config = config or Config()
    cfg = cfg or config.quadrature
    verdict = energy_difference(delta, t, cfg, config)

    # both direct methods share one limit: cross_check_max_order, never above eigen_cap
    if family_order(delta, t) > min(config.cross_check_max_order, config.eigen_cap):
        return verdict

    params = FamilyParams(delta, t)
    ta, tb = build_Ta(params), build_Tb(params)
    unresolved: list[str] = []

    eigen_a, eigen_b = energy_eigen(ta, config.eigen_cap), energy_eigen(tb, config.eigen_cap)
    if not _check_direct(
        verdict,
        EnergyMethod.EIGEN,
        eigen_a.value - eigen_b.value,
        eigen_a.abs_error_estimate + eigen_b.abs_error_estimate,
    ):
        unresolved.append(EnergyMethod.EIGEN.value)

    coulson_a = energy_coulson(matching_polynomial(ta), cfg)
    coulson_b = energy_coulson(matching_polynomial(tb), cfg)
    if not _check_direct(
        verdict,
        EnergyMethod.COULSON,
        coulson_a.value - coulson_b.value,
        coulson_a.abs_error_estimate + coulson_b.abs_error_estimate,
    ):
        unresolved.append(EnergyMethod.COULSON.value)

    return replace(verdict, unresolved_checks=tuple(unresolved)) if unresolved else verdict


@dataclass(frozen=True)
class _SweepTask:
    delta: int
    t: int
    cfg: QuadratureConfig
    config: Config
    cross_check: bool


def _sweep_cell(task: _SweepTask) -> Verdict:
    run = maximal_tree if task.cross_check else energy_difference
    try:
        return run(task.delta, task.t, task.cfg, task.config)
    except IndecisiveVerdictError as e:
        logger.warning("Indecisive verdict kept in sweep", delta=task.delta, t=task.t)
        return e.verdict


def sweep_verdicts(
    cells: Iterable[tuple[int, int]],
    cfg: Optional[QuadratureConfig] = None,
    config: Optional[Config] = None,
    workers: int = 1,
    cross_check: bool = True,
) -> list[Verdict]:
    """Verdicts for (delta, t) cells sorted by delta then t; indecisive cells come back with decisive=False."""
    config = config or Config()
    cfg = cfg or config.quadrature
    tasks = [_SweepTask(delta, t, cfg, config, cross_check) for delta, t in sorted(set(cells))]
    return ordered_map(_sweep_cell, tasks, workers)


def _tail_and_head(
    integrand: DifferenceIntegrand, tail_ratio: RatioBound, head_ratio: RatioBound, cfg: QuadratureConfig
) -> BoundCertificate:
    root = math.sqrt(integrand.delta - 2)
    tail = integrand.integrate_piece(BoundPiece(root, math.inf, tail_ratio), cfg)
    head = integrand.integrate_piece(BoundPiece(0.0, root, head_ratio), cfg)
    # the head integrand is nonpositive; the certificate stores its magnitude
    return BoundCertificate.from_parts(integrand.delta, tail.value, -head.value, tail.abs_error + head.abs_error)


def table1_entry(delta: int, cfg: Optional[QuadratureConfig] = None) -> BoundCertificate:
    """
    f(delta) = int_{sqrt(delta-2)}^inf (delta-2)x^4(x^2-(delta-2)) / (B1 + B2/(1+x^2)) dx
             - int_0^{sqrt(delta-2)} (delta-2)x^4(delta-2-x^2) / (B1 + B2) dx
    """
    if delta < 3:
        raise FamilyParamsError("delta", delta, 3)
    cfg = cfg or QuadratureConfig.from_env()
    integrand = DifferenceIntegrand.for_tb(delta, IntegralForm.LINEAR)
    certificate = _tail_and_head(integrand, RatioBound.inverse_square(), RatioBound.one(), cfg)
    logger.debug("Table 1 entry", delta=delta, f_value=certificate.integral_value)
    return certificate


def short_spine_bound(delta: int, cfg: Optional[QuadratureConfig] = None) -> BoundCertificate:
    """The t = 3 analogue of f(delta), where m+(P_{t-4}) = 0 leaves B1 alone in the denominator."""
    if delta < 3:
        raise FamilyParamsError("delta", delta, 3)
    cfg = cfg or QuadratureConfig.from_env()
    integrand = DifferenceIntegrand.for_tb(delta, IntegralForm.LINEAR)
    return _tail_and_head(integrand, RatioBound.path(3), RatioBound.path(3), cfg)


def table1(
    deltas: Iterable[int] = TABLE1_DELTAS,
    cfg: Optional[QuadratureConfig] = None,
    fixture: Optional[pd.DataFrame] = None,
) -> pd.DataFrame:
    """Computed f(delta) next to the published column; f_paper is NaN where the fixture has no row."""
    fixture = load_table1_fixture() if fixture is None else fixture
    rows = []
    for delta in deltas:
        certificate = table1_entry(delta, cfg)
        f_paper = float(fixture.loc[delta, "f_paper"]) if delta in fixture.index else math.nan
        rows.append(
            {
                "delta": delta,
                "f_value": certificate.integral_value,
                "tail_part": certificate.tail_part,
                "head_part": certificate.head_part,
                "f_paper": f_paper,
                "abs_diff": abs(certificate.integral_value - f_paper),
            }
        )
    return pd.DataFrame(rows, columns=["delta", "f_value", "tail_part", "head_part", "f_paper", "abs_diff"])


@dataclass(frozen=True)
class AnalyticBounds:
    delta: int
    upper_tail: float
    lower_head: float

    @property
    def difference(self) -> float:
        return self.upper_tail - self.lower_head


def analytic_bounds(delta: int) -> AnalyticBounds:
    """Closed-form upper bound of the tail and lower bound of the head, both with the 2/pi factor."""
    if delta < 3:
        raise FamilyParamsError("delta", delta, 3)
    d = float(delta)
    pi = math.pi
    upper_tail = TWO_OVER_PI * 2.0 * math.sqrt(d - 2.0) / (3.0 * (d + 3.0))
    lower_head = (
        TWO_OVER_PI
        * (-45.0 * pi * d - 34.0 * d * d + 74.0 * d + 30.0 * pi - 12.0 + 15.0 * pi * d * d + 4.0 / math.sqrt(d - 2.0))
        / (30.0 * (26.0 + 11.0 * d + 5.0 * d * d))
    )
    return AnalyticBounds(delta, upper_tail, lower_head)


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def of(cls, t: int) -> "Parity":
        return cls.EVEN if t % 2 == 0 else cls.ODD


@dataclass(frozen=True)
class ParityInstance:
    """
    rho against c/(1+s) on [lower, upper], s = sqrt(1+4x^2): even t needs rho <= bound, odd t rho >= bound.

    The bound holds once ((1+s)/(2x))^(2t-6) >= argument(x), checked at the right endpoint.
    """

    delta: int
    parity: Parity
    lower: float
    upper: float
    ratio: RatioBound
    printed_exponent: Optional[int] = None

    def argument(self, x: float) -> float:
        s = math.sqrt(1.0 + 4.0 * x * x)
        if self.ratio.kind is RatioKind.SHIFTED:
            return s - 1.0
        half = self.ratio.c / 2.0
        a = 1.0 - 2.0 / (s + 1.0)
        if self.parity is Parity.EVEN:
            return (1.0 + half * a) / (half - 1.0)
        return (1.0 + half * a) / (1.0 - half)

    def exponent_bound(self, x: float) -> float:
        """log base (1+s)/(2x) of argument(x); the threshold is 2t - 6 > this."""
        s = math.sqrt(1.0 + 4.0 * x * x)
        return math.log(self.argument(x)) / math.log((1.0 + s) / (2.0 * x))

    def holds(self, t: int, x: float) -> bool:
        rho = path_ratio_value(t, x)
        bound = self.ratio.at_x(x)
        return rho <= bound if self.parity is Parity.EVEN else rho >= bound


PARITY_INSTANCES: dict[tuple[int, Parity], ParityInstance] = {
    (4, Parity.EVEN): ParityInstance(4, Parity.EVEN, math.sqrt(2.0), 5.0, RatioBound.shifted(), 23),
    (5, Parity.EVEN): ParityInstance(5, Parity.EVEN, 0.0, math.sqrt(3.0), RatioBound.parity(2.1), 13),
    (5, Parity.ODD): ParityInstance(5, Parity.ODD, math.sqrt(3.0), 390.0, RatioBound.parity(1.99), 4671),
    (6, Parity.ODD): ParityInstance(6, Parity.ODD, 2.0, 22.0, RatioBound.parity(1.0)),
}


def parity_instance(delta: int, parity: Parity) -> ParityInstance:
    try:
        return PARITY_INSTANCES[(delta, Parity(parity))]
    except KeyError:
        raise UnsupportedInstanceError(delta, Parity(parity).value) from None


def parity_threshold(delta: int, parity: Parity) -> int:
    """Smallest t with 2t - 6 above the exponent bound at the interval's right endpoint."""
    instance = parity_instance(delta, parity)
    exponent = instance.exponent_bound(instance.upper)
    return math.floor((exponent + 6.0) / 2.0) + 1


def ratio_bound_holds(delta: int, t: int, points: int = 400) -> bool:
    """Whether rho(t, x) respects the bound of the (delta, parity of t) instance on a grid, right endpoint included."""
    instance = parity_instance(delta, Parity.of(t))
    xs = np.linspace(instance.lower, instance.upper, points)
    return all(instance.holds(t, float(x)) for x in xs if x > 0)


def log_inequality_check(value: float) -> bool:
    """X/(1+X) <= log(1+X) <= X, up to a few ulps of rounding."""
    if value <= -1.0:
        raise LogDomainError(value)
    log_value = math.log1p(value)
    slack = 4.0 * math.ulp(log_value)
    return value / (1.0 + value) <= log_value + slack and log_value <= value + slack


@dataclass(frozen=True)
class ProofBound:
    """A bounding integral from one case of the verdict proofs and the constant printed for it."""

    name: str
    delta: int
    form: IntegralForm
    uses_ta_denominator: bool
    pieces: tuple[BoundPiece, ...]
    claimed: float
    sign_only: bool = False

    def integrand(self) -> DifferenceIntegrand:
        if self.uses_ta_denominator:
            return DifferenceIntegrand.for_ta(self.delta, self.form)
        return DifferenceIntegrand.for_tb(self.delta, self.form)


def _pieces(*spec: tuple[float, float, RatioBound]) -> tuple[BoundPiece, ...]:
    return tuple(BoundPiece(lower, upper, ratio) for lower, upper, ratio in spec)


_INF = math.inf
_SQRT2, _SQRT3, _SQRT5 = math.sqrt(2.0), math.sqrt(3.0), math.sqrt(5.0)
_ONE, _INV = RatioBound.one(), RatioBound.inverse_square()

PROOF_BOUNDS: dict[str, ProofBound] = {
    bound.name: bound
    for bound in (
        ProofBound("delta3", 3, IntegralForm.LINEAR, True, _pieces((1.0, _INF, _ONE), (0.0, 1.0, _INV)), 0.00996),
        ProofBound(
            "delta4-odd",
            4,
            IntegralForm.LOG,
            False,
            _pieces((_SQRT2, _INF, RatioBound.parity(2.0)), (0.0, _SQRT2, _INV)),
            0.02088,
        ),
        ProofBound(
            "delta4-even",
            4,
            IntegralForm.LOG,
            False,
            _pieces((5.0, _INF, _ONE), (_SQRT2, 5.0, RatioBound.shifted()), (0.0, _SQRT2, RatioBound.parity(2.0))),
            0.003099,
            sign_only=True,
        ),
        ProofBound(
            "delta5-even",
            5,
            IntegralForm.LOG,
            False,
            _pieces((_SQRT3, _INF, RatioBound.parity(2.0)), (0.0, _SQRT3, RatioBound.parity(2.1))),
            -4.43e-4,
        ),
        ProofBound(
            "delta5-odd",
            5,
            IntegralForm.LOG,
            False,
            _pieces(
                (390.0, _INF, _INV), (_SQRT3, 390.0, RatioBound.parity(1.99)), (0.0, _SQRT3, RatioBound.parity(2.0))
            ),
            -6.66e-6,
        ),
        ProofBound(
            "delta6-even",
            6,
            IntegralForm.LOG,
            False,
            _pieces((2.0, _INF, RatioBound.parity(2.0)), (0.0, 2.0, _ONE)),
            -0.02027,
        ),
        ProofBound(
            "delta6-odd",
            6,
            IntegralForm.LOG,
            False,
            _pieces((22.0, _INF, _INV), (2.0, 22.0, RatioBound.parity(1.0)), (0.0, 2.0, RatioBound.parity(2.0))),
            -2.56e-4,
        ),
        ProofBound(
            "delta7-even",
            7,
            IntegralForm.LOG,
            False,
            _pieces((_SQRT5, _INF, RatioBound.parity(2.0)), (0.0, _SQRT5, _ONE)),
            -0.04445,
        ),
        ProofBound(
            "delta7-odd",
            7,
            IntegralForm.LOG,
            False,
            _pieces((_SQRT5, _INF, _INV), (0.0, _SQRT5, RatioBound.parity(2.0))),
            -0.01031,
        ),
    )
}


def proof_bound(name: str) -> ProofBound:
    try:
        return PROOF_BOUNDS[name]
    except KeyError:
        raise UnknownProofBoundError(name, sorted(PROOF_BOUNDS)) from None


def check_proof_bound(bound: ProofBound, cfg: Optional[QuadratureConfig] = None) -> ProofConstantCheck:
    """Evaluate the bounding integral (without the 2/pi factor, as printed) and compare it with the constant."""
    cfg = cfg or QuadratureConfig.from_env()
    result = bound.integrand().integrate_pieces(bound.pieces, cfg)
    check = ProofConstantCheck(bound.name, bound.delta, result.value, bound.claimed, result.abs_error, bound.sign_only)
    logger.debug("Proof constant", name=bound.name, integral=result.value, claimed=bound.claimed)
    return check


def proof_constant_checks(cfg: Optional[QuadratureConfig] = None) -> list[ProofConstantCheck]:
    return [check_proof_bound(bound, cfg) for bound in PROOF_BOUNDS.values()]
