import os
from dataclasses import dataclass, field, replace
from typing import Any

ENERGY_TOL_ENV = "ENERGY_TOL"


class InvalidConfigError(ValueError):
    """Exception raised when a configuration value is out of range."""

    def __init__(self, name: str, value: Any):
        super().__init__(f"Invalid configuration value for {name}: {value!r}")
        self.name = name
        self.value = value


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-14
    max_subdivisions: int = 200
    split_point: float = 1.0
    # below this x the Coulson head uses the three-term series
    series_cutoff: float = 1e-4

    def __post_init__(self) -> None:
        if not self.abs_tol > 0:
            raise InvalidConfigError("abs_tol", self.abs_tol)
        if self.rel_tol < 0:
            raise InvalidConfigError("rel_tol", self.rel_tol)
        if self.max_subdivisions < 1:
            raise InvalidConfigError("max_subdivisions", self.max_subdivisions)
        if not self.split_point > 0:
            raise InvalidConfigError("split_point", self.split_point)
        if not 0 < self.series_cutoff < self.split_point:
            raise InvalidConfigError("series_cutoff", self.series_cutoff)

    @classmethod
    def from_env(cls, **overrides: Any) -> "QuadratureConfig":
        """Build a config honouring ENERGY_TOL for the absolute tolerance."""
        raw = os.getenv(ENERGY_TOL_ENV, "").strip()
        if raw and "abs_tol" not in overrides:
            try:
                overrides["abs_tol"] = float(raw)
            except ValueError as e:
                raise InvalidConfigError(ENERGY_TOL_ENV, raw) from e
        return cls(**overrides)

    def tightened(self, factor: float) -> "QuadratureConfig":
        return replace(self, abs_tol=self.abs_tol / factor)


@dataclass(frozen=True)
class Config:
    eigen_cap: int = 500
    enumeration_cap: int = 14
    enumeration_hard_cap: int = 16
    prufer_max_order: int = 8

    decisive_factor: float = 10.0
    escalation_factor: float = 1e3
    max_escalations: int = 3
    boundary_abs_tol: float = 1e-15

    table1_tolerance: float = 5e-5
    proof_constant_tolerance: float = 0.1

    grid_points: int = 400
    grid_low: float = 1e-3
    grid_high: float = 1e3

    tie_tolerance: float = 1e-6
    tied_energy_tolerance: float = 1e-9
    cross_check_max_order: int = 200

    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig.from_env)

    def __post_init__(self) -> None:
        if not 1 <= self.enumeration_cap <= self.enumeration_hard_cap:
            raise InvalidConfigError("enumeration_cap", self.enumeration_cap)
        if self.eigen_cap < 1:
            raise InvalidConfigError("eigen_cap", self.eigen_cap)
        if self.decisive_factor <= 0:
            raise InvalidConfigError("decisive_factor", self.decisive_factor)
