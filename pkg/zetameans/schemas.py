from enum import Enum
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from . import config


class Estimator(str, Enum):
    COR2 = "cor2"
    COR3 = "cor3"
    THM2 = "thm2"
    THM3 = "thm3"
    THM1 = "thm1"
    FOURIER = "fourier"


class XRule(str, Enum):
    FIXED = "fixed"
    PROPORTIONAL = "proportional"
    ALL_CELLS = "all_cells"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class PolicyModel(BaseModel):
    precision_bits: int = Field(default=config.PRECISION_BITS, ge=53, le=256)
    tol: float = Field(default=config.TOL, gt=0)
    max_subdivisions: int = Field(default=config.MAX_SUBDIVISIONS, ge=16)
    series_safety_factor: float = Field(default=config.SERIES_SAFETY, ge=1)

    def to_policy(self):
        from .numerics import NumericPolicy

        return NumericPolicy(
            precision_bits=self.precision_bits,
            abs_tol=self.tol,
            rel_tol=self.tol,
            max_subdivisions=self.max_subdivisions,
            series_safety_factor=self.series_safety_factor,
        )


# ═══════════════════════════════════════════════════════════════════════════
# SWEEP
# ═══════════════════════════════════════════════════════════════════════════

class SweepSpec(BaseModel):
    """
    One sweep: every (σ, t, x) in sigma × t_grid × x_rule(t).

    x_values are cell indices for x_rule = fixed and fractions of t/2π for
    x_rule = proportional; all_cells ignores them.
    """
    model_config = ConfigDict(use_enum_values=False)

    estimator: Estimator
    sigma: List[float] = Field(default_factory=lambda: [0.5])
    t_grid: List[float]
    x_rule: XRule = XRule.FIXED
    x_values: List[float] = Field(default_factory=list)
    eta: float = Field(default=config.ETA, gt=0, lt=0.5)
    n_order: int = Field(default=config.N_ORDER, ge=1)
    m_order: int = Field(default=config.M_ORDER, ge=1)
    correction_factor: float = config.CORRECTION_FACTOR
    policy: PolicyModel = Field(default_factory=PolicyModel)
    workers: int = Field(default=config.WORKERS, ge=1)
    out_path: Optional[str] = None
    format: OutputFormat = OutputFormat.CSV

    @field_validator("sigma", mode="before")
    @classmethod
    def _sigma_as_list(cls, value: Union[float, List[float]]):
        if isinstance(value, (int, float)):
            return [value]
        return value

    @field_validator("t_grid")
    @classmethod
    def _strictly_increasing(cls, value: List[float]):
        if not value:
            raise ValueError("t_grid must not be empty")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("t_grid must be strictly increasing")
        if value[0] <= 1:
            raise ValueError("t_grid values must exceed 1")
        return value

    @model_validator(mode="after")
    def _x_values_fit_rule(self):
        if self.x_rule == XRule.FIXED and any(x < 1 or x != int(x) for x in self.x_values):
            raise ValueError("fixed x values must be integers >= 1")
        if self.x_rule == XRule.PROPORTIONAL and any(not 0 < f <= 1 for f in self.x_values):
            raise ValueError("proportional x values are fractions in (0, 1]")
        return self


# ═══════════════════════════════════════════════════════════════════════════
# HTTP REQUESTS
# ═══════════════════════════════════════════════════════════════════════════

class EvalRequest(BaseModel):
    """ζ(s, α), ζ_x(s, α) or K(s)."""
    function: str = Field(default="hurwitz", pattern="^(hurwitz|modified|kernel)$")
    sigma: float
    t: float
    alpha: float = Field(default=1.0, gt=0)
    x: int = Field(default=0, ge=0)
    policy: PolicyModel = Field(default_factory=PolicyModel)


class OracleRequest(BaseModel):
    quantity: str = Field(default="Ix", pattern="^(Ix|Jx|large_interval)$")
    sigma: float
    t: float
    x: int = Field(default=1, ge=1)
    # second argument of J_x; defaults to the conjugate point
    v_sigma: Optional[float] = None
    v_t: Optional[float] = None
    policy: PolicyModel = Field(default_factory=PolicyModel)


class EstimateRequest(BaseModel):
    estimator: Estimator
    sigma: float = 0.5
    t: float
    x: int = Field(default=1, ge=1)
    eta: float = Field(default=config.ETA, gt=0, lt=0.5)
    n_order: int = Field(default=config.N_ORDER, ge=1)
    m_order: int = Field(default=config.M_ORDER, ge=1)
    correction_factor: float = config.CORRECTION_FACTOR
    v_sigma: Optional[float] = None
    v_t: Optional[float] = None
    policy: PolicyModel = Field(default_factory=PolicyModel)


class DensityRequest(BaseModel):
    t: float = Field(gt=0)
    eta: float = Field(default=config.ETA, gt=0, lt=0.5)
    include_members: bool = False


class HyperbolaRequest(BaseModel):
    n_values: List[int] = Field(min_length=1)
    sigma: float = Field(default=0.5, gt=0, lt=1)
    check_naive: bool = False


# ═══════════════════════════════════════════════════════════════════════════
# HTTP RESPONSES
# ═══════════════════════════════════════════════════════════════════════════

class ValueResponse(BaseModel):
    value: List[float]
    detail: Dict[str, Any] = Field(default_factory=dict)


class EstimateResponse(BaseModel):
    estimator: Estimator
    estimate: Dict[str, Any]
    oracle: Optional[List[float]] = None
    residual: Optional[float] = None


class DensityResponse(BaseModel):
    t: float
    eta: float
    count: int
    estimate: float
    members: Optional[List[int]] = None


class HyperbolaRow(BaseModel):
    n: int
    sigma: float
    total: float
    asymptotic: float
    deviation: float
    naive: Optional[float] = None


class HyperbolaResponse(BaseModel):
    rows: List[HyperbolaRow]
