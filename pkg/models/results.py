# Result models shared by the numerical modules
import math
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.series import TruncatedSeries
from models.params import ComplexValue

RepresentationTag = Literal["rotate_half", "rotate_full", "split_radius"]
CaseTag = Literal["sector1", "sector2", "ray_pos_real", "ray_lower"]


class QuadResult(BaseModel):
    """A quadrature value with its (estimated, not guaranteed) absolute error"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: ComplexValue
    abs_err: float = Field(..., ge=0)
    n_evals: int = Field(0, ge=0)

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(value=self.value + other.value,
                          abs_err=self.abs_err + other.abs_err,
                          n_evals=self.n_evals + other.n_evals)

    def scaled(self, factor: complex) -> "QuadResult":
        return QuadResult(value=self.value * factor, abs_err=self.abs_err * abs(factor),
                          n_evals=self.n_evals)

    def shifted(self, offset: complex) -> "QuadResult":
        return QuadResult(value=self.value + offset, abs_err=self.abs_err, n_evals=self.n_evals)


class Representation(BaseModel):
    """Contour used to evaluate the entire continuation"""
    model_config = ConfigDict(frozen=True)

    tag: RepresentationTag
    rotation_angle: float = Field(..., gt=0)
    split_rho: float = Field(0.0, ge=0)

    @model_validator(mode="after")
    def validate_split(self):
        if self.tag == "split_radius" and self.split_rho < 1.0:
            raise ValueError("split_radius needs split_rho >= 1")
        return self


class LogTerm(BaseModel):
    """coefficient * R^power_m * (log R + shift)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficient: ComplexValue
    power_m: int = Field(..., ge=0)
    shift: ComplexValue


class AlgebraicTerm(BaseModel):
    """c * R^(-exponent)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    c: ComplexValue
    exponent: ComplexValue


class ExpPart(BaseModel):
    """
    phase_const * R^power_exponent * exp(growth_coeff * R^growth_power)
    * sum_n d_terms[n] * R^(-n*growth_power), kept in log-scaled form
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    growth_coeff: ComplexValue
    growth_power: float
    power_exponent: ComplexValue
    phase_const: ComplexValue
    d_terms: List[ComplexValue] = Field(default_factory=list)


class Expansion(BaseModel):
    """
    Asymptotic expansion on a ray:
    F(R e^{i theta}) + sum(log_terms) ~ sum(algebraic_terms) + exp_part
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    case_tag: CaseTag
    alpha: float
    beta: ComplexValue
    theta: float
    log_terms: List[LogTerm] = Field(default_factory=list)
    algebraic_terms: List[AlgebraicTerm] = Field(default_factory=list)
    exp_part: Optional[ExpPart] = None
    near_boundary: bool = False

    @model_validator(mode="after")
    def validate_terms(self):
        reals = [t.exponent.real for t in self.algebraic_terms]
        if any(b <= a for a, b in zip(reals, reals[1:])):
            raise ValueError("algebraic exponents must have strictly increasing real parts")
        if self.exp_part is not None:
            expected = self.alpha / (self.alpha - 1.0)
            if not math.isclose(self.exp_part.growth_power, expected, rel_tol=1e-14):
                raise ValueError("growth_power must equal alpha/(alpha-1)")
        return self

    @property
    def available_terms(self) -> int:
        counts = [len(self.algebraic_terms)]
        if self.exp_part is not None:
            counts.append(len(self.exp_part.d_terms))
        return max(counts)


class SaddleData(BaseModel):
    """Saddle point (or stationary point) data for the coefficient brackets"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    phi: float
    zeta0: ComplexValue
    h_series: TruncatedSeries
    branch_rule: Literal["im_increasing", "sgn_convention"]
    direction: ComplexValue = 1 + 0j

    @field_validator("h_series")
    def validate_saddle(cls, v):
        if abs(v.coeffs[0]) >= 1e-13 or abs(v.coeffs[1]) >= 1e-13:
            raise ValueError("h_series must vanish to second order at the saddle point")
        return v


class ExpansionValue(BaseModel):
    """
    Materialized truncation of an expansion. When the exponential part
    exceeds the double range, ``value`` is None and ``log_exp_part`` carries
    its complex logarithm (log-magnitude + i*phase).
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: Optional[ComplexValue]
    next_term_magnitude: float
    log_exp_part: Optional[ComplexValue] = None
    overflow: bool = False


class ConvergenceRow(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    radius: float
    oracle: ComplexValue
    expansion: ComplexValue
    abs_error: float
    relative: bool = False
    normalized_error: float


class ConvergenceReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alpha: float
    beta: ComplexValue
    theta: float
    case_tag: CaseTag
    n_terms: int
    rows: List[ConvergenceRow] = Field(default_factory=list)
    fitted_slope: Optional[float] = None
    predicted_slope: Optional[float] = None


class BoundSample(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float
    y: float
    abs_F: float


class BoundScanReport(BaseModel):
    """Empirical growth of |F| on the hourglass region Omega_C"""
    model_config = ConfigDict(frozen=True)

    C: float = Field(..., gt=0)
    A: float
    kappa: float
    samples: List[BoundSample] = Field(default_factory=list)
    fitted_exponent: Optional[float] = None
    predicted_exponent: float
    log_factor_flag: bool
    negative_samples: List[BoundSample] = Field(default_factory=list)
    negative_fitted_exponent: Optional[float] = None
    negative_predicted_exponent: float

    @model_validator(mode="after")
    def validate_membership(self):
        for s in self.samples + self.negative_samples:
            limit = self.C * math.log(2.0 + abs(s.x)) / (1.0 + abs(s.x)) ** self.kappa
            if abs(s.y) > limit * (1.0 + 1e-12):
                raise ValueError(f"sample ({s.x}, {s.y}) lies outside Omega_C")
        return self


class TauberianCase(BaseModel):
    """tau(x) = exp(i x^{1+1/kappa}) or its log-smoothed variant"""
    model_config = ConfigDict(frozen=True)

    kappa: float = Field(..., gt=0)
    smoothed: bool = False

    @property
    def power(self) -> float:
        return 1.0 + 1.0 / self.kappa


class RemainderRow(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: float
    partial_integral: ComplexValue
    main_term: ComplexValue
    residual: ComplexValue
    abs_residual: float


class RemainderReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kappa: float
    smoothed: bool
    laplace_at_zero: ComplexValue
    rows: List[RemainderRow] = Field(default_factory=list)
    fitted_slope: Optional[float] = None
    predicted_slope: float


class MellinComparison(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alpha: float
    s: ComplexValue
    numeric: ComplexValue
    closed_form: ComplexValue
    difference: float
    numeric_abs_err: float
