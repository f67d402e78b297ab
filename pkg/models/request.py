# Request data models
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from models.params import ComplexValue, Params

ExpansionCase = Literal["sector1", "sector2", "real-axis", "lower-ray"]


class ParamsRequest(BaseModel):
    """(alpha, beta) as sent by a client; alpha > 1 is checked by ``to_params``"""
    alpha: float = Field(..., description="Exponent of the phase t^alpha")
    beta: ComplexValue = Field(0j, description="Exponent of the amplitude t^beta")

    def to_params(self) -> Params:
        return Params.build(self.alpha, self.beta)


def _increasing(values: List[float], name: str) -> List[float]:
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError(f"{name} must be increasing")
    return values


class EvaluateRequest(ParamsRequest):
    """Model for a point evaluation of F_{alpha,beta}(z)"""
    z: ComplexValue = Field(..., description="Evaluation point")
    tol: Optional[float] = Field(None, gt=0, description="Absolute/relative quadrature tolerance")


class ExpandRequest(ParamsRequest):
    """Model for expansion requests; theta alone dispatches on the canonical angle"""
    case: Optional[ExpansionCase] = Field(None, description="Regime to expand in")
    theta: Optional[float] = Field(None, description="Ray angle")
    terms: int = Field(..., ge=1, le=30, description="Number of terms")

    @model_validator(mode="after")
    def validate_case(self):
        if self.case is None and self.theta is None:
            raise ValueError("Either case or theta is required")
        if self.case in ("sector1", "sector2") and self.theta is None:
            raise ValueError(f"Case {self.case} needs theta")
        return self


class CompareRequest(ParamsRequest):
    """Model for expansion-vs-oracle convergence tables"""
    theta: float = Field(..., description="Ray angle")
    radii: List[float] = Field(..., min_length=1, description="Radii, positive and increasing")
    terms: int = Field(..., ge=1, le=30, description="Number of expansion terms")

    @field_validator("radii")
    def validate_radii(cls, v):
        if any(r <= 0 for r in v):
            raise ValueError("radii must be positive")
        return _increasing(v, "radii")


class BoundsRequest(ParamsRequest):
    """Model for growth scans on the hourglass region"""
    C: float = Field(..., gt=0, description="Width constant of the region")
    xs: List[float] = Field(..., min_length=1, description="Abscissae, positive and increasing")

    @field_validator("xs")
    def validate_xs(cls, v):
        if any(x <= 0 for x in v):
            raise ValueError("xs must be positive")
        return _increasing(v, "xs")


class TauberianRequest(BaseModel):
    """Model for the extremal Tauberian remainder table"""
    kappa: float = Field(..., gt=0, description="Hourglass exponent kappa")
    smoothed: bool = Field(False, description="Use the log-smoothed tau")
    xs: List[float] = Field(..., min_length=1, description="Abscissae, increasing")
    tol: Optional[float] = Field(None, gt=0, description="Quadrature tolerance")

    @field_validator("xs")
    def validate_xs(cls, v):
        return _increasing(v, "xs")


class MuegerRequest(BaseModel):
    """Model for the Mellin-transform check of S(x)"""
    alpha: float = Field(..., gt=1, description="Exponent in cos(log^alpha u)")
    s: ComplexValue = Field(..., description="Mellin variable, Re s > 1")
    tol: float = Field(1e-8, gt=0, description="Target accuracy of the nested quadrature")
