# Parameter and evaluation-point models
import cmath
import math
from typing import Annotated, Any, Dict, Tuple, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, ValidationError, field_validator, model_validator

from core.errors import ParameterError


def to_complex(value: Any) -> complex:
    """
    Coerce a number, a ``[re, im]`` pair, a ``{"re", "im"}`` mapping or a
    ``"RE,IM"`` string to a complex number
    """
    if isinstance(value, complex):
        return value
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, dict) and "re" in value:
        return complex(float(value["re"]), float(value.get("im", 0.0)))
    if isinstance(value, (list, tuple)) and 1 <= len(value) <= 2:
        return complex(float(value[0]), float(value[1]) if len(value) == 2 else 0.0)
    if isinstance(value, str):
        parts = [p.strip() for p in value.split(",")]
        if 1 <= len(parts) <= 2:
            return complex(float(parts[0]), float(parts[1]) if len(parts) == 2 else 0.0)
    raise ValueError(f"Cannot interpret {value!r} as a complex number")


def complex_to_dict(value: complex) -> Dict[str, float]:
    return {"re": value.real, "im": value.imag}


ComplexValue = Annotated[
    complex,
    BeforeValidator(to_complex),
    PlainSerializer(complex_to_dict, when_used="json"),
]


class Params(BaseModel):
    """The pair (alpha, beta) together with its derived quantities"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alpha: float = Field(..., description="Exponent of the phase t^alpha, alpha > 1")
    beta: ComplexValue = Field(0j, description="Exponent of the amplitude t^beta")
    eps_resonance: float = Field(1e-12, gt=0, description="Tolerance for resonance detection")
    kappa: float = Field(0.0, description="Derived: 1/(alpha-1)")

    @field_validator("alpha")
    def validate_alpha(cls, v):
        if not math.isfinite(v) or v <= 1:
            raise ValueError(f"alpha must satisfy alpha > 1, got {v}")
        return v

    @model_validator(mode="after")
    def derive_kappa(self):
        object.__setattr__(self, "kappa", 1.0 / (self.alpha - 1.0))
        return self

    @classmethod
    def build(cls, alpha: float, beta: Union[complex, float, Tuple[float, float]] = 0.0,
              eps_resonance: float = 1e-12) -> "Params":
        """
        Construct validated parameters

        Raises:
            ParameterError: If alpha <= 1 or beta is not a complex number
        """
        try:
            return cls(alpha=alpha, beta=beta, eps_resonance=eps_resonance)
        except ValidationError as e:
            messages = "; ".join(err["msg"] for err in e.errors())
            raise ParameterError(f"Invalid parameters: {messages}") from e

    def with_beta(self, beta: complex) -> "Params":
        return Params.build(self.alpha, beta, self.eps_resonance)

    @property
    def window(self) -> Tuple[float, float]:
        """Canonical angle window (lower open, upper closed)"""
        return -math.pi - math.pi / self.alpha, math.pi - math.pi / self.alpha


def canonical_angle(angle: float, alpha: float) -> float:
    """
    Reduce an angle into the window (-pi - pi/alpha, pi - pi/alpha].
    Angles already in the window are returned unchanged.
    """
    upper = math.pi - math.pi / alpha
    lower = upper - 2.0 * math.pi
    if lower < angle <= upper:
        return angle
    turns = math.ceil((angle - upper) / (2.0 * math.pi))
    reduced = angle - 2.0 * math.pi * turns
    if reduced <= lower:
        reduced += 2.0 * math.pi
    # round-off in the shift may land one ulp above the window
    return min(reduced, upper)


class EvalPoint(BaseModel):
    """A point z in polar form with its angle in the canonical window"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    z: ComplexValue
    radius: float = Field(..., ge=0)
    angle: float

    @classmethod
    def from_complex(cls, z: complex, alpha: float) -> "EvalPoint":
        z = complex(z)
        return cls(z=z, radius=abs(z), angle=canonical_angle(cmath.phase(z), alpha))

    @classmethod
    def from_polar(cls, radius: float, angle: float, alpha: float) -> "EvalPoint":
        angle = canonical_angle(angle, alpha)
        return cls(z=cmath.rect(radius, angle), radius=radius, angle=angle)


class ResonancePair(BaseModel):
    """A pair (n, m) with beta + n*alpha + m + 1 = 0"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0)
    m: int = Field(..., ge=0)

    def as_tuple(self) -> Tuple[int, int]:
        return self.n, self.m
