# Response data models
import math
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator

from models.params import complex_to_dict

SCHEMA_VERSION = "1"


def decode_cell(value: Any) -> Any:
    """
    Normalize a cell: {"re", "im"} mappings become complex, non-finite
    floats become None, lists and mappings are decoded recursively
    """
    if isinstance(value, dict):
        if set(value) == {"re", "im"}:
            return decode_cell(complex(value["re"], value["im"]))
        return {k: decode_cell(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [decode_cell(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, complex) and not (math.isfinite(value.real) and math.isfinite(value.imag)):
        return None
    return value


def encode_cell(value: Any) -> Any:
    """Inverse of decode_cell for JSON output"""
    if isinstance(value, complex):
        return complex_to_dict(value)
    if isinstance(value, dict):
        return {k: encode_cell(v) for k, v in value.items()}
    if isinstance(value, list):
        return [encode_cell(v) for v in value]
    return value


class OutputRecord(BaseModel):
    """One command result as emitted by the CLI and the HTTP service"""
    model_config = ConfigDict(frozen=True)

    schema_version: str = Field(SCHEMA_VERSION, description="Output schema version")
    command: str = Field(..., description="Command that produced the record")
    params: Dict[str, Any] = Field(default_factory=dict, description="Echo of the inputs")
    rows: List[Dict[str, Any]] = Field(default_factory=list, description="Result rows")
    summary: Dict[str, Any] = Field(default_factory=dict, description="Fitted and predicted quantities")
    header: Optional[Dict[str, str]] = Field(None, description="Provenance (generator string)")

    @field_validator("schema_version")
    def validate_schema_version(cls, v):
        if v != SCHEMA_VERSION:
            raise ValueError(f"Unsupported schema_version {v!r}, expected {SCHEMA_VERSION!r}")
        return v

    @field_validator("params", "rows", "summary", mode="before")
    def decode_cells(cls, v):
        return decode_cell(v)

    @field_serializer("params", "rows", "summary", when_used="json")
    def encode_cells(self, v):
        return encode_cell(v)


class ErrorResponse(BaseModel):
    """Model for error responses"""
    detail: str = Field(..., description="Error detail message")
    error_code: Optional[str] = Field(None, description="Exception class name")


class StatusResponse(BaseModel):
    """Model for status responses"""
    status: str = Field(..., description="Service status")
    version: str = Field(..., description="API version")
