# API routes module
import logging
from typing import Callable

from fastapi import APIRouter, HTTPException, status
from pydantic import BaseModel

from api.cache import cached
from core.commands import Commands
from core.errors import NUMERIC_FAILURES, FourierLaplaceError, ParameterError, SeriesError
from models.request import (BoundsRequest, CompareRequest, EvaluateRequest, ExpandRequest, MuegerRequest,
                            TauberianRequest)
from models.response import ErrorResponse, OutputRecord

logger = logging.getLogger(__name__)

# Create router
router = APIRouter()

_ERROR_RESPONSES = {
    400: {"model": ErrorResponse, "description": "Invalid parameters"},
    422: {"model": ErrorResponse, "description": "Numeric failure (tolerance or overflow guard)"},
}


def _run(command: Callable[[BaseModel], OutputRecord], request: BaseModel) -> OutputRecord:
    """Run a command, mapping library errors to HTTP status codes"""
    try:
        return command(request)
    except (ParameterError, SeriesError) as e:
        logger.warning(f"Rejected {command.__name__}: {e}")
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    except NUMERIC_FAILURES as e:
        logger.error(f"Numeric failure in {command.__name__}: {e}")
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
                            detail=f"{type(e).__name__}: {e}")
    except FourierLaplaceError as e:
        logger.error(f"Error in {command.__name__}: {e}")
        raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=str(e))


@cached
def evaluate_point(request: EvaluateRequest) -> OutputRecord:
    return Commands.evaluate_point(request)


@cached
def expand(request: ExpandRequest) -> OutputRecord:
    return Commands.expand(request)


@cached
def compare(request: CompareRequest) -> OutputRecord:
    return Commands.compare(request)


@cached
def bounds(request: BoundsRequest) -> OutputRecord:
    return Commands.bounds(request)


@cached
def tauberian_remainder(request: TauberianRequest) -> OutputRecord:
    return Commands.tauberian_remainder(request)


@cached
def mueger(request: MuegerRequest) -> OutputRecord:
    return Commands.mueger(request)


@router.post("/evaluate", response_model=OutputRecord, responses=_ERROR_RESPONSES)
def evaluate_endpoint(request: EvaluateRequest):
    """
    Evaluate F_{alpha,beta}(z) anywhere in the complex plane
    """
    return _run(evaluate_point, request)


@router.post("/expand", response_model=OutputRecord, responses=_ERROR_RESPONSES)
def expand_endpoint(request: ExpandRequest):
    """
    Asymptotic expansion coefficients for a regime or a ray angle
    """
    return _run(expand, request)


@router.post("/compare", response_model=OutputRecord, responses=_ERROR_RESPONSES)
def compare_endpoint(request: CompareRequest):
    """
    Truncated expansion against reference values along a ray
    """
    return _run(compare, request)


@router.post("/bounds", response_model=OutputRecord, responses=_ERROR_RESPONSES)
def bounds_endpoint(request: BoundsRequest):
    """
    Growth of |F| on the hourglass region
    """
    return _run(bounds, request)


@router.post("/tauberian/remainder", response_model=OutputRecord, responses=_ERROR_RESPONSES)
def tauberian_endpoint(request: TauberianRequest):
    """
    Remainder table of the extremal Tauberian example
    """
    return _run(tauberian_remainder, request)


@router.post("/tauberian/mueger", response_model=OutputRecord, responses=_ERROR_RESPONSES)
def mueger_endpoint(request: MuegerRequest):
    """
    Mellin transform of S(x) against its closed form
    """
    return _run(mueger, request)
