"""
Command layer shared by the CLI and the HTTP service: validated requests in,
OutputRecords out. Expansion rows put every term in the form
coefficient * R^(-exponent); log rows carry their shift as well.
"""
import logging
from typing import Any, Dict, List, Optional

from api.config import OUTPUT_CONFIG
from core.asymptotics import (case1_terms, case2_terms, expansion_for_angle, lower_ray_terms,
                              real_axis_terms)
from core.closed_forms import closed_form, has_closed_form
from core.evaluator import choose_representation, evaluate
from core.tauberian import extremal_remainder, mueger_mellin
from core.verification import bound_scan, convergence_report
from models.params import Params
from models.request import (BoundsRequest, CompareRequest, EvaluateRequest, ExpandRequest, MuegerRequest,
                            TauberianRequest)
from models.response import OutputRecord
from models.results import Expansion, TauberianCase

logger = logging.getLogger(__name__)


def _term_row(e: Expansion, kind: str, index: int, coefficient: complex, exponent: complex,
              shift: complex = 0j) -> Dict[str, Any]:
    return {
        "case_tag": e.case_tag,
        "kind": kind,
        "index": index,
        "coefficient": complex(coefficient),
        "exponent": complex(exponent),
        "shift": complex(shift),
        "near_boundary": e.near_boundary,
    }


def expansion_rows(e: Expansion) -> List[Dict[str, Any]]:
    """Flatten an expansion into table rows"""
    rows = [_term_row(e, "algebraic", n, t.c, t.exponent) for n, t in enumerate(e.algebraic_terms)]
    rows += [_term_row(e, "log", t.power_m, t.coefficient, -t.power_m, t.shift) for t in e.log_terms]
    if e.exp_part is not None:
        part = e.exp_part
        rows.append(_term_row(e, "exp_growth", 0, part.growth_coeff, -part.growth_power))
        rows.append(_term_row(e, "exp_prefactor", 0, part.phase_const, -part.power_exponent))
        rows += [_term_row(e, "exp_series", n, d, n * part.growth_power) for n, d in enumerate(part.d_terms)]
    return rows


def _build_expansion(params: Params, request: ExpandRequest) -> Expansion:
    if request.case == "real-axis":
        return real_axis_terms(params, request.terms)
    if request.case == "lower-ray":
        return lower_ray_terms(params, request.terms)
    if request.case == "sector1":
        return case1_terms(params, request.theta, request.terms)
    if request.case == "sector2":
        return case2_terms(params, request.theta, request.terms)
    return expansion_for_angle(params, request.theta, request.terms)


class Commands:
    """Entry points behind every CLI subcommand and HTTP endpoint"""

    @staticmethod
    def _record(command: str, request, rows: List[Dict[str, Any]], summary: Optional[Dict[str, Any]] = None,
                header: bool = True) -> OutputRecord:
        return OutputRecord(
            schema_version=OUTPUT_CONFIG["schema_version"],
            command=command,
            params=request.model_dump(),
            rows=rows,
            summary=summary or {},
            header={"generator": OUTPUT_CONFIG["generator"]} if header else None,
        )

    @staticmethod
    def evaluate_point(request: EvaluateRequest, header: bool = True) -> OutputRecord:
        """
        F_{alpha,beta}(z) with its error estimate and the contour used

        Raises:
            ParameterError: If alpha <= 1
            QuadratureError, OverflowGuardError: From the evaluator
        """
        params = request.to_params()
        rep = choose_representation(params, request.z)
        result = evaluate(params, request.z, rep=rep, tol=request.tol)
        logger.info(f"eval alpha={params.alpha} beta={params.beta} z={request.z}: {result.value} via {rep.tag}")
        row = {"z": request.z, "value": result.value, "abs_err": result.abs_err, "representation": rep.tag}
        summary = {"closed_form": closed_form(params, request.z) if has_closed_form(params) else None}
        return Commands._record("eval", request, [row], summary, header)

    @staticmethod
    def expand(request: ExpandRequest, header: bool = True) -> OutputRecord:
        params = request.to_params()
        expansion = _build_expansion(params, request)
        summary = {"case_tag": expansion.case_tag, "theta": expansion.theta,
                   "near_boundary": expansion.near_boundary}
        return Commands._record("expand", request, expansion_rows(expansion), summary, header)

    @staticmethod
    def compare(request: CompareRequest, header: bool = True, workers: Optional[int] = None) -> OutputRecord:
        params = request.to_params()
        report = convergence_report(params, request.theta, request.radii, request.terms, workers=workers)
        rows = [{"radius": r.radius, "oracle": r.oracle, "expansion": r.expansion, "abs_error": r.abs_error,
                 "normalized_error": r.normalized_error, "relative": r.relative} for r in report.rows]
        summary = {"case_tag": report.case_tag, "theta": report.theta,
                   "fitted_slope": report.fitted_slope, "predicted_slope": report.predicted_slope}
        return Commands._record("compare", request, rows, summary, header)

    @staticmethod
    def bounds(request: BoundsRequest, header: bool = True, workers: Optional[int] = None) -> OutputRecord:
        params = request.to_params()
        report = bound_scan(params, request.C, request.xs, workers=workers)
        rows = [{"side": "positive", "x": s.x, "y": s.y, "abs_F": s.abs_F} for s in report.samples]
        rows += [{"side": "negative", "x": s.x, "y": s.y, "abs_F": s.abs_F} for s in report.negative_samples]
        summary = {
            "A": report.A,
            "kappa": report.kappa,
            "fitted_exponent": report.fitted_exponent,
            "predicted_exponent": report.predicted_exponent,
            "log_factor_flag": report.log_factor_flag,
            "negative_fitted_exponent": report.negative_fitted_exponent,
            "negative_predicted_exponent": report.negative_predicted_exponent,
        }
        return Commands._record("bounds", request, rows, summary, header)

    @staticmethod
    def tauberian_remainder(request: TauberianRequest, header: bool = True) -> OutputRecord:
        case = TauberianCase(kappa=request.kappa, smoothed=request.smoothed)
        report = extremal_remainder(case, request.xs, tol=request.tol)
        rows = [{"x": r.x, "partial_integral": r.partial_integral, "main_term": r.main_term,
                 "residual": r.residual, "abs_residual": r.abs_residual} for r in report.rows]
        summary = {"laplace_at_zero": report.laplace_at_zero, "fitted_slope": report.fitted_slope,
                   "predicted_slope": report.predicted_slope}
        return Commands._record("demo-tauberian", request, rows, summary, header)

    @staticmethod
    def mueger(request: MuegerRequest, header: bool = True) -> OutputRecord:
        comparison = mueger_mellin(request.alpha, request.s, tol=request.tol)
        row = {"s": comparison.s, "numeric": comparison.numeric, "closed_form": comparison.closed_form,
               "difference": comparison.difference, "numeric_abs_err": comparison.numeric_abs_err}
        return Commands._record("demo-mueger", request, [row], header=header)
