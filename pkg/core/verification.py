# Expansion-vs-oracle convergence tables and growth scans near the real axis
import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence

import numpy as np

from core.asymptotics import evaluate_expansion, expansion_for_angle
from core.errors import ParameterError
from core.evaluator import contour_constant, evaluate
from core.oracle import oracle_eval
from models.params import Params, canonical_angle
from models.results import (BoundSample, BoundScanReport, ConvergenceReport, ConvergenceRow, Expansion,
                            QuadResult)

logger = logging.getLogger(__name__)

PointEvaluator = Callable[[Params, complex], QuadResult]


def fit_loglog_slope(xs: Sequence[float], ys: Sequence[float],
                     drop_fraction: float = 1.0 / 3.0) -> Optional[float]:
    """
    Least-squares slope of log y against log x, after dropping the first
    ``drop_fraction`` of the points (pre-asymptotic transients). Points with
    y <= 0 or non-finite y are ignored.

    Returns:
        The slope, or None with fewer than two usable points
    """
    pairs = [(x, y) for x, y in zip(xs, ys) if x > 0 and y > 0 and math.isfinite(y)]
    pairs = pairs[int(len(pairs) * drop_fraction):]
    if len(pairs) < 2:
        return None
    log_x = np.log([p[0] for p in pairs])
    log_y = np.log([p[1] for p in pairs])
    slope, _ = np.polyfit(log_x, log_y, 1)
    return float(slope)


def _map_points(func: Callable[[complex], QuadResult], points: List[complex],
                workers: Optional[int]) -> List[QuadResult]:
    """Evaluate in input order, on a thread pool when workers > 1"""
    if not workers or workers <= 1 or len(points) < 2:
        return [func(z) for z in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, points))


def predicted_convergence_slope(e: Expansion, n_terms: int) -> float:
    """Log-log slope of the truncation error after n_terms terms"""
    alpha, beta, kappa = e.alpha, e.beta, 1.0 / (e.alpha - 1.0)
    algebraic = -(beta.real + n_terms * alpha + 1.0)
    if e.case_tag == "sector1":
        return algebraic
    if e.case_tag == "sector2":
        # relative error of the exponential series
        return -n_terms * alpha * kappa
    oscillatory = kappa * (beta.real + 1.0 - alpha / 2.0) - n_terms * alpha * kappa
    return max(algebraic, oscillatory)


def convergence_report(params: Params, theta: float, radii: Sequence[float], n_terms: int,
                       oracle: PointEvaluator = oracle_eval,
                       workers: Optional[int] = None) -> ConvergenceReport:
    """
    Compare an n_terms truncation with reference values along the ray at theta.

    The error is absolute except in the exponentially growing sector, where it
    is relative to |F|. normalized_error divides it by the first omitted term
    (taken relative to |F| there as well).

    Raises:
        ParameterError: If radii are not positive and increasing
        QuadratureError: Propagated from the oracle
    """
    theta = canonical_angle(theta, params.alpha)
    radii = list(radii)
    if any(r <= 0 for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ParameterError("radii must be positive and increasing")

    expansion = expansion_for_angle(params, theta, n_terms + 1)
    relative = expansion.case_tag == "sector2"
    predicted = predicted_convergence_slope(expansion, n_terms)
    if not radii:
        return ConvergenceReport(alpha=params.alpha, beta=params.beta, theta=theta,
                                 case_tag=expansion.case_tag, n_terms=n_terms, predicted_slope=predicted)

    points = [cmath.rect(r, theta) for r in radii]
    references = _map_points(lambda z: oracle(params, z), points, workers)

    rows = []
    for r, ref in zip(radii, references):
        approx = evaluate_expansion(expansion, r, n_terms)
        if approx.value is None:
            logger.warning(f"Expansion overflows at R={r}; row skipped")
            continue
        error = abs(ref.value - approx.value)
        scale = abs(ref.value) if relative and ref.value != 0 else 1.0
        next_term = approx.next_term_magnitude / scale
        rows.append(ConvergenceRow(
            radius=r, oracle=ref.value, expansion=approx.value,
            abs_error=error / scale, relative=relative,
            normalized_error=error / scale / next_term if next_term > 0 else math.nan,
        ))

    fitted = fit_loglog_slope([row.radius for row in rows], [row.abs_error for row in rows])
    logger.info(f"Convergence {expansion.case_tag} theta={theta:.4f} N={n_terms}: "
                f"slope {fitted} (predicted {predicted:.3f})")
    return ConvergenceReport(alpha=params.alpha, beta=params.beta, theta=theta,
                             case_tag=expansion.case_tag, n_terms=n_terms, rows=rows,
                             fitted_slope=fitted, predicted_slope=predicted)


def hourglass_width(C: float, kappa: float, x: float) -> float:
    """Half-width C log(2+|x|)/(1+|x|)^kappa of the region Omega_C at x"""
    return C * math.log(2.0 + abs(x)) / (1.0 + abs(x)) ** kappa


def predicted_bound_exponent(params: Params, A: float, C: float) -> float:
    """Polynomial growth exponent of |F| on Omega_C for x -> +infinity"""
    re_beta = params.beta.real
    if abs(re_beta + 1.0) < params.eps_resonance:
        return max(1.0, A * C)
    if re_beta < -1.0:
        return max(math.floor(-1.0 - re_beta) + 1.0, A * C)
    return A * C + (re_beta + 1.0) * params.kappa


def bound_scan(params: Params, C: float, xs: Sequence[float],
               evaluator: PointEvaluator = evaluate,
               workers: Optional[int] = None) -> BoundScanReport:
    """
    Sample |F| on Omega_C: on its upper edge and on the real axis for each x,
    and at the mirrored points -x for the decaying side. The growth exponent
    is fitted to the per-x maximum.

    Raises:
        ParameterError: If C <= 0 or xs are not positive and increasing
    """
    xs = list(xs)
    if C <= 0:
        raise ParameterError(f"C must be positive, got {C}")
    if any(x <= 0 for x in xs) or any(b <= a for a, b in zip(xs, xs[1:])):
        raise ParameterError("xs must be positive and increasing")

    kappa = params.kappa
    A = contour_constant(params)
    edge = [hourglass_width(C, kappa, x) for x in xs]

    positive = [complex(x, y) for x, y in zip(xs, edge)] + [complex(x, 0.0) for x in xs]
    negative = [complex(-x, y) for x, y in zip(xs, edge)] + [complex(-x, 0.0) for x in xs]
    values = _map_points(lambda z: evaluator(params, z), positive + negative, workers)

    samples = [BoundSample(x=z.real, y=z.imag, abs_F=abs(v.value))
               for z, v in zip(positive, values[:len(positive)])]
    negative_samples = [BoundSample(x=z.real, y=z.imag, abs_F=abs(v.value))
                        for z, v in zip(negative, values[len(positive):])]

    n = len(xs)
    peak = [max(samples[k].abs_F, samples[n + k].abs_F) for k in range(n)]
    negative_peak = [max(negative_samples[k].abs_F, negative_samples[n + k].abs_F) for k in range(n)]

    return BoundScanReport(
        C=C, A=A, kappa=kappa,
        samples=samples,
        fitted_exponent=fit_loglog_slope(xs, peak),
        predicted_exponent=predicted_bound_exponent(params, A, C),
        log_factor_flag=abs(params.beta.real + 1.0) < params.eps_resonance,
        negative_samples=negative_samples,
        negative_fitted_exponent=fit_loglog_slope(xs, negative_peak),
        negative_predicted_exponent=-1.0 - params.beta.real,
    )
