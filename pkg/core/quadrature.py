# Adaptive quadrature helpers for complex integrands
import logging
import math
import warnings
from typing import Callable, List, Optional, Sequence

from scipy import integrate
from scipy.integrate import IntegrationWarning

from api.config import NUMERICS_CONFIG
from core.errors import QuadratureError
from models.results import QuadResult

logger = logging.getLogger(__name__)

ComplexFunction = Callable[[float], complex]


def oscillation_breakpoints(a: float, b: float, frequency: Callable[[float], float],
                            max_step: float = 1.0, max_pieces: Optional[int] = None) -> List[float]:
    """
    Breakpoints on [a, b] so that every piece spans about two periods of an
    integrand whose local angular frequency is ``frequency(t)``
    """
    if b <= a:
        return [a, b]
    max_pieces = max_pieces or NUMERICS_CONFIG["max_pieces"]
    min_step = (b - a) / max_pieces
    points = [a]
    t = a
    while t < b:
        f = abs(frequency(t))
        step = 4.0 * math.pi / f if f > 0 else max_step
        step = max(min(step, max_step), min_step)
        t = min(b, t + step)
        points.append(t)
    return points


def _quad_real(f: Callable[[float], float], a: float, b: float, epsabs: float, epsrel: float,
               limit: int):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        out = integrate.quad(f, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1)
    value, err, info = out[0], out[1], out[2]
    ier = 0 if len(out) == 3 else 1
    return value, err, info["neval"], ier


def quad_complex(f: ComplexFunction, points: Sequence[float], abs_tol: Optional[float] = None,
                 rel_tol: Optional[float] = None, limit: Optional[int] = None) -> QuadResult:
    """
    Integrate a complex function over consecutive pieces [points[k], points[k+1]]
    with scipy's adaptive Gauss-Kronrod rule (real and imaginary parts separately)

    Raises:
        QuadratureError: If the accumulated error estimate exceeds the tolerance
    """
    abs_tol = NUMERICS_CONFIG["abs_tol"] if abs_tol is None else abs_tol
    rel_tol = NUMERICS_CONFIG["rel_tol"] if rel_tol is None else rel_tol
    limit = limit or NUMERICS_CONFIG["quad_limit"]

    total = 0j
    scale = 0.0
    total_err = 0.0
    n_evals = 0
    failed_pieces = 0
    for a, b in zip(points[:-1], points[1:]):
        if b <= a:
            continue
        re, re_err, re_n, re_ier = _quad_real(lambda t: f(t).real, a, b, abs_tol, rel_tol, limit)
        im, im_err, im_n, im_ier = _quad_real(lambda t: f(t).imag, a, b, abs_tol, rel_tol, limit)
        total += complex(re, im)
        scale += abs(complex(re, im))
        total_err += re_err + im_err
        n_evals += re_n + im_n
        failed_pieces += re_ier + im_ier

    n_pieces = max(1, len(points) - 1)
    # relative to the summed piece magnitudes, not the (possibly cancelled) total
    bound = 10.0 * math.sqrt(n_pieces) * max(abs_tol, rel_tol * scale)
    if not math.isfinite(total_err) or total_err > bound:
        logger.error(f"Quadrature did not converge: err={total_err:.3e} bound={bound:.3e} "
                     f"pieces={n_pieces} flagged={failed_pieces}")
        raise QuadratureError(
            f"quadrature error estimate {total_err:.3e} exceeds tolerance {bound:.3e}",
            value=total, abs_err=total_err,
        )
    if failed_pieces:
        logger.debug(f"{failed_pieces} quadrature pieces flagged, total error still {total_err:.3e}")

    return QuadResult(value=total, abs_err=total_err, n_evals=n_evals)
