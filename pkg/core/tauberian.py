"""
Explicit Tauberian examples.

* tau(x) = exp(i x^{1+1/kappa}) and its log-smoothed variant
  exp(i x^{1+1/kappa} / log^{1/kappa} x) (x >= e, zero below). Their partial
  integrals approach the Laplace transform at 0 with a remainder whose first
  term comes from one integration by parts; what is left decays like
  x^{-1-2/kappa} (resp. log^{1/kappa-1}(x) / x^{1/kappa}).
* S(x) = int_1^x (1 + cos(log^alpha u)) du, whose Mellin transform
  int_1^inf S(x) x^{-s-1} dx has a closed form in F_{alpha,0}.
"""
import cmath
import logging
import math
from typing import List, Optional, Sequence

import numpy as np
from numpy.polynomial import Chebyshev
from numpy.polynomial.legendre import leggauss

from api.config import NUMERICS_CONFIG
from core.errors import ParameterError
from core.evaluator import evaluate
from core.quadrature import oscillation_breakpoints, quad_complex
from core.verification import fit_loglog_slope
from models.params import Params
from models.results import MellinComparison, QuadResult, RemainderReport, RemainderRow, TauberianCase

logger = logging.getLogger(__name__)

# Chebyshev degree per panel for S, Gauss-Legendre points per panel for the Mellin integral
_PANEL_DEGREE = 24
_GAUSS_POINTS = 24


def tau(case: TauberianCase, x: float) -> complex:
    if case.smoothed:
        if x < math.e:
            return 0j
        return cmath.exp(1j * x ** case.power / math.log(x) ** (1.0 / case.kappa))
    return cmath.exp(1j * x ** case.power)


def _phase_rate(case: TauberianCase, x: float) -> float:
    rate = case.power * x ** (case.power - 1.0)
    if case.smoothed:
        rate /= math.log(max(x, math.e)) ** (1.0 / case.kappa)
    return rate


def _integrate_tau(case: TauberianCase, a: float, b: float, tol: Optional[float]) -> QuadResult:
    if case.smoothed:
        a = max(a, math.e)
    if b <= a:
        return QuadResult(value=0j, abs_err=0.0)
    points = oscillation_breakpoints(a, b, lambda t: _phase_rate(case, t), max_step=1.0)
    return quad_complex(lambda t: tau(case, t), points, abs_tol=tol, rel_tol=tol)


def tau_partial_integral(case: TauberianCase, x: float, tol: Optional[float] = None) -> QuadResult:
    """
    int_0^x tau(t) dt

    Raises:
        ParameterError: If x < 0
        QuadratureError: If the quadrature does not converge
    """
    if x < 0:
        raise ParameterError(f"x must be nonnegative, got {x}")
    return _integrate_tau(case, 0.0, x, tol)


def _smoothed_laplace_at_zero(case: TauberianCase, tol: Optional[float]) -> QuadResult:
    """
    int_e^inf tau(t) dt along zeta = e + s e^{i psi}, psi = pi/(2 p): on that
    ray i zeta^p / log^{1/kappa}(zeta) has a real part tending to -infinity
    """
    p, kappa = case.power, case.kappa
    psi = math.pi / (2.0 * p)
    direction = cmath.exp(1j * psi)

    def exponent(s: float) -> complex:
        zeta = math.e + s * direction
        return 1j * zeta ** p / cmath.log(zeta) ** (1.0 / kappa)

    floor = math.log(NUMERICS_CONFIG["tail_cutoff"])
    cutoff = 1.0
    while exponent(cutoff).real > floor:
        cutoff *= 2.0
    points = oscillation_breakpoints(0.0, cutoff, lambda s: _phase_rate(case, math.e + s), max_step=0.25)
    result = quad_complex(lambda s: cmath.exp(exponent(s)), points, abs_tol=tol, rel_tol=tol)
    return result.scaled(direction)


def laplace_at_zero(case: TauberianCase, tol: Optional[float] = None) -> QuadResult:
    """
    L{tau; 0}: F_{1+1/kappa, 0}(0) for the plain case, a rotated-path
    integral for the smoothed one
    """
    if case.smoothed:
        return _smoothed_laplace_at_zero(case, tol)
    return evaluate(Params.build(case.power, 0.0), 0j, tol=tol)


def remainder_main_term(case: TauberianCase, x: float) -> complex:
    """First integration-by-parts term tau(x) / (i phi'(x)), phi' to leading order"""
    if case.smoothed:
        return tau(case, x) * math.log(x) ** (1.0 / case.kappa) / (1j * case.power * x ** (1.0 / case.kappa))
    return tau(case, x) / (1j * case.power * x ** (1.0 / case.kappa))


def predicted_remainder_slope(case: TauberianCase) -> float:
    """Power of x in the remainder (the smoothed log factor is ignored)"""
    if case.smoothed:
        return -1.0 / case.kappa
    return -1.0 - 2.0 / case.kappa


def extremal_remainder(case: TauberianCase, xs: Sequence[float], tol: Optional[float] = None) -> RemainderReport:
    """
    Residual int_0^x tau - L{tau; 0} - main term at each x, and the fitted
    log-log slope of its modulus

    Raises:
        ParameterError: If xs are not increasing (or below e for the smoothed case)
    """
    xs = list(xs)
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ParameterError("xs must be increasing")
    if xs and (xs[0] <= 0 or (case.smoothed and xs[0] <= math.e)):
        raise ParameterError(f"xs must start above {'e' if case.smoothed else '0'}")

    limit = laplace_at_zero(case, tol)
    rows: List[RemainderRow] = []
    partial = QuadResult(value=0j, abs_err=0.0)
    previous = 0.0
    for x in xs:
        partial = partial + _integrate_tau(case, previous, x, tol)
        previous = x
        main = remainder_main_term(case, x)
        residual = partial.value - limit.value - main
        rows.append(RemainderRow(x=x, partial_integral=partial.value, main_term=main,
                                 residual=residual, abs_residual=abs(residual)))

    fitted = fit_loglog_slope(xs, [row.abs_residual for row in rows])
    logger.info(f"Remainder kappa={case.kappa} smoothed={case.smoothed}: slope {fitted}")
    return RemainderReport(kappa=case.kappa, smoothed=case.smoothed, laplace_at_zero=limit.value,
                           rows=rows, fitted_slope=fitted, predicted_slope=predicted_remainder_slope(case))


# ---------------------------------------------------------------------------
# S(x) = int_1^x (1 + cos(log^alpha u)) du
# ---------------------------------------------------------------------------

def _mueger_density(alpha: float):
    """Integrand of S in v = log u"""
    def density(v):
        v = np.asarray(v, dtype=float)
        return np.exp(v) * (1.0 + np.cos(np.abs(v) ** alpha))
    return density


def _panel_edges(alpha: float, end: float) -> List[float]:
    """Panels of at most half an oscillation of cos(v^alpha), and at most 0.5 wide"""
    edges = [0.0]
    v = 0.0
    while v < end:
        rate = alpha * v ** (alpha - 1.0) if v > 0 else 0.0
        width = min(0.5, math.pi / rate) if rate > 0 else 0.5
        v = min(end, v + width)
        edges.append(v)
    return edges


def mueger_s(alpha: float, x: float) -> float:
    """S(x) by quadrature in v = log u"""
    if x < 1:
        raise ParameterError(f"S is defined for x >= 1, got {x}")
    end = math.log(x)
    points = oscillation_breakpoints(0.0, end, lambda v: alpha * v ** (alpha - 1.0) if v > 0 else 0.0,
                                     max_step=0.5)
    density = _mueger_density(alpha)
    return quad_complex(lambda v: complex(float(density(v))), points).value.real


def mueger_main_term(alpha: float, x: float) -> float:
    """x + x sin(log^alpha x) / (alpha log^{alpha-1} x), from one integration by parts"""
    log_x = math.log(x)
    return x + x * math.sin(log_x ** alpha) / (alpha * log_x ** (alpha - 1.0))


def mueger_closed_form(alpha: float, s: complex, tol: Optional[float] = None) -> complex:
    """1/(s-1) - 1/s + (F(i(1-s)) + conj(F(i(1-conj s)))) / (2s) with F = F_{alpha,0}"""
    params = Params.build(alpha, 0.0)
    forward = evaluate(params, 1j * (1.0 - s), tol=tol).value
    backward = evaluate(params, 1j * (1.0 - s.conjugate()), tol=tol).value.conjugate()
    return 1.0 / (s - 1.0) - 1.0 / s + (forward + backward) / (2.0 * s)


def mueger_mellin(alpha: float, s: complex, tol: float = 1e-8) -> MellinComparison:
    """
    int_1^inf S(x) x^{-s-1} dx by nested quadrature, against the closed form.

    In v = log x the integral is int_0^V S(e^v) e^{-s v} dv, truncated where
    S(x) <= 2x bounds the rest by tol/10. S is carried panel by panel as the
    antiderivative of a Chebyshev interpolant of its density; the outer
    integral uses Gauss-Legendre nodes on the same panels.

    Raises:
        ParameterError: If Re s <= 1 or alpha <= 1
    """
    s = complex(s)
    if s.real <= 1.0:
        raise ParameterError(f"The Mellin integral needs Re s > 1, got s={s}")
    if alpha <= 1.0:
        raise ParameterError(f"alpha must satisfy alpha > 1, got {alpha}")

    sigma = s.real
    end = math.log(20.0 / (tol * (sigma - 1.0))) / (sigma - 1.0)
    density = _mueger_density(alpha)
    nodes, weights = leggauss(_GAUSS_POINTS)
    coarse_nodes, coarse_weights = leggauss(_GAUSS_POINTS // 2)

    fine_total, coarse_total = 0j, 0j
    s_start = 0.0
    edges = _panel_edges(alpha, end)
    for a, b in zip(edges[:-1], edges[1:]):
        antiderivative = Chebyshev.interpolate(density, _PANEL_DEGREE, domain=[a, b]).integ(lbnd=a)
        half, mid = 0.5 * (b - a), 0.5 * (a + b)

        def panel(xs: np.ndarray, ws: np.ndarray) -> complex:
            v = mid + half * xs
            return complex(half * np.sum(ws * (s_start + antiderivative(v)) * np.exp(-s * v)))

        fine_total += panel(nodes, weights)
        coarse_total += panel(coarse_nodes, coarse_weights)
        s_start += float(antiderivative(b))

    numeric_err = abs(fine_total - coarse_total) + tol / 10.0
    closed = mueger_closed_form(alpha, s)
    logger.debug(f"Mellin alpha={alpha} s={s}: {len(edges) - 1} panels up to v={end:.2f}, "
                 f"numeric={fine_total} closed={closed}")
    return MellinComparison(alpha=alpha, s=s, numeric=complex(fine_total), closed_form=closed,
                            difference=abs(fine_total - closed), numeric_abs_err=numeric_err)
