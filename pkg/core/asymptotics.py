"""
Asymptotic expansions of F_{alpha,beta}(R e^{i theta}) as R -> infinity.

Four regimes, by the canonical angle theta in (-pi - pi/alpha, pi - pi/alpha]:

    sector1       -pi - pi/alpha < theta < 0: algebraic series in R^{-(beta + n alpha + 1)}
    sector2       0 < theta < pi - pi/alpha: exponential growth from a saddle point
    ray_pos_real  theta = 0: algebraic series plus an oscillatory stationary-phase series
    ray_lower     theta = pi - pi/alpha (i.e. -pi - pi/alpha): same, mirrored

Resonant pairs (beta + n alpha + m + 1 = 0) add log terms, which sit on the
left-hand side: F + sum(log_terms) ~ sum(algebraic_terms) + exp_part.

The exponential coefficients come from saddle brackets, computed on truncated
series: psi = sqrt(h - h(zeta0)) (or the sign-convention root for the real
stationary point), inverted, and paired with zeta^beta.
"""
import cmath
import logging
import math
from typing import List, Optional

from api.config import NUMERICS_CONFIG
from core.errors import BranchError, ParameterError, SeriesError
from core.resonance import all_resonances
from core.series import (TruncatedSeries, binomial_series, default_order, ts_arith, ts_compose,
                         ts_derive, ts_revert, ts_sqrt)
from core.special import gamma_star, half_integer_gamma
from models.params import Params, canonical_angle
from models.results import AlgebraicTerm, ExpPart, Expansion, ExpansionValue, LogTerm, SaddleData

logger = logging.getLogger(__name__)

# exp(700) is close to the largest double
_LOG_OVERFLOW = 700.0
# angles this close to a boundary ray are that ray
_RAY_SNAP = 1e-14


def _growth_power(params: Params) -> float:
    return params.alpha / (params.alpha - 1.0)


def _power_exponent(params: Params) -> complex:
    return (params.beta + 1.0 - params.alpha / 2.0) * params.kappa


def _stationary_value(params: Params) -> float:
    """alpha^{-kappa} (1 - 1/alpha), the modulus of h at its critical point"""
    return params.alpha ** -params.kappa * (1.0 - 1.0 / params.alpha)


def _algebraic_terms(params: Params, rotation: float, n_terms: int) -> List[AlgebraicTerm]:
    """
    c_n = exp(i (n pi/2 - rotation (beta + n alpha + 1))) Gamma*(beta + n alpha + 1) / n!
    where rotation = theta + pi/2
    """
    terms = []
    for n in range(n_terms):
        exponent = params.beta + n * params.alpha + 1.0
        phase = cmath.exp(1j * (n * math.pi / 2.0 - rotation * exponent))
        terms.append(AlgebraicTerm(c=phase * gamma_star(exponent) / math.factorial(n), exponent=exponent))
    return terms


def _log_terms(params: Params, theta: float) -> List[LogTerm]:
    """i^n e^{i (theta - pi/2) m} / (n! m!) R^m (log R + (theta + pi/2) i), one per resonance"""
    terms = []
    for pair in all_resonances(params):
        n, m = pair.as_tuple()
        coefficient = 1j ** n * cmath.exp(1j * (theta - math.pi / 2.0) * m) / (
            math.factorial(n) * math.factorial(m))
        terms.append(LogTerm(coefficient=coefficient, power_m=m, shift=(theta + math.pi / 2.0) * 1j))
    return terms


def _near(theta: float, ray: float) -> bool:
    return abs(theta - ray) < NUMERICS_CONFIG["near_boundary"]


def _flag_boundary(case_tag: str, theta: float, near: bool) -> bool:
    if near:
        logger.warning(f"{case_tag} expansion at theta={theta:.6g} is within "
                       f"{NUMERICS_CONFIG['near_boundary']} of a boundary ray; uniformity is lost there")
    return near


# ---------------------------------------------------------------------------
# Saddle data and brackets
# ---------------------------------------------------------------------------

def case2_saddle(params: Params, theta: float, order: int) -> SaddleData:
    """
    h(zeta) = e^{i phi} zeta - zeta^alpha with phi = theta - pi/2 + pi/(2 alpha),
    expanded about its saddle point zeta0 = alpha^{-kappa} e^{i kappa phi}
    """
    phi = theta - math.pi / 2.0 + math.pi / (2.0 * params.alpha)
    zeta0 = params.alpha ** -params.kappa * cmath.exp(1j * params.kappa * phi)
    power = binomial_series(zeta0, params.alpha, 1.0, order)
    linear = TruncatedSeries([zeta0, 1.0], order) * cmath.exp(1j * phi)
    h = linear - power
    h0 = h.coeffs[0]
    h.coeffs[0] -= h0
    return SaddleData(phi=phi, zeta0=zeta0, h_series=h, branch_rule="im_increasing",
                      direction=cmath.exp(1j * params.kappa * phi))


def stationary_saddle(params: Params, order: int) -> SaddleData:
    """h(s) = s - s^alpha about its stationary point s0 = alpha^{-kappa} (both boundary rays)"""
    s0 = params.alpha ** -params.kappa
    power = binomial_series(s0, params.alpha, 1.0, order)
    h = TruncatedSeries([s0, 1.0], order) - power
    h.coeffs[0] = 0.0
    return SaddleData(phi=0.0, zeta0=s0, h_series=h, branch_rule="sgn_convention", direction=1.0)


def _resolve_root(sd: SaddleData) -> TruncatedSeries:
    """The square root of the saddle series on the branch fixed by sd.branch_rule"""
    radicand = -sd.h_series if sd.branch_rule == "sgn_convention" else sd.h_series
    for branch in ("plus", "minus"):
        psi = ts_sqrt(radicand, branch)
        slope = psi[1]
        if sd.branch_rule == "im_increasing":
            if (slope * sd.direction).imag > 0:
                return psi
        elif slope.real > 0 and abs(slope.imag) <= 1e-12 * abs(slope):
            return psi
    logger.error(f"No square-root branch satisfies {sd.branch_rule} at zeta0={sd.zeta0}")
    raise BranchError(f"Cannot resolve the square-root branch ({sd.branch_rule}) at zeta0={sd.zeta0}")


def saddle_brackets(sd: SaddleData, beta: complex, n_max: int) -> List[complex]:
    """
    Brackets <delta^{(2n)}(psi), zeta^beta> for n = 0..n_max, where
    psi is the branch-resolved square root of the saddle series. Each one is
    (2n)! times the omega^{2n} coefficient of f(psi^{-1}(omega)) (psi^{-1})'(omega)
    with f(zeta) = zeta^beta expanded about zeta0.

    Raises:
        SeriesError: If h_series is truncated below order 2*n_max + 4
        BranchError: If neither square-root branch satisfies the branch rule
    """
    if sd.h_series.order < 2 * n_max + 4:
        raise SeriesError(f"h_series of order {sd.h_series.order} cannot give bracket {n_max} "
                          f"(needs order {2 * n_max + 4})")
    psi = _resolve_root(sd)
    inverse = ts_revert(psi)
    amplitude = binomial_series(sd.zeta0, beta, 1.0, inverse.order)
    integrand = ts_arith(ts_compose(amplitude, inverse), ts_derive(inverse), "mul")
    return [math.factorial(2 * n) * integrand[2 * n] for n in range(n_max + 1)]


def saddle_bracket(sd: SaddleData, beta: complex, n: int) -> complex:
    """<delta^{(2n)}(psi), zeta^beta>; see ``saddle_brackets``"""
    return saddle_brackets(sd, beta, n)[n]


def _d_terms(brackets: List[complex], phase_of_n) -> List[complex]:
    return [phase_of_n(n) * half_integer_gamma(n) * b / math.factorial(2 * n)
            for n, b in enumerate(brackets)]


# ---------------------------------------------------------------------------
# The four regimes
# ---------------------------------------------------------------------------

def case1_terms(params: Params, theta: float, n_terms: int) -> Expansion:
    """
    Algebraic expansion in the sector -pi - pi/alpha < theta < 0

    Raises:
        ParameterError: If theta is outside the open sector
    """
    lower = -math.pi - math.pi / params.alpha
    if not lower < theta < 0:
        raise ParameterError(f"theta={theta} is outside the sector ({lower:.6g}, 0)")

    return Expansion(
        case_tag="sector1", alpha=params.alpha, beta=params.beta, theta=theta,
        log_terms=_log_terms(params, theta),
        algebraic_terms=_algebraic_terms(params, theta + math.pi / 2.0, n_terms),
        near_boundary=_flag_boundary("sector1", theta, _near(theta, 0.0) or _near(theta, lower)),
    )


def case2_terms(params: Params, theta: float, n_terms: int) -> Expansion:
    """
    Exponentially growing expansion in the sector 0 < theta < pi - pi/alpha:

        F ~ e^{i((beta+1) pi/(2 alpha) + pi/2)} R^{(beta + 1 - alpha/2) kappa}
            exp(e^{i eta2} alpha^{-kappa} (1 - 1/alpha) R^{alpha kappa})
            sum_n (-1)^n Gamma(n + 1/2) bracket_n / ((2n)! R^{n alpha kappa})

    with eta2 = alpha kappa theta - pi/2.

    Raises:
        ParameterError: If theta is outside the open sector
    """
    upper = math.pi - math.pi / params.alpha
    if not 0 < theta < upper:
        raise ParameterError(f"theta={theta} is outside the sector (0, {upper:.6g})")

    sd = case2_saddle(params, theta, default_order(n_terms))
    brackets = saddle_brackets(sd, params.beta, n_terms - 1) if n_terms > 0 else []
    eta2 = params.alpha * params.kappa * theta - math.pi / 2.0

    exp_part = ExpPart(
        growth_coeff=cmath.exp(1j * eta2) * _stationary_value(params),
        growth_power=_growth_power(params),
        power_exponent=_power_exponent(params),
        phase_const=cmath.exp(1j * ((params.beta + 1.0) * math.pi / (2.0 * params.alpha) + math.pi / 2.0)),
        d_terms=_d_terms(brackets, lambda n: (-1) ** n),
    )
    return Expansion(
        case_tag="sector2", alpha=params.alpha, beta=params.beta, theta=theta,
        exp_part=exp_part,
        near_boundary=_flag_boundary("sector2", theta, _near(theta, 0.0) or _near(theta, upper)),
    )


def real_axis_terms(params: Params, n_terms: int) -> Expansion:
    """
    Expansion on the positive real axis: algebraic terms with
    c_n = exp(-i pi (beta + 1 + n(alpha - 1))/2) Gamma*(beta + n alpha + 1)/n!,
    plus the stationary-phase series exp(-i alpha^{-kappa}(1 - 1/alpha) x^{alpha kappa})
    x^{(beta + 1 - alpha/2) kappa} sum_n d_n x^{-n alpha kappa} with
    d_n = e^{i pi (2n+1)/4} Gamma(n + 1/2) bracket_n / (2n)!
    """
    sd = stationary_saddle(params, default_order(n_terms))
    brackets = saddle_brackets(sd, params.beta, n_terms - 1) if n_terms > 0 else []

    exp_part = ExpPart(
        growth_coeff=-1j * _stationary_value(params),
        growth_power=_growth_power(params),
        power_exponent=_power_exponent(params),
        phase_const=1.0,
        d_terms=_d_terms(brackets, lambda n: cmath.exp(1j * math.pi * (2 * n + 1) / 4.0)),
    )
    return Expansion(
        case_tag="ray_pos_real", alpha=params.alpha, beta=params.beta, theta=0.0,
        log_terms=_log_terms(params, 0.0),
        algebraic_terms=_algebraic_terms(params, math.pi / 2.0, n_terms),
        exp_part=exp_part,
    )


def lower_ray_terms(params: Params, n_terms: int) -> Expansion:
    """
    Expansion on the ray theta = -pi - pi/alpha (stored with its canonical
    angle pi - pi/alpha). Mirror of ``real_axis_terms``: the oscillation
    runs the other way, exp(+i alpha^{-kappa}(1 - 1/alpha) R^{alpha kappa}),
    with prefactor e^{i pi (beta+1)/alpha} and d_n phases e^{-i pi (2n+1)/4}.
    """
    theta = -math.pi - math.pi / params.alpha
    sd = stationary_saddle(params, default_order(n_terms))
    brackets = saddle_brackets(sd, params.beta, n_terms - 1) if n_terms > 0 else []

    exp_part = ExpPart(
        growth_coeff=1j * _stationary_value(params),
        growth_power=_growth_power(params),
        power_exponent=_power_exponent(params),
        phase_const=cmath.exp(1j * math.pi * (params.beta + 1.0) / params.alpha),
        d_terms=_d_terms(brackets, lambda n: cmath.exp(-1j * math.pi * (2 * n + 1) / 4.0)),
    )
    return Expansion(
        case_tag="ray_lower", alpha=params.alpha, beta=params.beta,
        theta=math.pi - math.pi / params.alpha,
        log_terms=_log_terms(params, theta),
        algebraic_terms=_algebraic_terms(params, theta + math.pi / 2.0, n_terms),
        exp_part=exp_part,
    )


def expansion_for_angle(params: Params, theta: float, n_terms: int) -> Expansion:
    """Canonicalize theta and dispatch to the matching regime"""
    theta = canonical_angle(theta, params.alpha)
    upper = math.pi - math.pi / params.alpha
    if abs(theta) <= _RAY_SNAP:
        return real_axis_terms(params, n_terms)
    if abs(theta - upper) <= _RAY_SNAP:
        return lower_ray_terms(params, n_terms)
    if theta < 0:
        return case1_terms(params, theta, n_terms)
    return case2_terms(params, theta, n_terms)


# ---------------------------------------------------------------------------
# Materialization
# ---------------------------------------------------------------------------

def _log_exp_prefix(exp_part: ExpPart, radius: float) -> complex:
    log_r = math.log(radius)
    return (cmath.log(exp_part.phase_const) + exp_part.power_exponent * log_r
            + exp_part.growth_coeff * radius ** exp_part.growth_power)


def _magnitude_from_log(log_value: complex) -> float:
    return math.inf if log_value.real > _LOG_OVERFLOW else math.exp(log_value.real)


def evaluate_expansion(e: Expansion, R: float, n_terms: int) -> ExpansionValue:
    """
    Sum the first n_terms algebraic and exponential terms at radius R, minus
    the log terms. The exponential part stays in log form until the end; if
    its log-magnitude exceeds the double range, value is None and
    log_exp_part carries log-magnitude + i*phase.

    Raises:
        ParameterError: If R <= 0 or n_terms exceeds the available terms
    """
    if R <= 0:
        raise ParameterError(f"R must be positive, got {R}")
    if n_terms < 0 or n_terms > e.available_terms:
        raise ParameterError(f"n_terms={n_terms} outside [0, {e.available_terms}]")

    log_r = math.log(R)
    total = 0j
    next_magnitudes = []

    for k, term in enumerate(e.algebraic_terms):
        value = term.c * cmath.exp(-term.exponent * log_r)
        if k < n_terms:
            total += value
        else:
            next_magnitudes.append(abs(value))
            break

    for term in e.log_terms:
        total -= term.coefficient * R ** term.power_m * (log_r + term.shift)

    log_exp_part: Optional[complex] = None
    overflow = False
    if e.exp_part is not None:
        prefix = _log_exp_prefix(e.exp_part, R)
        scale = R ** -e.exp_part.growth_power
        d_terms = e.exp_part.d_terms
        series = sum((d * scale ** k for k, d in enumerate(d_terms[:n_terms])), 0j)
        if n_terms < len(d_terms):
            next_magnitudes.append(_magnitude_from_log(prefix) * abs(d_terms[n_terms]) * scale ** n_terms)
        if series != 0:
            log_exp_part = prefix + cmath.log(series)
            if log_exp_part.real > _LOG_OVERFLOW:
                overflow = True
                logger.warning(f"Exponential part overflows at R={R}: log-magnitude {log_exp_part.real:.1f}")
            else:
                total += cmath.exp(log_exp_part)

    next_term = max(next_magnitudes) if next_magnitudes else math.nan
    return ExpansionValue(value=None if overflow else total, next_term_magnitude=next_term,
                          log_exp_part=log_exp_part, overflow=overflow)
