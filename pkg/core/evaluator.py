"""
Evaluation of the entire continuation F_{alpha,beta}(z) anywhere in the plane.

The defining integral Fp int_0^inf t^beta exp(i t^alpha - i z t) dt converges
only for Im z < 0. Every representation here rotates (part of) the contour
into a sector where exp(i t^alpha) decays, which gives an entire function of z:

    rotate_half   the whole ray turned by pi/(2 alpha), exp(i t^alpha) -> exp(-s^alpha)
    rotate_full   the whole ray turned by pi/alpha, exp(i t^alpha) -> exp(-i s^alpha),
                  usable where exp(-i z e^{i pi/alpha} s) decays
    split_radius  [0, rho] on the real axis, an arc of radius rho, and the
                  rotate_half ray beyond rho

On a rotated ray with angle phi the integrand becomes s^beta exp(sigma s^alpha + w s)
with sigma = i e^{i alpha phi} and w = -i z e^{i phi}. The [0, 1] piece is a
finite-part integral: the Taylor terms of total degree m + n*alpha + Re(beta) <= -1
are subtracted and their primed sum added back; resonant terms (beta + n*alpha + m = -1)
contribute the constant phi*i times their coefficient instead.
"""
import cmath
import logging
import math
from typing import NamedTuple, Optional, Set, Tuple

import numpy as np
from scipy import optimize

from api.config import NUMERICS_CONFIG
from core.errors import OverflowGuardError, ParameterError
from core.quadrature import oscillation_breakpoints, quad_complex
from core.resonance import all_resonances, beta_residue, subtraction_set
from models.params import Params
from models.results import QuadResult, Representation, RepresentationTag

logger = logging.getLogger(__name__)

# Head series [0, t_s]: terms below this are dropped, at most this many per index
_HEAD_TERM_FLOOR = 1e-20
_HEAD_MAX_TERMS = 60
# Grid for the arc envelope maximum
_ARC_GRID = 64


class _Ray(NamedTuple):
    """Integrand s^beta exp(sigma s^alpha + w s) on a ray turned by angle"""
    angle: float
    sigma: complex
    w: complex
    prefactor: complex


def _snap(value: complex) -> complex:
    """Drop round-off parts so that e.g. i*e^{i pi/2} is exactly -1"""
    re = 0.0 if abs(value.real) < 1e-15 * abs(value) else value.real
    im = 0.0 if abs(value.imag) < 1e-15 * abs(value) else value.imag
    return complex(re, im)


def _ray(params: Params, z: complex, angle: float) -> _Ray:
    sigma = _snap(1j * cmath.exp(1j * params.alpha * angle))
    w = -1j * z * cmath.exp(1j * angle)
    prefactor = cmath.exp(1j * (params.beta + 1.0) * angle)
    return _Ray(angle, sigma, w, prefactor)


def _power(t: float, exponent: complex) -> complex:
    return cmath.exp(exponent * math.log(t))


def _tolerances(tol: Optional[float]) -> Tuple[float, float]:
    if tol is None:
        return NUMERICS_CONFIG["abs_tol"], NUMERICS_CONFIG["rel_tol"]
    return tol, tol


# ---------------------------------------------------------------------------
# Representations
# ---------------------------------------------------------------------------

def contour_constant(params: Params) -> float:
    """A = max(1, (pi/(2 alpha))^kappa) + margin; the arc term then stays bounded"""
    return max(1.0, (math.pi / (2.0 * params.alpha)) ** params.kappa) + NUMERICS_CONFIG["split_margin"]


def split_rho(params: Params, radius: float) -> float:
    """rho = max(1, A |z|^kappa)"""
    return max(1.0, contour_constant(params) * radius ** params.kappa)


def make_representation(params: Params, tag: RepresentationTag, z: complex = 0j) -> Representation:
    """Representation record for a tag (split_radius needs z to size rho)"""
    if tag == "rotate_full":
        return Representation(tag=tag, rotation_angle=math.pi / params.alpha)
    if tag == "split_radius":
        return Representation(tag=tag, rotation_angle=math.pi / (2.0 * params.alpha),
                              split_rho=split_rho(params, abs(z)))
    return Representation(tag="rotate_half", rotation_angle=math.pi / (2.0 * params.alpha))


def _ray_envelope(alpha: float, a: float, start: float = 0.0) -> float:
    """max over s >= start of -s^alpha + a*s"""
    kappa = 1.0 / (alpha - 1.0)
    peak = (a / alpha) ** kappa if a > 0 else 0.0
    s = max(peak, start)
    return -s ** alpha + a * s


def log_envelope(params: Params, z: complex, rep: Representation) -> float:
    """
    Log of the largest integrand modulus met along the representation's
    contour (ignoring the algebraic factor t^beta). Cancellation in the
    quadrature costs roughly this many nats of accuracy.

    Returns:
        The log-envelope, or inf when the representation does not converge at z
    """
    alpha = params.alpha
    radius, theta = abs(z), cmath.phase(z)

    if rep.tag == "rotate_half":
        a = radius * math.sin(theta + math.pi / (2.0 * alpha))
        return max(0.0, _ray_envelope(alpha, a))

    if rep.tag == "rotate_full":
        a = radius * math.sin(theta + math.pi / alpha)
        return 0.0 if a < 0 else math.inf

    rho = rep.split_rho
    segment = max(0.0, z.imag * rho)
    etas = np.linspace(0.0, math.pi / (2.0 * alpha), _ARC_GRID)
    arc = float(np.max(-rho ** alpha * np.sin(alpha * etas) + rho * radius * np.sin(theta + etas)))
    a = radius * math.sin(theta + math.pi / (2.0 * alpha))
    ray = _ray_envelope(alpha, a, start=rho)
    return max(0.0, segment, arc, ray)


def _split_affordable(params: Params, z: complex, rho: float) -> bool:
    """The real segment and arc need about (rho^alpha + |z| rho)/(4 pi) pieces"""
    pieces = (rho ** params.alpha + abs(z) * rho) / (4.0 * math.pi)
    return pieces <= NUMERICS_CONFIG["max_pieces"] / 4


def choose_representation(params: Params, z: complex) -> Representation:
    """
    Pick the representation with the smallest log-envelope at z.
    rotate_half is kept unless another applicable one is better by
    ``envelope_tie`` nats.

    Raises:
        OverflowGuardError: If even the best envelope exceeds ``envelope_cap``
    """
    z = complex(z)
    candidates = [make_representation(params, "rotate_half")]
    full = make_representation(params, "rotate_full")
    if abs(z) * math.sin(cmath.phase(z) + math.pi / params.alpha) <= -1.0:
        candidates.append(full)
    split = make_representation(params, "split_radius", z)
    if _split_affordable(params, z, split.split_rho):
        candidates.append(split)

    envelopes = [log_envelope(params, z, rep) for rep in candidates]
    best, best_env = candidates[0], envelopes[0]
    for rep, env in zip(candidates[1:], envelopes[1:]):
        if env < best_env - NUMERICS_CONFIG["envelope_tie"] and env < envelopes[0]:
            best, best_env = rep, env

    logger.debug(f"z={z}: envelopes {dict(zip((r.tag for r in candidates), envelopes))}, "
                 f"chose {best.tag}")
    _guard(z, best, best_env)
    return best


def _guard(z: complex, rep: Representation, envelope: float) -> None:
    limit = math.log(NUMERICS_CONFIG["envelope_cap"])
    if envelope > limit:
        logger.warning(f"Overflow guard at z={z}: {rep.tag} log-envelope {envelope:.1f} > {limit:.1f}")
        raise OverflowGuardError(
            f"|z| = {abs(z):.6g} is beyond the quadrature range ({rep.tag} log-envelope "
            f"{envelope:.1f}); use the asymptotic expansion instead",
            log_envelope=envelope,
        )


def z_max(alpha: float) -> float:
    """Radius below which rotate_half stays under the envelope cap on every ray"""
    kappa = 1.0 / (alpha - 1.0)
    limit = math.log(NUMERICS_CONFIG["envelope_cap"])
    return (limit * alpha ** kappa / (1.0 - 1.0 / alpha)) ** (1.0 / (alpha * kappa))


# ---------------------------------------------------------------------------
# [0, 1]: the finite-part integral
# ---------------------------------------------------------------------------

def _head_series(params: Params, sigma: complex, w: complex, t_s: float,
                 excluded: Set[Tuple[int, int]]) -> QuadResult:
    """Termwise integral of the Taylor series over [0, t_s], minus the excluded terms"""
    alpha, beta = params.alpha, params.beta

    a = [1.0 + 0j]
    x = sigma * t_s ** alpha
    while len(a) < _HEAD_MAX_TERMS and abs(a[-1]) >= _HEAD_TERM_FLOOR:
        a.append(a[-1] * x / len(a))
    b = [1.0 + 0j]
    y = w * t_s
    while len(b) < _HEAD_MAX_TERMS and (abs(b[-1]) >= _HEAD_TERM_FLOOR or len(b) <= abs(y)):
        b.append(b[-1] * y / len(b))

    n_idx = np.arange(len(a))[:, None]
    m_idx = np.arange(len(b))[None, :]
    denom = beta + n_idx * alpha + m_idx + 1.0
    keep = np.ones(denom.shape, dtype=bool)
    for n, m in excluded:
        if n < keep.shape[0] and m < keep.shape[1]:
            keep[n, m] = False
    denom = np.where(keep, denom, 1.0)

    terms = np.outer(np.asarray(a), np.asarray(b)) / denom * keep
    scale = _power(t_s, beta + 1.0)
    value = complex(scale * terms.sum())
    abs_err = 1e-16 * abs(scale) * float(np.abs(terms).sum())
    return QuadResult(value=value, abs_err=abs_err, n_evals=0)


def _unit_integral(params: Params, ray: _Ray, abs_tol: float, rel_tol: float) -> QuadResult:
    alpha, beta = params.alpha, params.beta
    sigma, w = ray.sigma, ray.w

    subtract = subtraction_set(params)
    resonant = {p.as_tuple() for p in all_resonances(params)}
    coeffs = [
        (n, m, sigma ** n * w ** m / (math.factorial(n) * math.factorial(m)), n * alpha + m)
        for n, m in subtract
    ]

    t_s = min(0.5, 1.0 / (1.0 + abs(w)))
    head = _head_series(params, sigma, w, t_s, set(subtract))

    def integrand(s: float) -> complex:
        acc = cmath.exp(sigma * s ** alpha + w * s)
        for _, _, c, p in coeffs:
            acc -= c * s ** p
        return _power(s, beta) * acc

    def frequency(s: float) -> float:
        return abs(w.imag) + alpha * abs(sigma.imag) * s ** (alpha - 1.0)

    points = oscillation_breakpoints(t_s, 1.0, frequency, max_step=0.25)
    body = quad_complex(integrand, points, abs_tol, rel_tol)

    primed = sum((c / (beta + p + 1.0) for n, m, c, p in coeffs if (n, m) not in resonant), 0j)
    return (head + body).shifted(primed)


def fp_unit_integral(params: Params, z: complex, rep: Representation,
                     tol: Optional[float] = None) -> QuadResult:
    """
    Finite-part integral over [0, 1] of the (rotated) integrand, with the
    subtracted Taylor terms of degree <= -1 and their primed sum added back.

    For split_radius this is the unrotated integral on the real axis. The
    rotation prefactor and the resonance constant are applied by ``evaluate``.

    Raises:
        QuadratureError: If the adaptive quadrature does not converge
    """
    angle = 0.0 if rep.tag == "split_radius" else rep.rotation_angle
    abs_tol, rel_tol = _tolerances(tol)
    return _unit_integral(params, _ray(params, complex(z), angle), abs_tol, rel_tol)


# ---------------------------------------------------------------------------
# [1, inf): tails
# ---------------------------------------------------------------------------

def _tail_cutoff(alpha: float, re_sigma: float, a: float, re_beta: float,
                 start: float) -> Tuple[float, float, float]:
    """
    Cutoff T past the peak of the log-modulus f(t) = Re(sigma) t^alpha + a t + Re(beta) log t
    where f has dropped by log(1/tail_cutoff) below its maximum on [start, inf).

    Returns:
        (T, a bound on the neglected tail, a step size resolving the peak)
    """
    def f(t: float) -> float:
        return re_sigma * t ** alpha + a * t + re_beta * math.log(t)

    def df(t: float) -> float:
        return re_sigma * alpha * t ** (alpha - 1.0) + a + re_beta / t

    # f is decreasing beyond t_hi
    if re_sigma < 0:
        t_hi = max(start, ((abs(a) + abs(re_beta) + 1.0) / (alpha * -re_sigma)) ** (1.0 / (alpha - 1.0)))
    else:
        t_hi = max(start, 2.0 * abs(re_beta) / -a)

    grid = np.linspace(start, t_hi, 257) if t_hi > start else np.array([start])
    values = np.array([f(t) for t in grid])
    k = int(np.argmax(values))
    f_max, t_peak = float(values[k]), float(grid[k])

    target = f_max - math.log(1.0 / NUMERICS_CONFIG["tail_cutoff"])
    if f(t_hi) <= target:
        cutoff = t_hi
    else:
        hi = 2.0 * t_hi
        while f(hi) > target:
            hi *= 2.0
        cutoff = optimize.brentq(lambda t: f(t) - target, t_hi, hi, xtol=1e-10)

    neglected = math.exp(f(cutoff)) / max(abs(df(cutoff)), 1e-300)
    curvature = abs(re_sigma * alpha * (alpha - 1.0) * t_peak ** (alpha - 2.0) - re_beta / t_peak ** 2)
    width = 1.0 / math.sqrt(curvature) if curvature > 0 else 1.0
    step = min(1.0, max(width, (cutoff - start) / 2000.0))
    return cutoff, neglected, step


def _ray_integral(params: Params, sigma: complex, w: complex, start: float,
                  abs_tol: float, rel_tol: float) -> QuadResult:
    """int_start^inf s^beta exp(sigma s^alpha + w s) ds, needing Re(sigma) < 0 or Re(w) < 0"""
    alpha, beta = params.alpha, params.beta
    if sigma.real >= 0 and w.real >= 0:
        raise ParameterError(f"The ray integral diverges for sigma={sigma}, w={w}")

    cutoff, neglected, step = _tail_cutoff(alpha, sigma.real, w.real, beta.real, start)

    def integrand(s: float) -> complex:
        return cmath.exp(beta * math.log(s) + sigma * s ** alpha + w * s)

    def frequency(s: float) -> float:
        return alpha * abs(sigma.imag) * s ** (alpha - 1.0) + abs(w.imag)

    points = oscillation_breakpoints(start, cutoff, frequency, max_step=step)
    result = quad_complex(integrand, points, abs_tol, rel_tol)
    logger.debug(f"ray integral from {start:.3g} to {cutoff:.3g}: {len(points) - 1} pieces, "
                 f"{result.n_evals} evaluations")
    return QuadResult(value=result.value, abs_err=result.abs_err + neglected, n_evals=result.n_evals)


def _split_tail(params: Params, z: complex, rho: float, abs_tol: float, rel_tol: float) -> QuadResult:
    """Real segment [1, rho], the arc |t| = rho up to angle pi/(2 alpha), and the ray beyond"""
    alpha, beta = params.alpha, params.beta
    radius = abs(z)

    def segment_integrand(t: float) -> complex:
        return cmath.exp(beta * math.log(t) + 1j * t ** alpha - 1j * z * t)

    def segment_frequency(t: float) -> float:
        return abs(alpha * t ** (alpha - 1.0) - z.real)

    segment = quad_complex(segment_integrand,
                           oscillation_breakpoints(1.0, rho, segment_frequency), abs_tol, rel_tol)

    log_rho = math.log(rho)
    rho_alpha = rho ** alpha

    def arc_integrand(eta: float) -> complex:
        exponent = ((beta + 1.0) * (log_rho + 1j * eta) + 1j * rho_alpha * cmath.exp(1j * alpha * eta)
                    - 1j * z * rho * cmath.exp(1j * eta))
        return 1j * cmath.exp(exponent)

    def arc_frequency(eta: float) -> float:
        return alpha * rho_alpha * abs(math.cos(alpha * eta)) + rho * radius + 1.0

    end = math.pi / (2.0 * alpha)
    arc = quad_complex(arc_integrand,
                       oscillation_breakpoints(0.0, end, arc_frequency, max_step=end / 8.0),
                       abs_tol, rel_tol)

    ray = _ray(params, z, end)
    beyond = _ray_integral(params, ray.sigma, ray.w, rho, abs_tol, rel_tol).scaled(ray.prefactor)
    return segment + arc + beyond


def tail_integral(params: Params, z: complex, rep: Representation,
                  tol: Optional[float] = None) -> QuadResult:
    """
    Everything beyond the unit interval.

    rotate_half/rotate_full: the raw rotated integral over [1, inf), before the
    rotation prefactor. split_radius: segment + arc + ray, prefactors included.

    Raises:
        ParameterError: If the representation diverges at z
        QuadratureError: If the adaptive quadrature does not converge
    """
    z = complex(z)
    abs_tol, rel_tol = _tolerances(tol)
    if rep.tag == "split_radius":
        return _split_tail(params, z, rep.split_rho, abs_tol, rel_tol)
    ray = _ray(params, z, rep.rotation_angle)
    return _ray_integral(params, ray.sigma, ray.w, 1.0, abs_tol, rel_tol)


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------

def resonance_constant(params: Params, z: complex, angle: float) -> complex:
    """The beta-residue at z times angle*i"""
    return beta_residue(params, z) * angle * 1j


def evaluate(params: Params, z: complex, rep: Optional[Representation] = None,
             tol: Optional[float] = None) -> QuadResult:
    """
    Evaluate F_{alpha,beta}(z).

    Args:
        params: Validated (alpha, beta)
        z: Any complex number with an affordable envelope (see ``z_max``)
        rep: Force a representation; chosen by envelope when omitted
        tol: Absolute and relative quadrature tolerance (defaults from NUMERICS_CONFIG)

    Returns:
        The value with its estimated absolute error

    Raises:
        OverflowGuardError: If the integrand envelope exceeds ``envelope_cap``
        ParameterError: If a forced representation diverges at z
        QuadratureError: If the adaptive quadrature does not converge
    """
    z = complex(z)
    if rep is None:
        rep = choose_representation(params, z)
    else:
        envelope = log_envelope(params, z, rep)
        if math.isinf(envelope):
            raise ParameterError(f"{rep.tag} does not converge at z={z}")
        _guard(z, rep, envelope)

    unit = fp_unit_integral(params, z, rep, tol)
    tail = tail_integral(params, z, rep, tol)

    if rep.tag == "split_radius":
        result = unit + tail
    else:
        ray = _ray(params, z, rep.rotation_angle)
        result = (unit + tail).scaled(ray.prefactor).shifted(resonance_constant(params, z, ray.angle))

    logger.debug(f"F(alpha={params.alpha}, beta={params.beta}, z={z}) = {result.value} "
                 f"+- {result.abs_err:.2e} via {rep.tag}")
    return result

