"""
Reference values of F_{alpha,beta}(z) computed in mpmath.

For Im z < 0 the defining finite-part integral is evaluated directly on the
real axis: Taylor subtraction near 0, tanh-sinh quadrature on [delta, T], and
an integration-by-parts expansion of the oscillatory tail beyond T against
the full phase t^alpha - z t. Elsewhere the integral is taken along the
split contour ([0, rho] real, arc, rotated ray) or the pi/(2 alpha) ray,
whichever has the smaller envelope, with the working precision raised by the
envelope so that cancellation does not eat the requested digits.
"""
import cmath
import logging
import math
from typing import List, Optional, Tuple

import mpmath as mp

from api.config import NUMERICS_CONFIG
from core.errors import QuadratureError
from core.resonance import all_resonances, subtraction_set
from core.series import binomial_series, ts_derive
from models.params import Params
from models.results import QuadResult

logger = logging.getLogger(__name__)

_DEFAULT_TOL = 1e-12
# Split contour radius rho = A |z|^kappa, A above max(1, (pi/(2 alpha))^kappa) by this margin
_SPLIT_MARGIN = 0.75
# Samples per contour piece when locating the integrand peak
_PEAK_SAMPLES = 256


def _mp_params(params: Params) -> Tuple[mp.mpf, mp.mpc]:
    return mp.mpf(params.alpha), mp.mpc(params.beta.real, params.beta.imag)


def _pieces(a: float, b: float, frequency, max_step: float) -> List[float]:
    """Breakpoints on [a, b], two local periods apart and at most max_step"""
    if b <= a:
        return [a, b]
    min_step = (b - a) / NUMERICS_CONFIG["max_pieces"]
    points = [a]
    while points[-1] < b:
        f = abs(frequency(points[-1]))
        step = min(max_step, 4.0 * math.pi / f) if f > 0 else max_step
        points.append(min(b, points[-1] + max(step, min_step)))
    return points


def _split_radius(params: Params, z: complex) -> float:
    scale = max(1.0, (math.pi / (2.0 * params.alpha)) ** params.kappa) + _SPLIT_MARGIN
    return max(1.0, scale * abs(z) ** params.kappa)


def _log_peak(params: Params, z: complex, path: List[complex]) -> float:
    """Largest Re(i t^alpha - i z t) over sampled contour points, at least 0"""
    return max([0.0] + [(1j * t ** params.alpha - 1j * z * t).real for t in path])


def _ray_path(params: Params, z: complex, start: float) -> List[complex]:
    direction = cmath.exp(0.5j * math.pi / params.alpha)
    end = start + 2.0 * (1.0 + abs(z)) ** params.kappa
    step = (end - start) / _PEAK_SAMPLES
    return [(start + k * step) * direction for k in range(_PEAK_SAMPLES + 1)]


def _split_path(params: Params, z: complex, rho: float) -> List[complex]:
    step = rho / _PEAK_SAMPLES
    segment = [complex(k * step) for k in range(_PEAK_SAMPLES + 1)]
    end = 0.5 * math.pi / params.alpha
    arc = [rho * cmath.exp(1j * end * k / _PEAK_SAMPLES) for k in range(_PEAK_SAMPLES + 1)]
    return segment + arc + _ray_path(params, z, rho)


def _quad(f, points: List[float]) -> Tuple[mp.mpc, float]:
    """mp.quad over consecutive pieces, summing value and error"""
    value, error = mp.mpc(0), mp.mpf(0)
    for a, b in zip(points[:-1], points[1:]):
        if b <= a:
            continue
        v, e = mp.quad(f, [a, b], error=True)
        value += v
        error += e
    return value, float(error)


def _fp_unit(params: Params, sigma: mp.mpc, w: mp.mpc) -> Tuple[mp.mpc, float]:
    """Fp int_0^1 s^beta exp(sigma s^alpha + w s) ds (subtracted terms added back as the primed sum)"""
    alpha, beta = _mp_params(params)
    subtract = subtraction_set(params)
    resonant = {p.as_tuple() for p in all_resonances(params)}
    coeffs = [(n, m, sigma ** n * w ** m / (mp.factorial(n) * mp.factorial(m)), n * alpha + m)
              for n, m in subtract]

    delta = min(mp.mpf(0.5), 1 / (1 + abs(w)))
    floor = mp.mpf(10) ** (-mp.mp.dps - 5)

    # [0, delta]: termwise, skipping the subtracted pairs
    head = mp.mpc(0)
    excluded = set(subtract)
    a_n = mp.mpc(1)
    n = 0
    while True:
        b_m = mp.mpc(1)
        m = 0
        while True:
            if (n, m) not in excluded:
                head += a_n * b_m / (beta + n * alpha + m + 1)
            m += 1
            b_m *= w * delta / m
            if abs(b_m) < floor and m > abs(w * delta):
                break
        n += 1
        a_n *= sigma * delta ** alpha / n
        if abs(a_n) < floor:
            break
    head *= mp.power(delta, beta + 1)

    def integrand(s):
        acc = mp.exp(sigma * mp.power(s, alpha) + w * s)
        for _, _, c, p in coeffs:
            acc -= c * mp.power(s, p)
        return mp.power(s, beta) * acc

    pieces = 2 + int((abs(mp.im(w)) + float(alpha) * abs(mp.im(sigma))) / (2 * math.pi))
    points = [float(delta) + (1.0 - float(delta)) * k / pieces for k in range(pieces + 1)]
    body, error = _quad(integrand, points)
    primed = mp.fsum(c / (beta + p + 1) for n, m, c, p in coeffs if (n, m) not in resonant)
    return head + body + primed, error


def _decay_cutoff(alpha: float, re_sigma: float, a: float, re_beta: float, start: float,
                  digits: int) -> float:
    """Past the peak, where the log-modulus is `digits` decades below it"""
    def f(t: float) -> float:
        return re_sigma * t ** alpha + a * t + re_beta * math.log(t)

    grid = [start * 1.05 ** k for k in range(600)]
    values = [f(t) for t in grid]
    peak = max(range(len(grid)), key=values.__getitem__)
    target = values[peak] - digits * math.log(10.0)
    for t, v in zip(grid[peak:], values[peak:]):
        if v < target:
            return t
    return grid[-1]


def _ray_tail(params: Params, sigma: mp.mpc, w: mp.mpc, start: float) -> Tuple[mp.mpc, float]:
    """int_start^inf s^beta exp(sigma s^alpha + w s) ds for a decaying integrand"""
    alpha, beta = _mp_params(params)
    cutoff = _decay_cutoff(params.alpha, float(mp.re(sigma)), float(mp.re(w)), params.beta.real,
                           start, mp.mp.dps + 5)

    def frequency(t: float) -> float:
        return params.alpha * abs(float(mp.im(sigma))) * t ** (params.alpha - 1.0) + abs(float(mp.im(w)))

    def integrand(s):
        return mp.power(s, beta) * mp.exp(sigma * mp.power(s, alpha) + w * s)

    return _quad(integrand, _pieces(start, cutoff, frequency, max_step=0.5))


def _parts_tail(params: Params, z: complex, cutoff: float) -> Tuple[mp.mpc, float]:
    """
    int_T^inf t^beta e^{i Phi(t)} dt with Phi = t^alpha - z t, by repeated
    integration by parts: -e^{i Phi(T)} sum_k g_k(T)/(i Phi'(T)) with
    g_0 = t^beta and g_{k+1} = -(g_k/(i Phi'))'
    """
    passes_cap = NUMERICS_CONFIG["oracle_max_passes"]
    min_passes = max(0, math.ceil(params.beta.real) + 1) + 2
    order = passes_cap + 2

    g = binomial_series(cutoff, params.beta, 1.0, order)
    dphi = binomial_series(cutoff, params.alpha - 1.0, 1.0, order) * params.alpha - z
    i_dphi = dphi * 1j

    total = 0j
    last = math.inf
    for k in range(passes_cap):
        ratio = g / i_dphi
        term = ratio[0]
        total += term
        last = abs(term)
        if k + 1 >= min_passes and last < 10.0 ** (-mp.mp.dps) * max(abs(total), 1e-300):
            break
        g = -ts_derive(ratio)
        if g.order < 1:
            break
    phase = mp.exp(1j * (mp.power(cutoff, mp.mpf(params.alpha)) - mp.mpc(z) * cutoff))
    return -phase * mp.mpc(total), last * float(abs(phase))


def _direct(params: Params, z: complex) -> Tuple[mp.mpc, float]:
    """Defining integral on the real axis, Im z < 0"""
    alpha, beta = _mp_params(params)
    zz = mp.mpc(z)
    unit, unit_err = _fp_unit(params, mp.mpc(0, 1), -1j * zz)

    cutoff = max(1.0, 30.0 ** (1.0 / params.alpha),
                 ((2.0 * abs(z) + 2.0) / params.alpha) ** (1.0 / (params.alpha - 1.0)))

    def integrand(t):
        return mp.power(t, beta) * mp.exp(1j * mp.power(t, alpha) - 1j * zz * t)

    def frequency(t: float) -> float:
        return abs(params.alpha * t ** (params.alpha - 1.0) - z.real) + abs(z.imag)

    middle, middle_err = _quad(integrand, _pieces(1.0, cutoff, frequency, max_step=0.5))
    tail, tail_err = _parts_tail(params, z, cutoff)
    return unit + middle + tail, unit_err + middle_err + tail_err


def _rotated(params: Params, z: complex) -> Tuple[mp.mpc, float]:
    """Whole contour on the ray at angle pi/(2 alpha)"""
    alpha, beta = _mp_params(params)
    angle = mp.pi / (2 * alpha)
    sigma = mp.mpf(-1)
    w = -1j * mp.mpc(z) * mp.exp(1j * angle)
    unit, unit_err = _fp_unit(params, sigma, w)
    tail, tail_err = _ray_tail(params, sigma, w, 1.0)

    resonance = mp.mpc(0)
    for pair in all_resonances(params):
        n, m = pair.as_tuple()
        resonance += mp.power(1j, n) * mp.power(-1j * mp.mpc(z), m) / (mp.factorial(n) * mp.factorial(m))
    prefactor = mp.exp(1j * (beta + 1) * angle)
    return prefactor * (unit + tail) + resonance * angle * 1j, (unit_err + tail_err) * float(abs(prefactor))


def _split(params: Params, z: complex, rho: float) -> Tuple[mp.mpc, float]:
    """[0, rho] on the real axis, the arc |t| = rho, then the rotated ray"""
    alpha, beta = _mp_params(params)
    zz = mp.mpc(z)
    unit, unit_err = _fp_unit(params, mp.mpc(0, 1), -1j * zz)

    def segment(t):
        return mp.power(t, beta) * mp.exp(1j * mp.power(t, alpha) - 1j * zz * t)

    def segment_frequency(t: float) -> float:
        return abs(params.alpha * t ** (params.alpha - 1.0) - z.real) + 1.0

    seg, seg_err = _quad(segment, _pieces(1.0, rho, segment_frequency, max_step=0.5))

    r = mp.mpf(rho)
    end = float(mp.pi / (2 * alpha))

    def arc(eta):
        t = r * mp.exp(1j * eta)
        return 1j * t * mp.power(t, beta) * mp.exp(1j * mp.power(t, alpha) - 1j * zz * t)

    def arc_frequency(eta: float) -> float:
        return params.alpha * rho ** params.alpha + rho * abs(z) + 1.0

    arc_value, arc_err = _quad(arc, _pieces(0.0, end, arc_frequency, max_step=end / 8.0))

    angle = mp.pi / (2 * alpha)
    w = -1j * zz * mp.exp(1j * angle)
    ray, ray_err = _ray_tail(params, mp.mpf(-1), w, rho)
    prefactor = mp.exp(1j * (beta + 1) * angle)
    return (unit + seg + arc_value + prefactor * ray,
            unit_err + seg_err + arc_err + ray_err * float(abs(prefactor)))


def oracle_eval(params: Params, z: complex, tol: Optional[float] = None) -> QuadResult:
    """
    Reference value of F_{alpha,beta}(z) by a method independent of ``evaluate``.

    Args:
        params: Validated (alpha, beta)
        z: Evaluation point; Im z < 0 uses the defining integral
        tol: Required accuracy, absolute below |F| = 1 and relative above

    Raises:
        QuadratureError: If the error estimate exceeds tol
    """
    z = complex(z)
    tol = _DEFAULT_TOL if tol is None else tol
    base = NUMERICS_CONFIG["oracle_dps"]

    if z.imag < 0:
        method, envelope = "direct", 0.0
    else:
        rho = _split_radius(params, z)
        env_half = _log_peak(params, z, _ray_path(params, z, 0.0))
        env_split = _log_peak(params, z, _split_path(params, z, rho))
        method, envelope = ("rotated", env_half) if env_half <= env_split else ("split", env_split)

    dps = base + int(math.ceil(envelope / math.log(10.0)))
    with mp.workdps(dps):
        if method == "direct":
            value, error = _direct(params, z)
        elif method == "rotated":
            value, error = _rotated(params, z)
        else:
            value, error = _split(params, z, rho)
        result = complex(value)

    logger.debug(f"oracle F({z}) = {result} +- {error:.2e} via {method} at {dps} digits")
    if not error <= tol * max(1.0, abs(result)):
        logger.error(f"Oracle tolerance not met at z={z}: error {error:.2e} > {tol:.2e}")
        raise QuadratureError(f"oracle error {error:.2e} exceeds tolerance {tol:.2e} at z={z}",
                              value=result, abs_err=error)
    return QuadResult(value=result, abs_err=error, n_evals=0)
