# Gamma functions: complex gamma and the finite-part gamma
import cmath
import logging
import math
import warnings
from typing import Optional

from api.config import NUMERICS_CONFIG
from core.errors import GammaOverflowWarning, ParameterError

logger = logging.getLogger(__name__)

EULER_GAMMA = 0.57721566490153286061

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
# log of the largest double
_LOG_MAX = 709.78


def _nonpositive_integer(w: complex, eps: float) -> Optional[int]:
    """Return k if w is within eps of -k (k >= 0), None otherwise"""
    k = round(w.real)
    if k <= 0 and abs(w - k) < eps:
        return -k
    return None


def _sinpi(w: complex) -> complex:
    """sin(pi*w) with the integer part removed exactly"""
    k = round(w.real)
    s = cmath.sin(math.pi * (w - k))
    return -s if k % 2 else s


def _log_gamma_lanczos(w: complex) -> complex:
    """log Gamma(w) for Re w >= 0.5"""
    w = w - 1.0
    acc = complex(_LANCZOS_COEFFS[0])
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (w + i)
    t = w + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (w + 0.5) * cmath.log(t) - t + cmath.log(acc)


def log_complex_gamma(w: complex) -> complex:
    """
    Principal-ish logarithm of Gamma(w) (imaginary part not unwrapped)

    Raises:
        ParameterError: At the poles w = 0, -1, -2, ...
    """
    w = complex(w)
    if _nonpositive_integer(w, NUMERICS_CONFIG["eps_resonance"]) is not None:
        raise ParameterError(f"Gamma has a pole at {w}")
    if w.real < 0.5:
        # Reflection: Gamma(w) Gamma(1-w) = pi / sin(pi w)
        return math.log(math.pi) - cmath.log(_sinpi(w)) - _log_gamma_lanczos(1.0 - w)
    return _log_gamma_lanczos(w)


def complex_gamma(w: complex) -> complex:
    """
    Euler gamma function on the complex plane.

    Lanczos rational approximation (g=7, n=9) for Re w >= 0.5 and the
    reflection formula below. Values are assembled in log space so that
    large arguments do not overflow intermediate terms.

    Args:
        w: Argument, not a nonpositive integer

    Returns:
        Gamma(w), or an infinite value (with a GammaOverflowWarning) when
        |Gamma(w)| exceeds the double range

    Raises:
        ParameterError: At the poles w = 0, -1, -2, ...
    """
    log_value = log_complex_gamma(w)
    if log_value.real > _LOG_MAX:
        warnings.warn(f"Gamma({w}) overflows a double", GammaOverflowWarning, stacklevel=2)
        logger.warning(f"Gamma overflow at w={w}")
        return complex(math.inf, 0.0)
    return cmath.exp(log_value)


def gamma_star(w: complex) -> complex:
    """
    Finite-part gamma function.

    Equals Gamma(w) off the nonpositive integers; at w = -k it is the
    Hadamard finite part of the integral of e^{-t} t^{-k-1} over (0, inf),
    i.e. (-1)^k/k! (-gamma + H_k).
    """
    w = complex(w)
    k = _nonpositive_integer(w, NUMERICS_CONFIG["eps_resonance"])
    if k is None:
        return complex_gamma(w)
    harmonic = math.fsum(1.0 / j for j in range(1, k + 1))
    return complex((-1) ** k / math.factorial(k) * (harmonic - EULER_GAMMA))


def half_integer_gamma(n: int) -> float:
    """Gamma(n + 1/2) for n >= 0"""
    value = math.sqrt(math.pi)
    for j in range(n):
        value *= j + 0.5
    return value
