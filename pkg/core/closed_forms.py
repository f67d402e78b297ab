"""
Closed forms of F_{alpha,beta} where the integral reduces to a classical
special function, computed in mpmath:

    F_{2,0}(z) = (sqrt(pi)/2) e^{i pi/4} e^{-i z^2/4} erfc(i e^{i pi/4} z / 2)
               = e^{i pi/4} sqrt(pi) e^{-i z^2/4} - (sqrt(pi)/2) e^{i pi/4} e^{-i z^2/4} erfc(-i e^{i pi/4} z / 2)
    F_{3,0}(z) = pi e^{i pi/6} 3^{-1/3} Hi(-i e^{i pi/6} z / 3^{1/3})      (Scorer's Hi)
    F_{alpha,beta}(0) = e^{i pi (beta+1)/(2 alpha)} Gamma((beta+1)/alpha) / alpha

All three follow from turning the contour onto the ray at angle pi/(2 alpha).
"""
import logging
from typing import Callable, Dict

import mpmath as mp

from core.errors import ParameterError
from core.resonance import all_resonances
from models.params import Params

logger = logging.getLogger(__name__)

_DPS = 30


def gaussian_closed_form(z: complex) -> complex:
    """F_{2,0}(z), with the entire erfc"""
    with mp.workdps(_DPS):
        rotation = mp.expjpi(mp.mpf(1) / 4)
        zz = mp.mpc(z)
        value = mp.sqrt(mp.pi) / 2 * rotation * mp.exp(-1j * zz * zz / 4) * mp.erfc(1j * rotation * zz / 2)
        return complex(value)


def cubic_closed_form(z: complex) -> complex:
    """F_{3,0}(z) through Scorer's function Hi"""
    with mp.workdps(_DPS):
        rotation = mp.expjpi(mp.mpf(1) / 6)
        scale = mp.cbrt(3)
        value = mp.pi * rotation / scale * mp.scorerhi(-1j * rotation * mp.mpc(z) / scale)
        return complex(value)


_CLOSED_FORMS: Dict[float, Callable[[complex], complex]] = {
    2.0: gaussian_closed_form,
    3.0: cubic_closed_form,
}


def has_closed_form(params: Params) -> bool:
    return params.beta == 0 and params.alpha in _CLOSED_FORMS


def closed_form(params: Params, z: complex) -> complex:
    """
    F_{alpha,beta}(z) for (alpha, beta) = (2, 0) or (3, 0)

    Raises:
        ParameterError: For any other parameters
    """
    if not has_closed_form(params):
        raise ParameterError(f"no closed form for alpha={params.alpha}, beta={params.beta}")
    return _CLOSED_FORMS[params.alpha](complex(z))


def value_at_zero(params: Params) -> complex:
    """
    F_{alpha,beta}(0), the analytic continuation in beta of the rotated
    gamma integral

    Raises:
        ParameterError: At a resonance, where (beta+1)/alpha is a pole of Gamma
    """
    if any(pair.m == 0 for pair in all_resonances(params)):
        raise ParameterError(f"F(0) is a finite part at the resonant beta={params.beta}")
    with mp.workdps(_DPS):
        alpha = mp.mpf(params.alpha)
        shifted = mp.mpc(params.beta.real, params.beta.imag) + 1
        value = mp.exp(1j * mp.pi * shifted / (2 * alpha)) * mp.gamma(shifted / alpha) / alpha
        return complex(value)
