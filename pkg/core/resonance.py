# Resonance detection and the finite-part subtraction set
import logging
import math
from typing import List, Tuple

from models.params import Params, ResonancePair

logger = logging.getLogger(__name__)

# Slack on the defining inequality m + n*alpha + Re(beta) <= -1 so that
# resonant pairs always fall inside the subtraction set.
_SET_SLACK = 1e-12


def resonances(params: Params, max_n: int, max_m: int) -> List[ResonancePair]:
    """
    Enumerate the pairs (n, m) in [0, max_n] x [0, max_m] with
    |beta + n*alpha + m + 1| < eps_resonance, sorted lexicographically

    Raises:
        ValueError: If max_n or max_m is negative
    """
    if max_n < 0 or max_m < 0:
        raise ValueError("max_n and max_m must be nonnegative")

    pairs = []
    for n in range(max_n + 1):
        for m in range(max_m + 1):
            if abs(params.beta + n * params.alpha + m + 1) < params.eps_resonance:
                pairs.append(ResonancePair(n=n, m=m))
    return pairs


def subtraction_set(params: Params) -> List[Tuple[int, int]]:
    """
    Pairs (n, m) with m + n*alpha + Re(beta) <= -1: the Taylor terms that
    are removed near the origin by the finite-part regularization
    """
    bound = -1.0 - params.beta.real + _SET_SLACK
    if bound < 0:
        return []

    pairs = []
    for n in range(int(math.floor(bound / params.alpha)) + 1):
        for m in range(int(math.floor(bound - n * params.alpha)) + 1):
            pairs.append((n, m))
    return pairs


def is_resonant(params: Params, n: int, m: int) -> bool:
    return abs(params.beta + n * params.alpha + m + 1) < params.eps_resonance


def all_resonances(params: Params) -> List[ResonancePair]:
    """Every resonant pair; they all lie inside the subtraction set"""
    bound = -1.0 - params.beta.real + _SET_SLACK
    if bound < 0:
        return []
    max_n = int(math.floor(bound / params.alpha))
    return resonances(params, max_n, int(math.floor(bound)))


def beta_residue(params: Params, z: complex) -> complex:
    """
    Residue at beta of the meromorphic map beta -> F_{alpha,beta}(z).

    The poles sit at beta = -n*alpha - m - 1; each pair resonant there
    contributes its Taylor coefficient i^n (-i z)^m / (n! m!). Zero when
    beta is not a pole.
    """
    total = 0j
    for pair in all_resonances(params):
        n, m = pair.as_tuple()
        total += 1j ** n * (-1j * z) ** m / (math.factorial(n) * math.factorial(m))
    return total
