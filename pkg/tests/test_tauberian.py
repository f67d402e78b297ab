# Tauberian example tests
import cmath
import math

import numpy as np
import pytest
from scipy import integrate, special

from core.errors import ParameterError
from core.evaluator import evaluate
from core.tauberian import (extremal_remainder, laplace_at_zero, mueger_closed_form, mueger_main_term, mueger_mellin,
                            mueger_s, predicted_remainder_slope, remainder_main_term, tau, tau_partial_integral)
from models.params import Params
from models.results import TauberianCase

PLAIN = TauberianCase(kappa=1.0)
SMOOTHED = TauberianCase(kappa=2.0, smoothed=True)
GAUSSIAN_AT_ZERO = 0.5 * math.sqrt(math.pi) * cmath.exp(0.25j * math.pi)


def test_tau_values():
    assert tau(PLAIN, 2.0) == pytest.approx(cmath.exp(4j))
    assert tau(SMOOTHED, 2.0) == 0j
    assert abs(tau(SMOOTHED, 10.0)) == pytest.approx(1.0)


def test_partial_integral_is_a_fresnel_integral():
    assert tau_partial_integral(PLAIN, 0.0).value == 0j
    # int_0^x e^{i t^2} dt = sqrt(pi/2) (C + i S)(x sqrt(2/pi))
    x = 10.0
    fresnel_s, fresnel_c = special.fresnel(x * math.sqrt(2.0 / math.pi))
    expected = math.sqrt(math.pi / 2.0) * complex(fresnel_c, fresnel_s)
    assert tau_partial_integral(PLAIN, x, tol=1e-13).value == pytest.approx(expected, abs=1e-9)


def test_partial_integral_rejects_negative_x():
    with pytest.raises(ParameterError):
        tau_partial_integral(PLAIN, -1.0)


def test_laplace_at_zero_is_the_transform_at_zero():
    expected = 0.5 * math.sqrt(math.pi) * cmath.exp(0.25j * math.pi)
    assert laplace_at_zero(PLAIN).value == pytest.approx(expected, abs=1e-10)


def test_smoothed_laplace_at_zero_matches_partial_integrals():
    """The smoothed tail beyond x is of size x^{-1/kappa} log^{1/kappa} x"""
    limit = laplace_at_zero(SMOOTHED).value
    x = 400.0
    partial = tau_partial_integral(SMOOTHED, x).value
    assert abs(partial - limit) <= 3.0 * math.log(x) ** 0.5 / x ** 0.5


def test_remainder_main_term():
    assert abs(remainder_main_term(PLAIN, 100.0)) == pytest.approx(0.005)
    x = 100.0
    expected = math.log(x) ** 0.5 / (1.5 * x ** 0.5)
    assert abs(remainder_main_term(SMOOTHED, x)) == pytest.approx(expected)


def test_predicted_remainder_slopes():
    assert predicted_remainder_slope(PLAIN) == pytest.approx(-3.0)
    assert predicted_remainder_slope(TauberianCase(kappa=2.0)) == pytest.approx(-2.0)
    assert predicted_remainder_slope(SMOOTHED) == pytest.approx(-0.5)


def test_extremal_remainder_slope():
    """After the first integration-by-parts term the residual is about 1/(4 x^3)"""
    report = extremal_remainder(PLAIN, [5.0, 10.0, 20.0, 40.0, 80.0])
    assert [row.x for row in report.rows] == [5.0, 10.0, 20.0, 40.0, 80.0]
    assert report.fitted_slope == pytest.approx(-3.0, abs=0.2)
    assert report.predicted_slope == pytest.approx(-3.0)
    assert report.rows[-1].abs_residual == pytest.approx(0.25 / 80.0 ** 3, rel=0.2)


def test_extremal_remainder_rejects_grids():
    with pytest.raises(ParameterError):
        extremal_remainder(PLAIN, [2.0, 1.0])
    with pytest.raises(ParameterError):
        extremal_remainder(SMOOTHED, [2.0, 10.0])


def test_mueger_s_small_values():
    assert mueger_s(2.0, 1.0) == 0.0
    expected, _ = integrate.quad(lambda v: math.exp(v) * (1.0 + math.cos(v * v)), 0.0, 1.0)
    assert mueger_s(2.0, math.e) == pytest.approx(expected, rel=1e-10)
    with pytest.raises(ParameterError):
        mueger_s(2.0, 0.5)


@pytest.mark.parametrize("x", [math.exp(5.0), math.exp(6.0), math.exp(7.0)])
def test_mueger_main_term(x):
    """S(x) - main term is O(x / log^{2(alpha-1)} x)"""
    log_x = math.log(x)
    assert abs(mueger_s(2.0, x) - mueger_main_term(2.0, x)) <= x / log_x ** 2


def test_mueger_closed_form_on_the_real_axis():
    forward = evaluate(Params.build(2.0, 0.0), -1j).value
    assert mueger_closed_form(2.0, 2.0) == pytest.approx(0.5 + forward.real / 2.0, abs=1e-12)


def test_mueger_mellin_at_two():
    comparison = mueger_mellin(2.0, 2.0)
    assert comparison.difference <= 1e-6
    assert comparison.numeric_abs_err < 1e-6


@pytest.mark.slow
@pytest.mark.parametrize("s", [1.5 + 1.0j, 3.0 - 2.0j])
def test_mueger_mellin_off_axis(s):
    assert mueger_mellin(2.0, s).difference <= 1e-6


def test_mueger_mellin_arguments():
    with pytest.raises(ParameterError):
        mueger_mellin(2.0, 1.0 + 1.0j)
    with pytest.raises(ParameterError):
        mueger_mellin(1.0, 2.0)


def test_extremal_remainder_slope_kappa_two():
    report = extremal_remainder(TauberianCase(kappa=2.0), [10.0, 20.0, 40.0, 80.0, 160.0])
    assert report.fitted_slope == pytest.approx(-2.0, abs=0.2)


@pytest.mark.parametrize("x, bound", [(math.exp(3.0), 0.10), (math.exp(4.0), 0.03)])
def test_mueger_main_term_relative_error(x, bound):
    main = mueger_main_term(2.0, x)
    assert abs(mueger_s(2.0, x) - main) / abs(main) <= bound


def test_mueger_s_is_nonnegative_and_nondecreasing():
    values = [mueger_s(2.0, math.exp(v)) for v in np.linspace(0.0, 5.0, 41)]
    assert values[0] == 0.0
    assert all(value >= 0.0 for value in values)
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_mueger_closed_form_near_the_pole():
    """After the pole 1/(s-1) is removed the closed form tends to -1 + Re F_{2,0}(0)"""
    limit = -1.0 + GAUSSIAN_AT_ZERO.real
    gaps = [abs(mueger_closed_form(2.0, 1.0 + eps) - 1.0 / eps - limit) for eps in (1e-1, 1e-2, 1e-3, 1e-4)]
    assert gaps[-1] < 1e-3
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


@pytest.mark.parametrize("kappa, xs", [
    (0.5, [4.0, 6.0, 9.0, 13.0, 20.0]),
    (1.0, [5.0, 10.0, 20.0, 40.0, 80.0]),
    (2.0, [10.0, 20.0, 40.0, 80.0, 160.0]),
])
def test_scaled_remainder_is_bounded(kappa, xs):
    """rho(x) x^{1+2/kappa} approaches the second integration-by-parts constant, 2/9 or 1/4"""
    report = extremal_remainder(TauberianCase(kappa=kappa), xs)
    scaled = [row.abs_residual * row.x ** (1.0 + 2.0 / kappa) for row in report.rows]
    assert all(0.1 < value < 0.5 for value in scaled)
    assert report.fitted_slope == pytest.approx(-1.0 - 2.0 / kappa, abs=0.2)


def test_smoothed_remainder():
    """What is left after the main term decays like log^{1/kappa - 1}(x) / x^{1/kappa}"""
    xs = [25.0, 50.0, 100.0, 200.0, 400.0]
    report = extremal_remainder(SMOOTHED, xs)
    assert report.predicted_slope == pytest.approx(-0.5)
    assert report.fitted_slope == pytest.approx(-0.5, abs=0.25)
    scaled = [row.abs_residual * row.x ** 0.5 * math.log(row.x) ** 0.5 for row in report.rows]
    assert max(scaled) / min(scaled) < 1.5
