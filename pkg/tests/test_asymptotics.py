# Asymptotic expansion tests
import cmath
import math

import numpy as np
import pytest

from core.asymptotics import (case1_terms, case2_saddle, case2_terms, evaluate_expansion, expansion_for_angle,
                              lower_ray_terms, real_axis_terms, saddle_bracket, saddle_brackets, stationary_saddle)
from core.errors import ParameterError, SeriesError
from core.evaluator import evaluate
from core.series import default_order
from models.params import Params


def test_case1_leading_coefficient():
    """c_0 = e^{-i(theta + pi/2)} for beta = 0 and any alpha"""
    for alpha in (1.5, 2.0, 3.0):
        theta = -0.7
        e = case1_terms(Params.build(alpha, 0.0), theta, 2)
        assert e.algebraic_terms[0].c == pytest.approx(cmath.exp(-1j * (theta + math.pi / 2.0)))
        assert e.algebraic_terms[0].exponent == pytest.approx(1.0)


def test_case1_pure_laplace_ray(gaussian):
    e = case1_terms(gaussian, -math.pi / 2.0, 3)
    assert e.algebraic_terms[0].c == pytest.approx(1.0)
    value = evaluate_expansion(e, 50.0, 1)
    assert value.value == pytest.approx(0.02)
    assert value.next_term_magnitude == pytest.approx(2.0 / 125000.0)


def test_case1_log_term(resonant):
    theta = -1.0
    e = case1_terms(resonant, theta, 2)
    assert len(e.log_terms) == 1
    assert e.log_terms[0].coefficient == pytest.approx(1.0)
    assert e.log_terms[0].power_m == 0
    assert e.log_terms[0].shift == pytest.approx((theta + math.pi / 2.0) * 1j)


def test_case1_rejects_angles_outside_the_sector(gaussian):
    with pytest.raises(ParameterError):
        case1_terms(gaussian, 0.2, 2)


def test_expansion_with_no_terms(gaussian, resonant):
    assert evaluate_expansion(case1_terms(gaussian, -1.0, 2), 10.0, 0).value == 0
    e = case1_terms(resonant, -math.pi / 2.0, 2)
    # only the log term: -(log R + 0)
    assert evaluate_expansion(e, 10.0, 0).value == pytest.approx(-math.log(10.0))


def test_evaluate_expansion_arguments(gaussian):
    e = case1_terms(gaussian, -1.0, 2)
    with pytest.raises(ParameterError):
        evaluate_expansion(e, 0.0, 1)
    with pytest.raises(ParameterError):
        evaluate_expansion(e, 10.0, 3)
    assert math.isnan(evaluate_expansion(e, 10.0, 2).next_term_magnitude)


def test_case2_gaussian_constants(gaussian):
    """eta2 = 0 at theta = pi/4: growth e^{R^2/4}, no algebraic prefactor, leading modulus sqrt(pi)"""
    e = case2_terms(gaussian, math.pi / 4.0, 3)
    part = e.exp_part
    assert part.growth_coeff == pytest.approx(0.25)
    assert part.growth_power == pytest.approx(2.0)
    assert part.power_exponent == pytest.approx(0.0)
    assert abs(part.phase_const * part.d_terms[0]) == pytest.approx(math.sqrt(math.pi))


def test_case2_matches_complete_the_square(gaussian):
    """F_{2,0}(z) = e^{-i z^2/4} int e^{i (t - z/2)^2} dt: leading term sqrt(pi) e^{i pi/4} e^{-i z^2/4}"""
    for theta in (0.3, math.pi / 4.0, 1.2):
        e = case2_terms(gaussian, theta, 1)
        part = e.exp_part
        radius = 3.0
        z = cmath.rect(radius, theta)
        leading = part.phase_const * part.d_terms[0] * cmath.exp(part.growth_coeff * radius ** 2)
        assert leading == pytest.approx(math.sqrt(math.pi) * cmath.exp(0.25j * math.pi - 0.25j * z * z), rel=1e-12)


@pytest.mark.parametrize("radius, bound", [(6.0, 0.02), (9.0, 0.005)])
def test_case2_leading_term_ratio(gaussian, radius, bound):
    e = case2_terms(gaussian, math.pi / 4.0, 1)
    approx = evaluate_expansion(e, radius, 1)
    value = evaluate(gaussian, cmath.rect(radius, math.pi / 4.0)).value
    assert abs(value / approx.value - 1.0) <= bound


def test_case2_rejects_angles_outside_the_sector(gaussian):
    with pytest.raises(ParameterError):
        case2_terms(gaussian, -0.1, 2)


def test_saddle_bracket_leading_closed_form():
    """bracket_0 = zeta0^beta / psi'(zeta0)"""
    rng = np.random.default_rng(3)
    for _ in range(100):
        alpha = rng.uniform(1.3, 4.0)
        beta = complex(rng.uniform(-2.0, 2.0), rng.uniform(-1.0, 1.0))
        params = Params.build(alpha, beta)
        theta = rng.uniform(0.05, math.pi - math.pi / alpha - 0.05)
        sd = case2_saddle(params, theta, default_order(1))
        bracket = saddle_bracket(sd, beta, 0)
        # psi'(zeta0)^2 = h''(zeta0)/2, branch with Im(psi' * direction) > 0
        second = 2.0 * sd.h_series[2]
        slope = cmath.sqrt(second / 2.0)
        if (slope * sd.direction).imag <= 0:
            slope = -slope
        expected = cmath.exp(beta * cmath.log(sd.zeta0)) / slope
        assert abs(bracket - expected) <= 1e-12 * max(1.0, abs(expected))


def test_real_axis_bracket_gaussian(gaussian):
    sd = stationary_saddle(gaussian, default_order(2))
    assert saddle_bracket(sd, 0.0, 0) == pytest.approx(1.0, abs=1e-12)


def test_brackets_need_enough_order(gaussian):
    sd = stationary_saddle(gaussian, 6)
    with pytest.raises(SeriesError):
        saddle_brackets(sd, 0.0, 2)


def test_real_axis_gaussian_terms(gaussian):
    e = real_axis_terms(gaussian, 1)
    assert e.algebraic_terms[0].c == pytest.approx(-1j)
    assert e.exp_part.d_terms[0] == pytest.approx(cmath.exp(0.25j * math.pi) * math.sqrt(math.pi))
    assert e.exp_part.growth_coeff == pytest.approx(-0.25j)


def test_real_axis_leading_behaviour_decays(gaussian):
    """|F(x) - (-i/x) - e^{i pi/4} sqrt(pi) e^{-i x^2/4}| decays at least like x^{-2}"""
    e = real_axis_terms(gaussian, 1)
    xs = [20.0, 30.0, 45.0, 67.0]
    errors = [abs(evaluate(gaussian, x).value - evaluate_expansion(e, x, 1).value) for x in xs]
    slope = np.polyfit(np.log(xs), np.log(errors), 1)[0]
    assert slope <= -2.0 + 0.1


def test_lower_ray_terms(gaussian):
    e = lower_ray_terms(gaussian, 1)
    assert e.theta == pytest.approx(math.pi / 2.0)
    assert e.algebraic_terms[0].c == pytest.approx(cmath.exp(1j * (math.pi / 2.0 + math.pi / 2.0)))
    assert e.exp_part.growth_coeff.imag > 0
    assert abs(e.exp_part.d_terms[0]) == pytest.approx(math.sqrt(math.pi))


def test_stokes_continuity_across_the_real_axis():
    params = Params.build(2.5, 0.3)
    below = case1_terms(params, -1e-6, 3)
    on_axis = real_axis_terms(params, 3)
    for a, b in zip(below.algebraic_terms, on_axis.algebraic_terms):
        assert abs(a.c - b.c) <= 1e-5 * abs(b.c)
    above = case2_terms(params, 1e-6, 2).exp_part
    assert above.growth_coeff == pytest.approx(on_axis.exp_part.growth_coeff, abs=1e-5)
    assert above.power_exponent == pytest.approx(on_axis.exp_part.power_exponent)


def test_near_boundary_flag(gaussian):
    assert case1_terms(gaussian, -1e-4, 1).near_boundary
    assert not case1_terms(gaussian, -1.0, 1).near_boundary


def test_expansion_for_angle_dispatch(gaussian):
    assert expansion_for_angle(gaussian, -1.0, 2).case_tag == "sector1"
    assert expansion_for_angle(gaussian, 0.5, 2).case_tag == "sector2"
    assert expansion_for_angle(gaussian, 0.0, 2).case_tag == "ray_pos_real"
    assert expansion_for_angle(gaussian, math.pi / 2.0, 2).case_tag == "ray_lower"
    # -pi is inside the canonical window on the Case 1 side
    assert expansion_for_angle(gaussian, -math.pi, 2).case_tag == "sector1"


def test_overflowing_exponential_part(gaussian):
    e = case2_terms(gaussian, math.pi / 4.0, 1)
    value = evaluate_expansion(e, 60.0, 1)
    assert value.overflow and value.value is None
    assert value.log_exp_part.real == pytest.approx(900.0 + 0.5 * math.log(math.pi), rel=1e-12)
