# Parameter model and resonance tests
import math

import numpy as np
import pytest

from core.errors import ParameterError
from core.resonance import all_resonances, beta_residue, is_resonant, resonances, subtraction_set
from models.params import EvalPoint, Params, canonical_angle, to_complex


def test_params_derive_kappa():
    params = Params.build(3.0, (0.5, 1.0))
    assert params.kappa == pytest.approx(0.5)
    assert params.beta == 0.5 + 1.0j


@pytest.mark.parametrize("alpha", [1.0, 0.5, float("nan"), float("inf")])
def test_params_reject_alpha(alpha):
    with pytest.raises(ParameterError, match="alpha"):
        Params.build(alpha, 0.0)


def test_params_are_frozen(gaussian):
    with pytest.raises(Exception):
        gaussian.alpha = 3.0


@pytest.mark.parametrize("value, expected", [
    (2, 2 + 0j),
    ("1.5,-2", 1.5 - 2j),
    ("3", 3 + 0j),
    ([0.0, 1.0], 1j),
    ({"re": 1.0, "im": 2.0}, 1 + 2j),
])
def test_to_complex(value, expected):
    assert to_complex(value) == expected


def test_to_complex_rejects_garbage():
    with pytest.raises(ValueError):
        to_complex("1,2,3")


def test_canonical_angle_window():
    alpha = 2.0
    upper = math.pi - math.pi / alpha
    assert canonical_angle(0.3, alpha) == 0.3
    assert canonical_angle(upper, alpha) == upper
    # the lower end is open: -pi - pi/alpha maps to pi - pi/alpha
    assert canonical_angle(-math.pi - math.pi / alpha, alpha) == pytest.approx(upper)
    assert canonical_angle(upper + 0.1, alpha) == pytest.approx(upper + 0.1 - 2.0 * math.pi)


@pytest.mark.parametrize("alpha", [1.1, 2.0, 3.7])
def test_canonical_angle_is_idempotent(alpha):
    rng = np.random.default_rng(11)
    upper = math.pi - math.pi / alpha
    for angle in rng.uniform(-40.0, 40.0, 500):
        once = canonical_angle(float(angle), alpha)
        assert upper - 2.0 * math.pi < once <= upper
        assert canonical_angle(once, alpha) == once


def test_eval_point_from_polar():
    point = EvalPoint.from_polar(2.0, 2.0 * math.pi + 0.25, 3.0)
    assert point.angle == pytest.approx(0.25)
    assert point.z == pytest.approx(2.0 * complex(math.cos(0.25), math.sin(0.25)))


@pytest.mark.parametrize("alpha, beta, expected", [
    (2.0, -1.0, [(0, 0)]),
    (2.0, -3.0, [(0, 2), (1, 0)]),
    (1.5, 0.0, []),
])
def test_all_resonances(alpha, beta, expected):
    pairs = [p.as_tuple() for p in all_resonances(Params.build(alpha, beta))]
    assert pairs == expected


def test_resonance_box_and_tolerance():
    params = Params.build(2.0, -3.0 + 1e-14)
    assert [p.as_tuple() for p in resonances(params, 1, 2)] == [(0, 2), (1, 0)]
    assert is_resonant(params, 1, 0)
    assert not is_resonant(Params.build(2.0, -3.0 + 1e-6j), 1, 0)
    with pytest.raises(ValueError):
        resonances(params, -1, 0)


def test_subtraction_set_contains_resonances():
    params = Params.build(2.0, -3.0)
    subtract = subtraction_set(params)
    assert set(subtract) == {(0, 0), (0, 1), (0, 2), (1, 0)}
    assert all(p.as_tuple() in subtract for p in all_resonances(params))


def test_subtraction_set_empty_above_minus_one():
    assert subtraction_set(Params.build(2.0, -0.5)) == []
    assert subtraction_set(Params.build(2.0, -1.0)) == [(0, 0)]


@pytest.mark.parametrize("alpha, beta, z, expected", [
    (2.0, -1.0, 0.7 - 0.3j, 1.0),
    (2.0, -3.0, 0.5 + 1.0j, 1j - (0.5 + 1.0j) ** 2 / 2.0),
    (1.5, -2.5, 2.0, 1j),
    (2.0, -0.5, 1.0, 0.0),
])
def test_beta_residue(alpha, beta, z, expected):
    assert beta_residue(Params.build(alpha, beta), z) == pytest.approx(expected, abs=1e-15)
