"""test asymptotics"""
import logging

import numpy as np
import numpy.testing as npt
import pytest

import bessel_zeros.asymptotics as tested
from bessel_zeros.electrostatics import newton_solve
from bessel_zeros.exceptions import IndexOutOfRangeError, SingularArgumentError
from bessel_zeros.utils import Provenance, ZeroSet

LIMIT_POINT = -1.50888


def test_w_function():
    npt.assert_allclose(tested.w_function(1e6) * 1e6, np.e / 2, rtol=1e-5)
    npt.assert_allclose(abs(tested.w_function(LIMIT_POINT)), 1, atol=1e-4)
    npt.assert_allclose(abs(tested.w_function(-1j)), 1, rtol=1e-15)
    assert isinstance(tested.w_function(-2.0), complex)
    assert tested.w_function([-1.0, -2.0]).shape == (2,)
    with pytest.raises(SingularArgumentError):
        tested.w_function(0)
    with pytest.raises(SingularArgumentError):
        tested.w_function([-1.0, 0.0])


def test_w_function_conjugation():
    rng = np.random.default_rng(0)
    z = -rng.uniform(0.01, 5.0, 10**4) + 1j * rng.uniform(-5.0, 5.0, 10**4)
    npt.assert_allclose(tested.w_function(np.conj(z)), np.conj(tested.w_function(z)), rtol=1e-12)


def test_gamma_distance():
    assert tested.gamma_distance(LIMIT_POINT) <= 1e-4
    npt.assert_allclose(tested.gamma_distance(-10.0), 0.8637, rtol=1e-3)


def test_gamma_sample():
    sample = tested.gamma_sample(LIMIT_POINT)
    assert sample.on_curve
    assert not sample.arg_violation
    assert sample.abs_w >= 0

    mirrored = tested.gamma_sample(-LIMIT_POINT)
    assert mirrored.arg_violation
    assert not mirrored.on_curve
    npt.assert_allclose(mirrored.abs_w, sample.abs_w)

    assert not tested.gamma_sample(-10.0).on_curve


def test_arg_constraint_violations(caplog):
    assert tested.arg_constraint_violations(newton_solve(50)) == []

    zeros = ZeroSet(3, np.array([-0.5 - 0.5j, 0.1, -0.5 + 0.5j]), Provenance.APPROX)
    with caplog.at_level(logging.WARNING):
        assert tested.arg_constraint_violations(zeros) == [2]
    assert "violate" in caplog.text


def test_limit_defect_curve():
    degrees = [50, 100, 200, 400]
    curve = tested.limit_defect_curve(1, degrees)
    assert [n for n, _ in curve] == degrees
    scaled = [value for _, value in curve]
    assert all(0 <= value < 3 for value in scaled)
    defects = [value / n for n, value in curve]
    assert defects[-1] < defects[0] / 4


def test_limit_defect_curve_with_solved_zeros():
    degrees = [50, 100]
    zero_sets = {n: newton_solve(n) for n in degrees}
    curve = tested.limit_defect_curve(1, degrees, zero_sets)
    for n, value in curve:
        assert 0 <= value / n < 0.1
    assert curve != tested.limit_defect_curve(1, degrees)


def test_limit_defect_curve_errors():
    with pytest.raises(IndexOutOfRangeError):
        tested.limit_defect_curve(60, [50, 100])
