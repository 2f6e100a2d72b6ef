import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sci_integrate
from scipy import special

from hhfrac.errors import ConvergenceError, DomainError
from hhfrac.specfun import Hyp2F1Args, beta_fn, gamma_fn, hyp2f1, hyp2f1_series

from _oracles import euler_2f1, log_2f1, rel_err

pos = st.floats(min_value=1e-3, max_value=20.0, allow_nan=False)


def test_gamma_small_integers():
    assert gamma_fn(1) == 1.0
    assert gamma_fn(5) == 24.0


def test_gamma_half_against_integral():
    value, _ = sci_integrate.quad(lambda t: math.exp(-t) / math.sqrt(t), 0, math.inf, epsabs=1e-14)
    assert gamma_fn(0.5) == pytest.approx(1.7724538509055160, rel=1e-15)
    assert rel_err(gamma_fn(0.5), value) < 1e-10
    assert rel_err(gamma_fn(0.5), math.sqrt(math.pi)) < 1e-15


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_gamma_rejects_nonpositive(x):
    with pytest.raises(DomainError):
        gamma_fn(x)


def test_gamma_overflow():
    with pytest.raises(OverflowError):
        gamma_fn(200.0)


def test_beta_examples():
    assert beta_fn(1, 1) == 1.0
    assert beta_fn(2, 3) == pytest.approx(1 / 12, rel=1e-15)
    value, _ = sci_integrate.quad(lambda t: t * (1 - t) ** 2, 0, 1)
    assert rel_err(beta_fn(2, 3), value) < 1e-12


def test_beta_large_arguments_use_log_route():
    assert rel_err(beta_fn(100.0, 90.0), math.exp(special.betaln(100.0, 90.0))) < 1e-11


@given(pos, pos)
def test_beta_symmetric(x, y):
    assert beta_fn(x, y) == pytest.approx(beta_fn(y, x), rel=1e-14)


@given(pos, pos)
def test_beta_gamma_relation(x, y):
    assert rel_err(beta_fn(x, y) * gamma_fn(x + y), gamma_fn(x) * gamma_fn(y)) < 1e-12


def test_hyp2f1_examples():
    assert hyp2f1(3.0, 2.0, 4.0, 0.0) == 1.0
    assert hyp2f1(1, 1, 2, 0.5) == pytest.approx(1.3862943611198906, rel=1e-14)
    assert hyp2f1(1, 1, 2, -0.9999999) == pytest.approx(log_2f1(-0.9999999), rel=1e-10)


def test_hyp2f1_log_closed_form():
    for z in (-0.95, -0.5, -0.1, 0.1, 0.5, 0.8, 0.95, 0.99):
        assert rel_err(hyp2f1(1, 1, 2, z), log_2f1(z)) < 1e-12


def test_hyp2f1_at_minus_one_boundary_rejected():
    with pytest.raises(DomainError):
        hyp2f1(1, 1, 2, -1.0)


@pytest.mark.parametrize("args", [(1, 0, 2, 0.1), (1, 2, 2, 0.1), (1, 1, 2, 1.0), (1, 1, 2, float("nan"))])
def test_hyp2f1_rejects_outside_regime(args):
    with pytest.raises(DomainError):
        hyp2f1(*args)


def test_args_validate():
    Hyp2F1Args(1.0, 1.0, 2.0, 0.3).validate()
    with pytest.raises(DomainError):
        Hyp2F1Args(1.0, 2.0, 1.0, 0.3).validate()


def test_series_reports_nonconvergence():
    with pytest.raises(ConvergenceError) as info:
        hyp2f1_series(1.0, 1.0, 2.0, 0.9999999)
    assert info.value.value is not None
    assert info.value.estimate > 0


def test_terminating_series():
    # a = -2: 1 + 2*(-2)*z/... terminates after three terms.
    assert hyp2f1(-2.0, 1.0, 2.0, 0.5) == pytest.approx(1 - 0.5 + 0.25 / 3, rel=1e-15)


def test_matches_scipy_on_constant_arguments():
    for a, b, c, z in [(2, 1.5, 2.5, 0.5), (4, 3.5, 4.5, 0.75), (2.5, 1, 3.2, 0.6), (8, 5, 6, -0.6)]:
        assert rel_err(hyp2f1(a, b, c, z), special.hyp2f1(a, b, c, z)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.floats(-3, 8), st.floats(0.1, 5), st.floats(0.1, 5), st.floats(-0.95, 0.95))
def test_euler_integral_consistency(a, b, gap, z):
    assert rel_err(hyp2f1(a, b, b + gap, z), euler_2f1(a, b, b + gap, z)) < 1e-8


@settings(max_examples=60, deadline=None)
@given(st.floats(-3, 8), st.floats(0.1, 5), st.floats(0.1, 5), st.floats(-0.5, 0.5))
def test_series_agrees_with_integral_near_origin(a, b, gap, z):
    assert rel_err(hyp2f1_series(a, b, b + gap, z), euler_2f1(a, b, b + gap, z)) < 1e-10


@given(st.floats(-5, 5), st.floats(0.01, 5), st.floats(0.01, 5))
def test_value_at_zero_is_one(a, b, gap):
    assert hyp2f1(a, b, b + gap, 0.0) == 1.0
