import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hhfrac.convexity import (DEFAULT_SEED, HARMONIC, ConvexityClass, certify, evaluate_inequality,
                              power_abs_derivative, sample_triples)
from hhfrac.errors import DomainError
from hhfrac.fracint import Interval
from hhfrac.harness import corpus, corpus_by_name

IV = Interval(1.0, 4.0)
identity = lambda x: x


def test_identity_is_harmonically_convex():
    res = certify(identity, ConvexityClass.harmonic(), IV)
    assert res.passed
    assert res.max_violation <= 0
    assert res.witness is None
    assert res.seed == DEFAULT_SEED


def test_negation_fails_with_valid_witness():
    res = certify(lambda x: -x, ConvexityClass.harmonic(), IV)
    assert res.status == "fail"
    x, y, t = res.witness
    assert IV.a <= x <= IV.b and IV.a <= y <= IV.b and 0 < t < 1 and x != y
    again = evaluate_inequality(lambda x: -x, ConvexityClass.harmonic(), x, y, t)
    assert abs(again - res.max_violation) <= 1e-12
    assert res.max_violation > 0


def test_constant_fails_sub_unit_m():
    res = certify(lambda x: np.ones_like(x), ConvexityClass.harmonic_alpha_m(1.0, 0.5), Interval(1.0, 2.0))
    assert res.status == "fail"
    assert res.max_violation == pytest.approx(0.5, abs=1e-15)
    assert res.witness[2] == 0.0


def test_certification_is_deterministic():
    a = certify(lambda x: -x, ConvexityClass.harmonic(), IV)
    b = certify(lambda x: -x, ConvexityClass.harmonic(), IV)
    assert a == b
    c = certify(lambda x: -x, ConvexityClass.harmonic(), IV, seed=7)
    assert c.seed == 7 and c.status == "fail"


def test_sample_design():
    x, y, t = sample_triples(IV, 100, 1)
    assert x.size == 17**3 + 100
    assert {1.0, 4.0} <= set(x[:17**3]) and {0.0, 1.0} <= set(t[:17**3])
    np.testing.assert_array_equal(x[17**3:17**3 + 50], y[17**3 + 50:])


def test_class_validation():
    with pytest.raises(DomainError):
        ConvexityClass("starshaped")
    with pytest.raises(DomainError):
        ConvexityClass.harmonic_alpha_m(1.5, 1.0)
    with pytest.raises(DomainError):
        ConvexityClass.harmonic_alpha_m(1.0, 0.0)
    with pytest.raises(DomainError):
        ConvexityClass(HARMONIC, 0.5, 1.0)


def test_alpha_zero_is_noted():
    res = certify(lambda x: x, ConvexityClass.harmonic_alpha_m(0.0, 1.0), IV)
    assert any("0**0" in n for n in res.notes)


def test_skipped_points_make_result_inconclusive():
    res = certify(corpus_by_name()["identity"], ConvexityClass.alpha_m(1.0, 0.5), Interval(0.1, 1.0))
    assert res.skipped > 0
    assert res.status == "inconclusive"


def test_empty_domain_after_clipping():
    with pytest.raises(DomainError):
        certify(corpus_by_name()["identity"], ConvexityClass.harmonic(), Interval(20, 30))


def test_alpha_m_convexity_of_square():
    assert certify(lambda x: x**2, ConvexityClass.alpha_m(0.5, 0.5), Interval(0.0 + 1e-9, 3.0)).passed


def test_power_abs_derivative_examples():
    hs = corpus_by_name()["half_square"]
    x = np.linspace(0.1, 10, 7)
    np.testing.assert_allclose(power_abs_derivative(hs, 1)(x), x)
    np.testing.assert_allclose(power_abs_derivative(hs, 2)(x), x**2)
    np.testing.assert_array_equal(power_abs_derivative(corpus_by_name()["constant"], 3)(x), 0.0)
    with pytest.raises(DomainError):
        power_abs_derivative(hs, 0.5)


def test_square_of_derivative_certified_on_unit_interval():
    hs = corpus_by_name()["half_square"]
    assert certify(power_abs_derivative(hs, 2), ConvexityClass.harmonic(), Interval(1, 2)).passed


functions = st.sampled_from([lambda x: x, lambda x: -x, lambda x: x**2, lambda x: 1 / x, lambda x: -np.log(x),
                             lambda x: np.sin(3 * x), lambda x: np.ones_like(x)])
domains = st.tuples(st.floats(0.2, 3.0), st.floats(0.1, 4.0)).map(lambda t: Interval(t[0], t[0] + t[1]))


@settings(max_examples=40, deadline=None)
@given(functions, domains, st.integers(0, 2**32 - 1))
def test_specialisation_consistency(f, dom, seed):
    general = certify(f, ConvexityClass.harmonic_alpha_m(1.0, 1.0), dom, 2000, seed)
    special = certify(f, ConvexityClass.harmonic(), dom, 2000, seed)
    assert general.status == special.status
    # Same inequality, parametrised by t and 1 - t respectively.
    assert general.max_violation == pytest.approx(special.max_violation, rel=1e-12, abs=1e-15)


@settings(max_examples=40, deadline=None)
@given(functions, domains, st.sampled_from([ConvexityClass.harmonic(), ConvexityClass.harmonic_alpha_m(0.5, 0.75)]))
def test_witness_reproduces_violation(f, dom, cls):
    res = certify(f, cls, dom, 2000, 3)
    if res.status == "fail":
        assert abs(evaluate_inequality(f, cls, *res.witness) - res.max_violation) <= 1e-12


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["half_square", "identity", "cube_third"]),
       st.sampled_from([np.exp, lambda u: u**2, lambda u: np.maximum(u - 2, 0), lambda u: 3 * u + 1]),
       domains)
def test_convex_nondecreasing_composition_is_closed(name, phi, dom):
    fn = corpus_by_name()[name]
    assert certify(fn, ConvexityClass.harmonic(), dom, 2000).passed
    assert certify(lambda x: phi(fn(x)), ConvexityClass.harmonic(), dom, 2000).passed


@pytest.mark.parametrize("fn", corpus(), ids=lambda f: f.name)
def test_corpus_derivative_powers_harmonically_convex(fn):
    for q in (1, 1.5, 2, 3):
        assert certify(power_abs_derivative(fn, q), ConvexityClass.harmonic(), Interval(0.5, 4),
                       fn_domain=fn.domain).passed
