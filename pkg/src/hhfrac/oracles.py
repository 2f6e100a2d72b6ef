"""Direct numerical integrals that each closed-form constant is supposed to equal (or dominate).

These never touch :func:`hhfrac.specfun.hyp2f1`; they integrate the defining
weights with adaptive quadrature so the two routes stay independent.
"""

from __future__ import annotations

import numpy as np

from .fracint import Interval
from .quadrature import QuadratureSpec, integrate

# Relative accuracy matters here: several constants are as small as 1e-5.
DEFAULT_QUAD = QuadratureSpec(abs_tol=1e-15, rel_tol=1e-11)


def _a_t(iv: Interval):
    a, b = iv.a, iv.b
    return lambda t: t * b + (1.0 - t) * a


def _on_unit(g, quad: QuadratureSpec, split: bool = False) -> float:
    if split:
        return integrate(g, 0.0, 0.5, quad).value + integrate(g, 0.5, 1.0, quad).value
    return integrate(g, 0.0, 1.0, quad).value


def c1_integral(theta, iv, quad=DEFAULT_QUAD) -> float:
    A = _a_t(iv)
    return _on_unit(lambda t: ((1 - t) ** theta + t**theta) / A(t) ** 2, quad)


def c2_integral(theta, alpha, iv, quad=DEFAULT_QUAD) -> float:
    A = _a_t(iv)
    return _on_unit(lambda t: ((1 - t) ** theta + t**theta) * t**alpha / A(t) ** 2, quad)


def c3_integral(theta, alpha, iv, quad=DEFAULT_QUAD) -> float:
    A = _a_t(iv)
    return _on_unit(lambda t: ((1 - t) ** theta + t**theta) * (1 - t**alpha) / A(t) ** 2, quad)


def c4_integral(theta, iv, quad=DEFAULT_QUAD) -> float:
    A = _a_t(iv)
    return _on_unit(lambda t: np.abs((1 - t) ** theta - t**theta) / A(t) ** 2, quad, split=True)


def c5_integral(theta, alpha, iv, quad=DEFAULT_QUAD) -> float:
    A = _a_t(iv)
    return _on_unit(lambda t: np.abs((1 - t) ** theta - t**theta) * t**alpha / A(t) ** 2,
                    quad, split=True)


def c6_integral(theta, alpha, iv, quad=DEFAULT_QUAD) -> float:
    A = _a_t(iv)
    return _on_unit(lambda t: np.abs((1 - t) ** theta - t**theta) * (1 - t**alpha) / A(t) ** 2,
                    quad, split=True)


def k1_integral(theta, p, iv, quad=DEFAULT_QUAD) -> float:
    a, b = iv.a, iv.b
    return _on_unit(lambda u: u ** (theta * p) / (u * a + (1 - u) * b) ** (2 * p), quad)


def k2_integral(theta, p, iv, quad=DEFAULT_QUAD) -> float:
    a, b = iv.a, iv.b
    return _on_unit(lambda u: (1 - u) ** (theta * p) / (u * a + (1 - u) * b) ** (2 * p), quad)


def weighted_power_integrals(alpha, q, iv, quad=DEFAULT_QUAD) -> tuple[float, float]:
    """``int t^alpha / A_t^2q`` and ``int (1 - t^alpha) / A_t^2q`` over [0, 1]."""
    A = _a_t(iv)
    head = _on_unit(lambda t: t**alpha / A(t) ** (2 * q), quad)
    tail = _on_unit(lambda t: (1 - t**alpha) / A(t) ** (2 * q), quad)
    return head, tail


def half_interval_integrals(theta, p, iv, quad=DEFAULT_QUAD) -> tuple[float, float]:
    A = _a_t(iv)
    tp = theta * p
    left = integrate(lambda t: (1 - 2 * t) ** tp / A(t) ** (2 * p), 0.0, 0.5, quad).value
    right = integrate(lambda t: (2 * t - 1) ** tp / A(t) ** (2 * p), 0.5, 1.0, quad).value
    return left, right


def lambda_integrals(iv, quad=DEFAULT_QUAD) -> tuple[float, float, float]:
    A = _a_t(iv)
    w = lambda t: np.abs(1 - 2 * t) / A(t) ** 2
    return (_on_unit(w, quad, split=True),
            _on_unit(lambda t: w(t) * t, quad, split=True),
            _on_unit(lambda t: w(t) * (1 - t), quad, split=True))


def mu_integrals(iv, q, quad=DEFAULT_QUAD) -> tuple[float, float]:
    A = _a_t(iv)
    return (_on_unit(lambda t: t / A(t) ** (2 * q), quad),
            _on_unit(lambda t: (1 - t) / A(t) ** (2 * q), quad))

