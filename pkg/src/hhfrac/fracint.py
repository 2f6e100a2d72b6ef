"""Riemann-Liouville integrals and the harmonic Hermite-Hadamard functional.

The functional ``I_f(theta; a, b)`` compares the endpoint mean of ``f`` with a
symmetrised fractional average of ``f(1/x)`` over ``[1/b, 1/a]``; every bound
in :mod:`hhfrac.bounds` is an upper estimate of ``|I_f|``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError
from .quadrature import DEFAULT_QUAD, QuadratureSpec, QuadResult, integrate, integrate_endpoint_power
from .specfun import gamma_fn

Evaluator = Callable[[np.ndarray], "np.ndarray | float"]


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not (0 < self.a < self.b):
            raise DomainError(f"interval needs 0 < a < b, got [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a

    def contains(self, lo: float, hi: float) -> bool:
        return self.a <= lo and hi <= self.b


@dataclass(frozen=True, eq=False)
class TestFunction:
    """A named function with its exact derivative, defined on ``domain``.

    ``f`` and ``f_prime`` take and return numpy arrays. ``claimed_classes``
    is descriptive metadata only; membership is always re-certified.
    """

    __test__ = False  # not a pytest class

    name: str
    f: Evaluator
    f_prime: Evaluator
    domain: Interval
    claimed_classes: tuple[str, ...] = field(default_factory=tuple)

    def __call__(self, x):
        return _as_array(self.f, x)

    def derivative(self, x):
        return _as_array(self.f_prime, x)

    def derivative_mismatch(self, step: float = 1e-5, samples: int = 41) -> float:
        """Largest gap between ``f_prime`` and a centred difference of ``f`` on a grid."""
        lo, hi = self.domain.a + step, self.domain.b - step
        x = np.linspace(lo, hi, samples)
        fd = (self(x + step) - self(x - step)) / (2.0 * step)
        return float(np.max(np.abs(fd - self.derivative(x))))


def _as_array(fn: Evaluator, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    y = np.asarray(fn(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape).copy()
    return y


def _check_order(theta: float) -> float:
    theta = float(theta)
    if not theta > 0:
        raise DomainError(f"fractional order must be positive, got {theta!r}")
    return theta


def rl_left_result(theta: float, a: float, x: float, fn: Evaluator,
                   quad: QuadratureSpec = DEFAULT_QUAD) -> QuadResult:
    theta = _check_order(theta)
    if not (x > a >= 0):
        raise DomainError(f"left Riemann-Liouville integral needs x > a >= 0, got a={a}, x={x}")
    r = integrate_endpoint_power(lambda t: _as_array(fn, t), a, x, theta, "hi", quad)
    return r.scaled(1.0 / gamma_fn(theta))


def rl_right_result(theta: float, b: float, x: float, fn: Evaluator,
                    quad: QuadratureSpec = DEFAULT_QUAD) -> QuadResult:
    theta = _check_order(theta)
    if not x < b:
        raise DomainError(f"right Riemann-Liouville integral needs x < b, got x={x}, b={b}")
    r = integrate_endpoint_power(lambda t: _as_array(fn, t), x, b, theta, "lo", quad)
    return r.scaled(1.0 / gamma_fn(theta))


def rl_left(theta: float, a: float, x: float, fn: Evaluator,
            quad: QuadratureSpec = DEFAULT_QUAD, *, zero_order_convention: bool = False) -> float:
    """Left-sided integral ``(1/Gamma(theta)) int_a^x (x-t)^(theta-1) fn(t) dt``.

    Order zero is rejected unless ``zero_order_convention`` is set, in which
    case ``fn(x)`` is returned.
    """
    if theta == 0 and zero_order_convention:
        return float(_as_array(fn, np.array([x]))[0])
    return rl_left_result(theta, a, x, fn, quad).value


def rl_right(theta: float, b: float, x: float, fn: Evaluator,
             quad: QuadratureSpec = DEFAULT_QUAD, *, zero_order_convention: bool = False) -> float:
    """Right-sided integral ``(1/Gamma(theta)) int_x^b (t-x)^(theta-1) fn(t) dt``."""
    if theta == 0 and zero_order_convention:
        return float(_as_array(fn, np.array([x]))[0])
    return rl_right_result(theta, b, x, fn, quad).value


def _check_support(iv: Interval, fn: TestFunction) -> None:
    if not fn.domain.contains(iv.a, iv.b):
        raise DomainError(f"{fn.name} is defined on [{fn.domain.a}, {fn.domain.b}], "
                          f"which does not cover [{iv.a}, {iv.b}]")


def fractional_mean_result(theta: float, iv: Interval, fn: TestFunction,
                           quad: QuadratureSpec = DEFAULT_QUAD) -> QuadResult:
    """The middle term of the fractional Hermite-Hadamard sandwich, with diagnostics."""
    theta = _check_order(theta)
    _check_support(iv, fn)
    a, b = iv.a, iv.b
    fog = lambda t: fn(1.0 / t)
    upper = rl_right_result(theta, 1.0 / a, 1.0 / b, fog, quad)
    lower = rl_left_result(theta, 1.0 / b, 1.0 / a, fog, quad)
    scale = 0.5 * gamma_fn(theta + 1.0) * (a * b / (b - a)) ** theta
    return (upper + lower).scaled(scale)


def i_f_result(theta: float, iv: Interval, fn: TestFunction,
               quad: QuadratureSpec = DEFAULT_QUAD) -> QuadResult:
    mid = fractional_mean_result(theta, iv, fn, quad)
    ends = 0.5 * float(fn(iv.a) + fn(iv.b))
    return QuadResult(ends - mid.value, mid.error, mid.panels)


def i_f(theta: float, iv: Interval, fn: TestFunction, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Endpoint mean of ``fn`` minus its fractional harmonic mean over ``iv``."""
    return i_f_result(theta, iv, fn, quad).value


def lemma_rhs_result(theta: float, iv: Interval, fn: TestFunction,
                     quad: QuadratureSpec = DEFAULT_QUAD) -> QuadResult:
    theta = _check_order(theta)
    _check_support(iv, fn)
    a, b = iv.a, iv.b

    def integrand(t):
        den = t * a + (1.0 - t) * b
        return (t ** theta - (1.0 - t) ** theta) / den**2 * fn.derivative(a * b / den)

    return integrate(integrand, 0.0, 1.0, quad).scaled(0.5 * a * b * (b - a))


def lemma_rhs(theta: float, iv: Interval, fn: TestFunction, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Derivative-side expression for ``I_f``: a kernel-weighted integral of ``f'`` over [0, 1]."""
    return lemma_rhs_result(theta, iv, fn, quad).value


def classical_mean(iv: Interval, fn: TestFunction, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """``ab/(b-a) * int_a^b f(x)/x^2 dx``, the order-one fractional mean."""
    _check_support(iv, fn)
    r = integrate(lambda x: fn(x) / x**2, iv.a, iv.b, quad)
    return iv.a * iv.b / (iv.b - iv.a) * r.value


class Sandwich(NamedTuple):
    left: float
    mid: float
    right: float

    def slacks(self) -> tuple[float, float]:
        return self.mid - self.left, self.right - self.mid


def hh_sandwich(theta: float, iv: Interval, fn: TestFunction,
                quad: QuadratureSpec = DEFAULT_QUAD) -> Sandwich:
    """Harmonic-mean value, fractional mean and endpoint mean of ``fn`` on ``iv``.

    No ordering is enforced here; the three values are ordered whenever
    ``fn`` is harmonically convex.
    """
    a, b = iv.a, iv.b
    mid = fractional_mean_result(theta, iv, fn, quad).value
    left = float(fn(2.0 * a * b / (a + b)))
    right = 0.5 * float(fn(a) + fn(b))
    return Sandwich(left, mid, right)
