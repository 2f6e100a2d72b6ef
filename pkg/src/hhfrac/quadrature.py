"""Adaptive Gauss-Kronrod quadrature with analytic removal of power-law endpoint singularities.

The integrand callables receive a 1-D ``numpy`` array of nodes and may
return either an array of the same shape or a scalar (broadcast).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import DomainError, QuadratureError

Integrand = Callable[[np.ndarray], "np.ndarray | float"]

# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 constants).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])  # ascending, 15 nodes
_KWEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GWEIGHTS = np.zeros(15)
_GWEIGHTS[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and refinement budget shared by every numeric integral."""

    max_subdivisions: int = 2**20
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")

    def tightened(self, factor: float = 10.0) -> "QuadratureSpec":
        return replace(self, abs_tol=self.abs_tol / factor, rel_tol=self.rel_tol / factor)


DEFAULT_QUAD = QuadratureSpec()


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    panels: int

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(self.value + other.value, self.error + other.error,
                          self.panels + other.panels)

    def scaled(self, factor: float) -> "QuadResult":
        return QuadResult(self.value * factor, self.error * abs(factor), self.panels)


def _eval(f: Integrand, x: np.ndarray) -> np.ndarray:
    y = np.asarray(f(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    return y


def _gk15(f: Integrand, lo: float, hi: float) -> tuple[float, float]:
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    y = _eval(f, mid + half * _NODES)
    if not np.all(np.isfinite(y)):
        raise DomainError(f"integrand is not finite on [{lo}, {hi}]")
    k = half * float(_KWEIGHTS @ y)
    g = half * float(_GWEIGHTS @ y)
    return k, abs(k - g)


def integrate(f: Integrand, lo: float, hi: float, spec: QuadratureSpec = DEFAULT_QUAD) -> QuadResult:
    """Integrate ``f`` over ``[lo, hi]`` by globally adaptive bisection.

    The panel with the largest Gauss/Kronrod discrepancy is split until the
    summed estimate meets ``abs_tol`` or ``rel_tol``. Raises QuadratureError
    once ``max_subdivisions`` panels are in use.
    """
    lo, hi = float(lo), float(hi)
    if lo == hi:
        return QuadResult(0.0, 0.0, 0)
    if lo > hi:
        r = integrate(f, hi, lo, spec)
        return QuadResult(-r.value, r.error, r.panels)

    val, err = _gk15(f, lo, hi)
    heap = [(-err, lo, hi, val)]
    frozen_val = 0.0
    frozen_err = 0.0
    total_val, total_err = val, err
    panels = 1
    while True:
        if total_err <= max(spec.abs_tol, spec.rel_tol * abs(total_val)):
            break
        if not heap:
            break
        if panels >= spec.max_subdivisions:
            raise QuadratureError(
                f"integral over [{lo}, {hi}] not converged with {panels} panels",
                estimate=total_err, value=total_val)
        neg_err, a, b, v = heapq.heappop(heap)
        m = 0.5 * (a + b)
        if not (a < m < b):
            # Panel is at floating-point resolution; keep its contribution as is.
            frozen_val += v
            frozen_err -= neg_err
            continue
        v1, e1 = _gk15(f, a, m)
        v2, e2 = _gk15(f, m, b)
        heapq.heappush(heap, (-e1, a, m, v1))
        heapq.heappush(heap, (-e2, m, b, v2))
        panels += 1
        total_val += v1 + v2 - v
        total_err += e1 + e2 + neg_err
        if panels % 64 == 0:
            total_val = math.fsum(item[3] for item in heap) + frozen_val
            total_err = math.fsum(-item[0] for item in heap) + frozen_err
    if heap or frozen_err:
        total_val = math.fsum(item[3] for item in heap) + frozen_val
        total_err = math.fsum(-item[0] for item in heap) + frozen_err
    if total_err > max(spec.abs_tol, spec.rel_tol * abs(total_val)):
        raise QuadratureError(f"integral over [{lo}, {hi}] hit floating-point resolution",
                              estimate=total_err, value=total_val)
    return QuadResult(total_val, total_err, panels)


def integrate_endpoint_power(h: Integrand, lo: float, hi: float, exponent: float,
                             at: str = "lo", spec: QuadratureSpec = DEFAULT_QUAD) -> QuadResult:
    """Integrate ``(t - lo)^(exponent-1) h(t)`` (``at="lo"``) or ``(hi - t)^(exponent-1) h(t)``.

    The range is first mapped onto [0, 1]. For ``exponent < 1`` the substitution
    ``s = u^exponent`` then turns the weight into the constant ``1/exponent``
    and leaves the bounded ``h`` to integrate; otherwise the weight is
    integrated directly.
    """
    if not exponent > 0:
        raise DomainError(f"endpoint exponent must be positive, got {exponent!r}")
    if at not in ("lo", "hi"):
        raise ValueError("at must be 'lo' or 'hi'")
    width = hi - lo
    # Work on the unit interval, t = lo + width*u (or hi - width*u), so the
    # tolerances apply to an O(|h|) quantity whatever the interval width.
    if at == "lo":
        hu = lambda u: _eval(h, np.minimum(lo + width * u, hi))
    else:
        hu = lambda u: _eval(h, np.maximum(hi - width * u, lo))
    if exponent >= 1.0:
        r = integrate(lambda u: u ** (exponent - 1.0) * hu(u), 0.0, 1.0, spec)
        return r.scaled(width**exponent)
    # s = u^exponent turns the weight into the constant 1/exponent.
    inv = 1.0 / exponent
    return integrate(lambda s: hu(s**inv), 0.0, 1.0, spec).scaled(width**exponent * inv)


def integrate_jacobi(g: Integrand, lam: float, mu: float,
                     spec: QuadratureSpec = DEFAULT_QUAD) -> QuadResult:
    """Integrate ``t^(lam-1) (1-t)^(mu-1) g(t)`` over ``[0, 1]`` for ``lam, mu > 0``."""
    left = integrate_endpoint_power(lambda t: (1.0 - t) ** (mu - 1.0) * _eval(g, t),
                                    0.0, 0.5, lam, "lo", spec)
    right = integrate_endpoint_power(lambda t: t ** (lam - 1.0) * _eval(g, t),
                                     0.5, 1.0, mu, "hi", spec)
    return left + right
