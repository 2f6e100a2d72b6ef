"""Closed-form constants and right-hand sides of the fractional Hermite-Hadamard bounds.

Every constant is an integral over ``[0, 1]`` of a weight against
``A_t^-2`` (or ``A_t^-2p``, ``A_t^-2q``) with ``A_t = t b + (1 - t) a``, written
in terms of 2F1 at ``z = 1 - a/b`` or ``w = +-(b - a)/(b + a)``. The direct
integrals live in :mod:`hhfrac.oracles`.

Theorem identifiers:

* ``"2"``, ``"3"``: classical (order-one) bounds for harmonically convex ``|f'|^q``.
* ``"5"``, ``"6"``: power-mean bounds, ``q >= 1``; ``"6"`` needs ``theta <= 1``.
* ``"7"``, ``"8"``, ``"9"``: Hoelder bounds, ``q > 1``; ``"8"`` and ``"9"`` need ``theta <= 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegenerateIntervalError, DomainError
from .fracint import Interval
from .specfun import beta_fn, hyp2f1

MIN_WIDTH = 1e-6

THEOREMS = ("2", "3", "5", "6", "7", "8", "9")
FRACTIONAL_THEOREMS = ("5", "6", "7", "8", "9")


@dataclass(frozen=True)
class BoundConstants:
    name: str
    value: float
    pieces: dict[str, float] = field(default_factory=dict)

    def __float__(self) -> float:
        return self.value

    def as_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "pieces": dict(self.pieces)}


@dataclass(frozen=True)
class ParamSet:
    """One evaluation point ``(theta, alpha, m, [a, b], q)``; ``p`` is the Hoelder conjugate of ``q``."""

    theta: float
    alpha: float
    m: float
    a: float
    b: float
    q: float = 1.0

    def __post_init__(self):
        if not self.theta > 0:
            raise DomainError(f"theta must be positive, got {self.theta}")
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not 0.0 < self.m <= 1.0:
            raise DomainError(f"m must lie in (0, 1], got {self.m}")
        if not self.q >= 1.0:
            raise DomainError(f"q must be at least 1, got {self.q}")
        Interval(self.a, self.b)

    @property
    def iv(self) -> Interval:
        return Interval(self.a, self.b)

    @property
    def p(self) -> float | None:
        return self.q / (self.q - 1.0) if self.q > 1.0 else None


def _check_iv(iv: Interval) -> tuple[float, float]:
    if iv.b - iv.a < MIN_WIDTH:
        raise DegenerateIntervalError(
            f"interval [{iv.a}, {iv.b}] is narrower than {MIN_WIDTH:g}; constants are degenerate")
    return iv.a, iv.b


def _check_lemma_order(theta: float) -> None:
    if not 0.0 < theta <= 1.0:
        raise DomainError(f"this constant needs 0 < theta <= 1, got theta={theta}")


def _conjugate(q: float) -> float:
    if not q > 1.0:
        raise DomainError(f"q must exceed 1 for a finite Hoelder conjugate, got {q}")
    return q / (q - 1.0)


def check_preconditions(theorem: str, ps: ParamSet) -> None:
    """Raise DomainError unless ``ps`` meets the stated hypotheses of ``theorem``."""
    if theorem not in THEOREMS:
        raise DomainError(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREMS)}")
    _check_iv(ps.iv)
    if theorem in ("2", "3") and (ps.theta, ps.alpha, ps.m) != (1.0, 1.0, 1.0):
        raise DomainError(f"theorem {theorem} is the theta = alpha = m = 1 case")
    if theorem in ("3", "7", "8", "9"):
        _conjugate(ps.q)
    if theorem in ("6", "8", "9"):
        _check_lemma_order(ps.theta)


# -- classical constants ------------------------------------------------------

def lambda_consts(iv: Interval) -> tuple[float, float, float]:
    """``(lambda1, lambda2, lambda3)`` of the classical power-mean bound."""
    a, b = _check_iv(iv)
    d = b - a
    # ln((a+b)^2 / 4ab) == log1p((b-a)^2 / 4ab) exactly.
    log_ratio = math.log1p(d * d / (4.0 * a * b))
    l1 = 1.0 / (a * b) - 2.0 / d**2 * log_ratio
    l2 = -1.0 / (b * d) + (3.0 * a + b) / d**3 * log_ratio
    l3 = 1.0 / (a * d) - (3.0 * b + a) / d**3 * log_ratio
    return l1, l2, l3


def _mu_raw(a: float, b: float, q: float) -> tuple[float, float]:
    d = b - a
    den = 2.0 * d**2 * (1.0 - q) * (1.0 - 2.0 * q)
    mu1 = (a ** (2 - 2 * q) + b ** (1 - 2 * q) * (d * (1 - 2 * q) - a)) / den
    mu2 = (b ** (2 - 2 * q) - a ** (1 - 2 * q) * (d * (1 - 2 * q) + b)) / den
    return mu1, mu2


def mu_consts(iv: Interval, q: float) -> tuple[float, float]:
    """``(mu1, mu2)`` of the classical Hoelder bound; needs ``q > 1``."""
    a, b = _check_iv(iv)
    _conjugate(q)
    return _mu_raw(a, b, float(q))


# -- power-mean constants -----------------------------------------------------

def c1(theta: float, iv: Interval) -> BoundConstants:
    a, b = _check_iv(iv)
    z = 1.0 - a / b
    f_up = hyp2f1(2, theta + 1, theta + 2, z)
    f_one = hyp2f1(2, 1, theta + 2, z)
    value = b**-2 / (theta + 1) * (f_up + f_one)
    return BoundConstants("C1", value, {
        "2F1(2,theta+1;theta+2;1-a/b)": f_up,
        "2F1(2,1;theta+2;1-a/b)": f_one,
    })


def c2(theta: float, alpha: float, iv: Interval) -> BoundConstants:
    a, b = _check_iv(iv)
    z = 1.0 - a / b
    beta = beta_fn(theta + 1, alpha + 1)
    f_up = hyp2f1(2, theta + 1, theta + alpha + 2, z)
    f_one = hyp2f1(2, 1, theta + alpha + 2, z)
    value = beta * b**-2 * f_up + b**-2 / (theta + alpha + 1) * f_one
    return BoundConstants("C2", value, {
        "beta(theta+1,alpha+1)": beta,
        "2F1(2,theta+1;theta+alpha+2;1-a/b)": f_up,
        "2F1(2,1;theta+alpha+2;1-a/b)": f_one,
    })


def c3(theta: float, alpha: float, iv: Interval) -> BoundConstants:
    k1, k2 = c1(theta, iv), c2(theta, alpha, iv)
    return BoundConstants("C3", k1.value - k2.value, {"C1": k1.value, "C2": k2.value})


def c4(theta: float, iv: Interval) -> BoundConstants:
    """Upper estimate of ``int |(1-t)^theta - t^theta| / A_t^2``; exact at ``theta = 1``."""
    _check_lemma_order(theta)
    a, b = _check_iv(iv)
    z = 1.0 - a / b
    w = (b - a) / (b + a)
    f_one = hyp2f1(2, 1, theta + 2, z)
    f_up = hyp2f1(2, theta + 1, theta + 2, z)
    f_mid = hyp2f1(2, theta + 1, theta + 2, w)
    value = (b**-2 / (theta + 1) * f_one - b**-2 / (theta + 1) * f_up
             + ((a + b) / 2.0) ** -2 / (theta + 1) * f_mid)
    return BoundConstants("C4", value, {
        "2F1(2,1;theta+2;1-a/b)": f_one,
        "2F1(2,theta+1;theta+2;1-a/b)": f_up,
        "2F1(2,theta+1;theta+2;(b-a)/(b+a))": f_mid,
    })


def c5(theta: float, alpha: float, iv: Interval) -> BoundConstants:
    """Upper estimate of ``int |(1-t)^theta - t^theta| t^alpha / A_t^2``."""
    _check_lemma_order(theta)
    a, b = _check_iv(iv)
    z = 1.0 - a / b
    w = (b - a) / (b + a)
    beta = beta_fn(theta + 1, alpha + 1)
    f_one = hyp2f1(2, 1, theta + alpha + 2, z)
    f_up = hyp2f1(2, theta + 1, theta + alpha + 2, z)
    f_mid = hyp2f1(2, theta + 1, theta + alpha + 2, w)
    value = (b**-2 / (theta + alpha + 1) * f_one - beta / b**2 * f_up
             + beta / ((a + b) ** 2 * 2.0 ** (alpha - 2)) * f_mid)
    return BoundConstants("C5", value, {
        "beta(theta+1,alpha+1)": beta,
        "2F1(2,1;theta+alpha+2;1-a/b)": f_one,
        "2F1(2,theta+1;theta+alpha+2;1-a/b)": f_up,
        "2F1(2,theta+1;theta+alpha+2;(b-a)/(b+a))": f_mid,
    })


def c6(theta: float, alpha: float, iv: Interval) -> BoundConstants:
    k4, k5 = c4(theta, iv), c5(theta, alpha, iv)
    return BoundConstants("C6", k4.value - k5.value, {"C4": k4.value, "C5": k5.value})


# -- Hoelder constants --------------------------------------------------------

def k_consts(theta: float, p: float, iv: Interval) -> tuple[float, float]:
    """``(K1, K2)``: integrals of ``u^(theta p)`` and ``(1-u)^(theta p)`` against ``B_u^-2p``."""
    k1, k2 = k_constants(theta, p, iv)
    return k1.value, k2.value


def k_constants(theta: float, p: float, iv: Interval) -> tuple[BoundConstants, BoundConstants]:
    a, b = _check_iv(iv)
    if not p > 1.0:
        raise DomainError(f"p must exceed 1, got {p}")
    z = 1.0 - a / b
    tp = theta * p
    f_up = hyp2f1(2 * p, tp + 1, tp + 2, z)
    f_one = hyp2f1(2 * p, 1, tp + 2, z)
    scale = b ** (-2 * p) / (tp + 1)
    return (BoundConstants("K1", scale * f_up, {"2F1(2p,theta*p+1;theta*p+2;1-a/b)": f_up}),
            BoundConstants("K2", scale * f_one, {"2F1(2p,1;theta*p+2;1-a/b)": f_one}))


def weighted_power_constants(alpha: float, q: float, iv: Interval) -> tuple[BoundConstants, BoundConstants]:
    """Integrals of ``t^alpha`` and ``1 - t^alpha`` against ``A_t^-2q``."""
    a, b = _check_iv(iv)
    z = 1.0 - a / b
    f_alpha = hyp2f1(2 * q, 1, alpha + 2, z)
    f_flat = hyp2f1(2 * q, 1, 2, z)
    scale = b ** (-2 * q)
    head = scale / (alpha + 1) * f_alpha
    tail = scale * f_flat - head
    pieces = {"2F1(2q,1;alpha+2;1-a/b)": f_alpha, "2F1(2q,1;2;1-a/b)": f_flat}
    return (BoundConstants("Q_alpha", head, dict(pieces)),
            BoundConstants("Q_complement", tail, dict(pieces)))


def half_interval_constants(theta: float, p: float, iv: Interval) -> tuple[BoundConstants, BoundConstants]:
    """Integrals of ``(1-2t)^(theta p)`` on ``[0, 1/2]`` and ``(2t-1)^(theta p)`` on ``[1/2, 1]`` against ``A_t^-2p``."""
    a, b = _check_iv(iv)
    w = (b - a) / (b + a)
    tp = theta * p
    f_plus = hyp2f1(2 * p, tp + 1, tp + 2, w)
    f_minus = hyp2f1(2 * p, tp + 1, tp + 2, -w)
    scale = (a + b) ** (-2 * p) / (2.0 ** (1 - 2 * p) * (tp + 1))
    return (BoundConstants("H_left", scale * f_plus, {"2F1(2p,theta*p+1;theta*p+2;(b-a)/(b+a))": f_plus}),
            BoundConstants("H_right", scale * f_minus, {"2F1(2p,theta*p+1;theta*p+2;(a-b)/(b+a))": f_minus}))


# -- right-hand sides ---------------------------------------------------------

def _root(x: float, q: float) -> float:
    # Clamp rounding-level negatives (e.g. C3 at alpha = 0) before the fractional power.
    return max(x, 0.0) ** (1.0 / q)


def _check_derivs(*vals: float) -> None:
    for v in vals:
        if not v >= 0:
            raise DomainError(f"derivative magnitudes must be non-negative, got {v}")


def _power_mean_bound(ps: ParamSet, k_all: float, k_a: float, k_b: float, fa: float, fbm: float) -> float:
    a, b, q = ps.a, ps.b, ps.q
    lead = 1.0 if q == 1.0 else k_all ** (1.0 - 1.0 / q)
    return 0.5 * a * b * (b - a) * lead * _root(k_a * fa**q + ps.m * k_b * fbm**q, q)


def bound_thm5(ps: ParamSet, fa: float, fbm: float) -> float:
    """Power-mean bound with the Beta/2F1 constants ``C1, C2, C3``."""
    _check_derivs(fa, fbm)
    check_preconditions("5", ps)
    k1, k2 = c1(ps.theta, ps.iv), c2(ps.theta, ps.alpha, ps.iv)
    return _power_mean_bound(ps, k1.value, k2.value, k1.value - k2.value, fa, fbm)


def bound_thm6(ps: ParamSet, fa: float, fbm: float) -> float:
    """Power-mean bound with the sharper constants ``C4, C5, C6`` (``theta <= 1``)."""
    _check_derivs(fa, fbm)
    check_preconditions("6", ps)
    k4, k5 = c4(ps.theta, ps.iv), c5(ps.theta, ps.alpha, ps.iv)
    return _power_mean_bound(ps, k4.value, k5.value, k4.value - k5.value, fa, fbm)


def _hoelder_mix(ps: ParamSet, fa: float, fbm: float) -> float:
    q = ps.q
    return _root((fa**q + ps.m * ps.alpha * fbm**q) / (ps.alpha + 1), q)


def bound_thm7(ps: ParamSet, fa: float, fbm: float) -> float:
    _check_derivs(fa, fbm)
    check_preconditions("7", ps)
    a, b, theta, p = ps.a, ps.b, ps.theta, ps.p
    z = 1.0 - a / b
    tp = theta * p
    bracket = (hyp2f1(2 * p, tp + 1, tp + 2, z) ** (1 / p)
               + hyp2f1(2 * p, 1, tp + 2, z) ** (1 / p))
    return a * (b - a) / (2 * b) * (1 / (tp + 1)) ** (1 / p) * _hoelder_mix(ps, fa, fbm) * bracket


def bound_thm8(ps: ParamSet, fa: float, fbm: float) -> float:
    _check_derivs(fa, fbm)
    check_preconditions("8", ps)
    a, b, theta, alpha, p, q = ps.a, ps.b, ps.theta, ps.alpha, ps.p, ps.q
    z = 1.0 - a / b
    f_alpha = hyp2f1(2 * q, 1, alpha + 2, z)
    f_flat = hyp2f1(2 * q, 1, 2, z)
    inner = f_alpha * fa**q + ps.m * ((alpha + 1) * f_flat - f_alpha) * fbm**q
    return (a * (b - a) / (2 * b) * (1 / (theta * p + 1)) ** (1 / p)
            * (1 / (alpha + 1)) ** (1 / q) * _root(inner, q))


def bound_thm9(ps: ParamSet, fa: float, fbm: float) -> float:
    _check_derivs(fa, fbm)
    check_preconditions("9", ps)
    a, b, theta, p = ps.a, ps.b, ps.theta, ps.p
    w = (b - a) / (b + a)
    tp = theta * p
    bracket = hyp2f1(2 * p, tp + 1, tp + 2, w) + hyp2f1(2 * p, tp + 1, tp + 2, -w)
    lead = a * b * (b - a) / (2.0 ** (1 / p - 1) * (a + b) ** 2)
    return lead * (1 / (tp + 1)) ** (1 / p) * _hoelder_mix(ps, fa, fbm) * bracket ** (1 / p)


def bound_thm2(iv: Interval, q: float, fa: float, fb: float) -> float:
    _check_derivs(fa, fb)
    if not q >= 1:
        raise DomainError(f"q must be at least 1, got {q}")
    l1, l2, l3 = lambda_consts(iv)
    lead = 1.0 if q == 1 else l1 ** (1 - 1 / q)
    return 0.5 * iv.a * iv.b * (iv.b - iv.a) * lead * _root(l2 * fa**q + l3 * fb**q, q)


def bound_thm3(iv: Interval, q: float, fa: float, fb: float) -> float:
    _check_derivs(fa, fb)
    p = _conjugate(q)
    mu1, mu2 = mu_consts(iv, q)
    return (0.5 * iv.a * iv.b * (iv.b - iv.a) * (1 / (p + 1)) ** (1 / p)
            * _root(mu1 * fa**q + mu2 * fb**q, q))


def bound(theorem: str, ps: ParamSet, fa: float, fbm: float) -> float:
    """Dispatch to the right-hand side of ``theorem``; ``fbm`` is ``|f'(b/m)|``."""
    check_preconditions(theorem, ps)
    if theorem == "2":
        return bound_thm2(ps.iv, ps.q, fa, fbm)
    if theorem == "3":
        return bound_thm3(ps.iv, ps.q, fa, fbm)
    return _DISPATCH[theorem](ps, fa, fbm)


_DISPATCH = {"5": bound_thm5, "6": bound_thm6, "7": bound_thm7, "8": bound_thm8, "9": bound_thm9}


def theorem_constants(theorem: str, ps: ParamSet) -> list[BoundConstants]:
    """The named constants a theorem's right-hand side is assembled from."""
    check_preconditions(theorem, ps)
    iv, theta, alpha = ps.iv, ps.theta, ps.alpha
    if theorem == "2":
        l1, l2, l3 = lambda_consts(iv)
        return [BoundConstants("lambda1", l1), BoundConstants("lambda2", l2), BoundConstants("lambda3", l3)]
    if theorem == "3":
        mu1, mu2 = mu_consts(iv, ps.q)
        return [BoundConstants("mu1", mu1), BoundConstants("mu2", mu2)]
    if theorem == "5":
        return [c1(theta, iv), c2(theta, alpha, iv), c3(theta, alpha, iv)]
    if theorem == "6":
        return [c4(theta, iv), c5(theta, alpha, iv), c6(theta, alpha, iv)]
    if theorem == "7":
        return list(k_constants(theta, ps.p, iv))
    if theorem == "8":
        return list(weighted_power_constants(alpha, ps.q, iv))
    return list(half_interval_constants(theta, ps.p, iv))
