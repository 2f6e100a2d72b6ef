"""Gamma, Beta and the Gauss hypergeometric function on the real line.

Only the regimes needed by the bound constants are supported: positive
arguments for Gamma/Beta, and ``c > b > 0``, ``|z| < 1`` for 2F1.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

from .errors import ConvergenceError, DomainError

__all__ = ["Hyp2F1Args", "gamma_fn", "beta_fn", "hyp2f1", "hyp2f1_series"]

# Largest x with a finite double-precision Gamma(x).
_GAMMA_OVERFLOW = 171.6243769563027

SERIES_REL_TOL = 1e-16
SERIES_QUIET_TERMS = 3
SERIES_MAX_TERMS = 10_000


class Hyp2F1Args(NamedTuple):
    a: float
    b: float
    c: float
    z: float

    def validate(self) -> None:
        if not (self.c > self.b > 0):
            raise DomainError(f"2F1 needs c > b > 0, got b={self.b!r}, c={self.c!r}")
        if not abs(self.z) < 1:
            raise DomainError(f"2F1 needs |z| < 1, got z={self.z!r}")


def gamma_fn(x: float) -> float:
    """Euler Gamma function for ``x > 0``.

    Raises DomainError for ``x <= 0`` and OverflowError once the result no
    longer fits in a double.
    """
    x = float(x)
    if not x > 0:
        raise DomainError(f"gamma_fn needs x > 0, got {x!r}")
    if x > _GAMMA_OVERFLOW:
        raise OverflowError(f"Gamma({x}) exceeds the double-precision range")
    return math.gamma(x)


def beta_fn(x: float, y: float) -> float:
    """Beta function ``Gamma(x) Gamma(y) / Gamma(x + y)`` for positive arguments."""
    x, y = float(x), float(y)
    if not (x > 0 and y > 0):
        raise DomainError(f"beta_fn needs x, y > 0, got ({x!r}, {y!r})")
    if x + y < _GAMMA_OVERFLOW:
        return math.gamma(x) * math.gamma(y) / math.gamma(x + y)
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def hyp2f1_series(a: float, b: float, c: float, z: float) -> float:
    """Sum the defining power series of 2F1 directly.

    Summation stops once ``SERIES_QUIET_TERMS`` consecutive terms are below
    ``SERIES_REL_TOL`` times the partial sum (or a term vanishes exactly,
    which happens for terminating series).
    """
    term = 1.0
    total = 1.0
    quiet = 0
    for n in range(SERIES_MAX_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        if term == 0.0:
            return total
        if abs(term) < SERIES_REL_TOL * abs(total):
            quiet += 1
            if quiet >= SERIES_QUIET_TERMS:
                return total
        else:
            quiet = 0
    n = SERIES_MAX_TERMS
    ratio = abs((a + n) * (b + n) / ((c + n) * (n + 1)) * z)
    tail = abs(term) * ratio / (1.0 - ratio) if ratio < 1 else math.inf
    raise ConvergenceError(
        f"2F1({a}, {b}; {c}; {z}) series did not settle in {SERIES_MAX_TERMS} terms",
        estimate=tail / max(abs(total), math.ulp(0.0)),
        value=total,
    )


@lru_cache(maxsize=65536)
def _hyp2f1_cached(a: float, b: float, c: float, z: float) -> float:
    if z == 0.0:
        return 1.0
    if z > 0.0:
        # All terms share one sign once n > -a, so direct summation is stable.
        return hyp2f1_series(a, b, c, z)
    # Pfaff: F(a,b;c;z) = (1-z)^-a F(a, c-b; c; z/(z-1)); maps (-1, 0) into (0, 1/2).
    w = z / (z - 1.0)
    return (1.0 - z) ** (-a) * hyp2f1_series(a, c - b, c, w)


def hyp2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric function 2F1(a, b; c; z) for real ``c > b > 0``, ``|z| < 1``.

    Non-negative ``z`` is summed directly; negative ``z`` goes through the
    Pfaff transformation so the summed series always has a positive argument
    below 1/2.
    """
    args = Hyp2F1Args(float(a), float(b), float(c), float(z))
    args.validate()
    return _hyp2f1_cached(*args)
