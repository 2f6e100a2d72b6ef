"""Sampling-based certification of harmonic and (alpha, m) convexity.

A pass means no violation was found on a deterministic grid plus a seeded
random sample; it is evidence, not proof. A fail comes with the sample that
broke the defining inequality by the largest (scaled) margin.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError
from .fracint import Interval, TestFunction

HARMONIC = "harmonically-convex"
HARMONIC_ALPHA_M = "harmonically-alpha-m-convex"
ALPHA_M = "alpha-m-convex"
KINDS = (HARMONIC, HARMONIC_ALPHA_M, ALPHA_M)

DEFAULT_SEED = 20160501
DEFAULT_BUDGET = 10_000
GRID_POINTS = 17
SLACK_TOL = 1e-9
MAX_SKIP_FRACTION = 0.01


@dataclass(frozen=True)
class ConvexityClass:
    kind: str
    alpha: float = 1.0
    m: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown convexity class {self.kind!r}")
        if self.kind == HARMONIC and (self.alpha != 1.0 or self.m != 1.0):
            raise DomainError("harmonically-convex takes no alpha/m parameters")
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not 0.0 < self.m <= 1.0:
            raise DomainError(f"m must lie in (0, 1], got {self.m}")

    @classmethod
    def harmonic(cls) -> "ConvexityClass":
        return cls(HARMONIC)

    @classmethod
    def harmonic_alpha_m(cls, alpha: float, m: float) -> "ConvexityClass":
        return cls(HARMONIC_ALPHA_M, float(alpha), float(m))

    @classmethod
    def alpha_m(cls, alpha: float, m: float) -> "ConvexityClass":
        return cls(ALPHA_M, float(alpha), float(m))

    def label(self) -> str:
        if self.kind == HARMONIC:
            return self.kind
        return f"{self.kind}(alpha={self.alpha:g}, m={self.m:g})"


@dataclass(frozen=True)
class CertificationResult:
    """Outcome of :func:`certify`.

    ``max_violation`` is ``LHS - RHS`` at the sample whose violation, scaled
    by ``1 + |LHS|``, is largest; positive values mean the inequality broke.
    ``status`` is ``"inconclusive"`` when too many composed points fell
    outside the function's domain to trust a pass.
    """

    status: str
    samples: int
    max_violation: float
    witness: tuple[float, float, float] | None
    skipped: int = 0
    seed: int = DEFAULT_SEED
    cls: str = HARMONIC
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def power_abs_derivative(fn: TestFunction, q: float) -> Callable[[np.ndarray], np.ndarray]:
    """Return the evaluator ``x -> |f'(x)|^q``."""
    if not q >= 1:
        raise DomainError(f"q must be at least 1, got {q}")
    q = float(q)
    return lambda x: np.abs(fn.derivative(x)) ** q


def _sides(f, x, y, t, cls: ConvexityClass):
    """Composed point, LHS and RHS of the class inequality at arrays (x, y, t)."""
    if cls.kind == HARMONIC:
        # f(xy/(tx+(1-t)y)) <= t f(y) + (1-t) f(x) is the (1, 1) case with x and y exchanged.
        x, y = y, x
    alpha, m = cls.alpha, cls.m
    if cls.kind == ALPHA_M:
        point = t * x + m * (1.0 - t) * y
    else:
        # m x y / (m t y + (1-t) x), arranged so both t = 0 and t = 1 are exact.
        with np.errstate(divide="ignore"):
            point = np.where(t == 0.0, m * y, x / (t + (1.0 - t) * x / (m * y)))
    w = t**alpha  # numpy gives 0**0 == 1
    with np.errstate(all="ignore"):
        lhs = f(point)
        rhs = w * f(x) + (1.0 - w) * (m * f(y))
    return point, lhs, rhs


def evaluate_inequality(fn, cls: ConvexityClass, x: float, y: float, t: float) -> float:
    """``LHS - RHS`` of the class inequality at a single triple."""
    f = _evaluator(fn)
    _, lhs, rhs = _sides(f, np.array([x]), np.array([y]), np.array([t]), cls)
    return float(lhs[0] - rhs[0])


def _evaluator(fn):
    f = fn.f if isinstance(fn, TestFunction) else fn
    return lambda x: np.broadcast_to(np.asarray(f(x), dtype=float), np.shape(x))


def sample_triples(domain: Interval, budget: int, seed: int,
                   grid: int = GRID_POINTS) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Grid over (x, y, t) including endpoints, then seeded random triples.

    Random triples come in exchanged pairs (x, y, t), (y, x, t) so the
    sample set is symmetric in x and y.
    """
    xs = np.linspace(domain.a, domain.b, grid)
    ts = np.linspace(0.0, 1.0, grid)
    gx, gy, gt = (v.ravel() for v in np.meshgrid(xs, xs, ts, indexing="ij"))
    half = max(int(budget), 0) // 2
    rng = np.random.default_rng(seed)
    rx = rng.uniform(domain.a, domain.b, half)
    ry = rng.uniform(domain.a, domain.b, half)
    rt = rng.uniform(0.0, 1.0, half)
    x = np.concatenate([gx, rx, ry])
    y = np.concatenate([gy, ry, rx])
    t = np.concatenate([gt, rt, rt])
    return x, y, t


def certify(fn, cls: ConvexityClass, domain: Interval, budget: int = DEFAULT_BUDGET,
            seed: int = DEFAULT_SEED, fn_domain: Interval | None = None) -> CertificationResult:
    """Search for violations of ``cls``'s defining inequality for ``fn`` on ``domain``.

    ``fn`` is a :class:`TestFunction` or a bare vectorised evaluator. Composed
    points outside ``fn_domain`` (default: the TestFunction's domain, or
    unbounded for a bare evaluator) are skipped and counted.
    """
    if fn_domain is None and isinstance(fn, TestFunction):
        fn_domain = fn.domain
    lo, hi = domain.a, domain.b
    if fn_domain is not None:
        lo, hi = max(lo, fn_domain.a), min(hi, fn_domain.b)
    if not lo < hi:
        raise DomainError(f"certification domain [{domain.a}, {domain.b}] is empty after clipping")
    dom = Interval(lo, hi)

    f = _evaluator(fn)
    x, y, t = sample_triples(dom, budget, seed)
    point, lhs, rhs = _sides(f, x, y, t, cls)
    ok = np.isfinite(lhs) & np.isfinite(rhs)
    if fn_domain is not None:
        ok &= (point >= fn_domain.a) & (point <= fn_domain.b)
    skipped = int(np.count_nonzero(~ok))
    notes = []
    if cls.alpha == 0.0:
        notes.append("alpha = 0 evaluated with the convention 0**0 = 1")
    if skipped:
        notes.append(f"{skipped} composed points outside the function domain were skipped")

    viol = lhs - rhs
    score = np.where(ok, viol / (1.0 + np.abs(lhs)), -np.inf)
    best = float(np.max(score))
    if best == -np.inf:
        raise DomainError("no admissible samples: every composed point left the function domain")
    ties = np.flatnonzero(score == best)
    i = ties[np.lexsort((t[ties], y[ties], x[ties]))[0]]
    max_violation = float(viol[i])

    if best > SLACK_TOL:
        status = "fail"
    elif skipped > MAX_SKIP_FRACTION * x.size:
        status = "inconclusive"
    else:
        status = "pass"
    witness = (float(x[i]), float(y[i]), float(t[i])) if status == "fail" else None
    return CertificationResult(status, int(x.size), max_violation, witness, skipped, seed,
                               cls.label(), tuple(notes))
