"""Function corpus, grid sweeps and report I/O.

A sweep pairs every applicable theorem with every grid point and corpus
function, computes ``|I_f|`` by two independent quadrature routes, certifies
the convexity hypothesis on ``|f'|^q`` and records the slack against the
theorem's bound. A ``violated`` record is only ever produced when the
hypothesis was certified and the violation survives a re-run at ten times
tighter quadrature tolerance.
"""

from __future__ import annotations

import csv
import itertools
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Iterable

import numpy as np

from . import bounds
from .bounds import FRACTIONAL_THEOREMS, ParamSet
from .convexity import DEFAULT_BUDGET, DEFAULT_SEED, CertificationResult, ConvexityClass, certify, power_abs_derivative
from .errors import DegenerateIntervalError, DomainError, HHFracError, QuadratureError
from .fracint import Interval, TestFunction, hh_sandwich, i_f_result, lemma_rhs_result
from .quadrature import DEFAULT_QUAD, QuadratureSpec

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

log = logging.getLogger(__name__)

LEMMA_GAP_TOL = 1e-7
SLACK_REL_TOL = 1e-7
SANDWICH_TOL = 1e-9
REDUCTION_TOL = 1e-7

VERIFIED = "verified"
VIOLATED = "violated"
UNCERTIFIED = "skipped-uncertified"
DEGENERATE = "degenerate"
REJECTED = "rejected"
INCONSISTENT = "quadrature-inconsistent"

SANDWICH_ID = "4"
IDENTITY_ID = "identity"

CSV_COLUMNS = ("theorem", "function", "theta", "alpha", "m", "a", "b", "q",
               "lhs", "bound", "slack", "status")

CORPUS_DOMAIN = Interval(0.1, 10.0)


# -- corpus -------------------------------------------------------------------

def corpus() -> list[TestFunction]:
    """Built-in test functions, all defined on ``[0.1, 10]``.

    Every ``|f'|^q`` here is harmonically convex for ``q >= 1``; membership in
    the wider (alpha, m) classes varies and is left to certification.
    """
    dom = CORPUS_DOMAIN
    return [
        TestFunction("half_square", lambda x: 0.5 * x**2, lambda x: x, dom,
                     ("|f'|^q harmonically convex for q >= 1",)),
        TestFunction("identity", lambda x: x, lambda x: np.ones_like(x), dom,
                     ("|f'|^q constant 1: harmonically convex, not (alpha, m) for m < 1",)),
        TestFunction("neg_log", lambda x: -np.log(x), lambda x: -1.0 / x, dom,
                     ("|f'|^q = x^-q harmonically convex",)),
        TestFunction("cube_third", lambda x: x**3 / 3.0, lambda x: x**2, dom,
                     ("|f'|^q = x^2q harmonically convex",)),
        TestFunction("constant", lambda x: np.full_like(x, 1.5), lambda x: np.zeros_like(x), dom,
                     ("f' = 0: every class",)),
    ]


def corpus_by_name() -> dict[str, TestFunction]:
    return {fn.name: fn for fn in corpus()}


# -- records ------------------------------------------------------------------

@dataclass
class VerificationRecord:
    theorem: str
    function: str
    theta: float
    alpha: float
    m: float
    a: float
    b: float
    q: float
    lhs: float | None = None
    bound: float | None = None
    slack: float | None = None
    status: str = REJECTED
    lhs_lemma: float | None = None
    certification: dict | None = None
    quadrature: dict = field(default_factory=dict)
    constants: list = field(default_factory=list)
    message: str = ""

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationRecord":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})


def cert_summary(cert: CertificationResult) -> dict:
    return {
        "status": cert.status,
        "class": cert.cls,
        "samples": cert.samples,
        "max_violation": cert.max_violation,
        "witness": list(cert.witness) if cert.witness else None,
        "skipped": cert.skipped,
        "seed": cert.seed,
        "notes": list(cert.notes),
    }


class EvaluationCache:
    """Memoises the expensive pieces shared across grid points of a sweep."""

    def __init__(self, budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED):
        self.budget = budget
        self.seed = seed
        self._lhs: dict = {}
        self._cert: dict = {}

    def functional(self, fn: TestFunction, theta: float, iv: Interval, quad: QuadratureSpec):
        key = (fn.name, id(fn), theta, iv.a, iv.b, quad)
        if key not in self._lhs:
            self._lhs[key] = (i_f_result(theta, iv, fn, quad), lemma_rhs_result(theta, iv, fn, quad))
        return self._lhs[key]

    def certification(self, fn: TestFunction, q: float, cls: ConvexityClass, dom: Interval,
                      power: bool = True) -> CertificationResult:
        key = (fn.name, id(fn), q if power else None, cls, dom.a, dom.b)
        if key not in self._cert:
            target = power_abs_derivative(fn, q) if power else fn
            self._cert[key] = certify(target, cls, dom, self.budget, self.seed, fn_domain=fn.domain)
        return self._cert[key]


def _hypothesis_class(theorem: str, ps: ParamSet) -> ConvexityClass:
    if theorem in ("2", "3"):
        return ConvexityClass.harmonic()
    return ConvexityClass.harmonic_alpha_m(ps.alpha, ps.m)


def verify_theorem(theorem: str, ps: ParamSet, fn: TestFunction, quad: QuadratureSpec = DEFAULT_QUAD,
                   *, cache: EvaluationCache | None = None) -> VerificationRecord:
    """Check ``|I_f| <= bound`` for one theorem at one parameter point.

    Precondition failures and numerical breakdowns come back as records
    (``rejected``, ``degenerate``, ``quadrature-inconsistent``), never as
    exceptions.
    """
    cache = cache or EvaluationCache()
    theorem = str(theorem)
    rec = VerificationRecord(theorem, fn.name, ps.theta, ps.alpha, ps.m, ps.a, ps.b, ps.q)
    try:
        bounds.check_preconditions(theorem, ps)
    except DegenerateIntervalError as exc:
        rec.status, rec.message = DEGENERATE, str(exc)
        return rec
    except DomainError as exc:
        rec.status, rec.message = REJECTED, str(exc)
        return rec
    iv = ps.iv
    cert_dom = Interval(ps.a, ps.b / ps.m) if ps.m < 1 else iv
    if not fn.domain.contains(cert_dom.a, cert_dom.b):
        rec.status = DEGENERATE
        rec.message = f"{fn.name} domain does not cover [a, b/m] = [{cert_dom.a}, {cert_dom.b}]"
        return rec

    fa = float(abs(fn.derivative(ps.a)))
    fbm = float(abs(fn.derivative(ps.b / ps.m)))
    rec.bound = bounds.bound(theorem, ps, fa, fbm)
    rec.constants = [c.as_dict() for c in bounds.theorem_constants(theorem, ps)]
    cert = cache.certification(fn, ps.q, _hypothesis_class(theorem, ps), cert_dom)
    rec.certification = cert_summary(cert)

    try:
        _fill_lhs(rec, fn, ps, quad, cache)
        tol = SLACK_REL_TOL * (1.0 + rec.bound)
        if cert.passed and rec.slack < -tol and rec.quadrature["lemma_gap"] <= LEMMA_GAP_TOL:
            log.info("re-evaluating apparent violation of theorem %s for %s at tighter tolerance",
                     theorem, fn.name)
            _fill_lhs(rec, fn, ps, quad.tightened(10.0), cache)
            rec.quadrature["retried"] = True
    except QuadratureError as exc:
        rec.status, rec.message = INCONSISTENT, str(exc)
        return rec

    tol = SLACK_REL_TOL * (1.0 + rec.bound)
    if not cert.passed:
        rec.status = UNCERTIFIED
        rec.message = f"|f'|^q certification: {cert.status}"
    elif rec.quadrature["lemma_gap"] > LEMMA_GAP_TOL:
        rec.status = INCONSISTENT
        rec.message = "the two quadrature routes for I_f disagree"
    elif rec.slack < -tol:
        rec.status = VIOLATED
    else:
        rec.status = VERIFIED
    return rec


def _fill_lhs(rec: VerificationRecord, fn: TestFunction, ps: ParamSet, quad: QuadratureSpec,
              cache: EvaluationCache) -> None:
    theta = 1.0 if rec.theorem in ("2", "3") else ps.theta
    direct, lemma = cache.functional(fn, theta, ps.iv, quad)
    rec.lhs = abs(direct.value)
    rec.lhs_lemma = lemma.value
    rec.slack = rec.bound - rec.lhs
    rec.quadrature = {
        "error_estimate": direct.error,
        "panels": direct.panels,
        "lemma_error_estimate": lemma.error,
        "lemma_gap": abs(direct.value - lemma.value),
        "abs_tol": quad.abs_tol,
        "rel_tol": quad.rel_tol,
    }


def verify_sandwich(fn: TestFunction, theta: float, iv: Interval, quad: QuadratureSpec = DEFAULT_QUAD,
                    *, cache: EvaluationCache | None = None) -> VerificationRecord:
    """Check ``left <= mid <= right`` of the fractional sandwich when ``fn`` is certified harmonically convex.

    ``lhs`` holds the harmonic-mean value, ``bound`` the endpoint mean and
    ``slack`` the smaller of the two gaps.
    """
    cache = cache or EvaluationCache()
    rec = VerificationRecord(SANDWICH_ID, fn.name, theta, 1.0, 1.0, iv.a, iv.b, 1.0)
    cert = cache.certification(fn, 1.0, ConvexityClass.harmonic(), iv, power=False)
    rec.certification = cert_summary(cert)
    try:
        s = hh_sandwich(theta, iv, fn, quad)
    except QuadratureError as exc:
        rec.status, rec.message = INCONSISTENT, str(exc)
        return rec
    rec.lhs, rec.bound = s.left, s.right
    rec.quadrature = {"mid": s.mid}
    rec.slack = min(s.slacks())
    if not cert.passed:
        rec.status = UNCERTIFIED
    else:
        rec.status = VERIFIED if rec.slack >= -SANDWICH_TOL else VIOLATED
    return rec


def verify_identity(fn: TestFunction, theta: float, iv: Interval, quad: QuadratureSpec = DEFAULT_QUAD,
                    *, cache: EvaluationCache | None = None) -> VerificationRecord:
    """Compare the direct and derivative-side evaluations of ``I_f``; slack is ``tol - gap``."""
    cache = cache or EvaluationCache()
    rec = VerificationRecord(IDENTITY_ID, fn.name, theta, 1.0, 1.0, iv.a, iv.b, 1.0)
    try:
        direct, lemma = cache.functional(fn, theta, iv, quad)
    except QuadratureError as exc:
        rec.status, rec.message = INCONSISTENT, str(exc)
        return rec
    gap = abs(direct.value - lemma.value)
    rec.lhs, rec.lhs_lemma, rec.bound = direct.value, lemma.value, LEMMA_GAP_TOL
    rec.slack = LEMMA_GAP_TOL - gap
    rec.quadrature = {"lemma_gap": gap, "error_estimate": direct.error,
                      "lemma_error_estimate": lemma.error}
    rec.status = VERIFIED if gap <= LEMMA_GAP_TOL else VIOLATED
    return rec


# -- reduction identities -----------------------------------------------------

@dataclass(frozen=True)
class Discrepancy:
    check: str
    a: float
    b: float
    q: float
    fa: float
    fb: float
    fractional: float
    classical: float
    rel_diff: float


def check_reductions(intervals: Iterable[tuple[float, float]], qs: Iterable[float],
                     derivs: Iterable[tuple[float, float]] = ((1.0, 1.0), (0.5, 2.0), (3.0, 0.25)),
                     tol: float = REDUCTION_TOL) -> tuple[int, list[Discrepancy]]:
    """Compare the theta = alpha = m = 1 fractional bounds with the classical ones.

    Returns the number of comparisons and the discrepancies exceeding ``tol``.
    """
    found, count = [], 0
    derivs = list(derivs)
    for (a, b), q in itertools.product(list(intervals), list(qs)):
        iv, ps = Interval(a, b), ParamSet(1.0, 1.0, 1.0, a, b, q)
        for fa, fb in derivs:
            pairs = [("power-mean", bounds.bound_thm6(ps, fa, fb), bounds.bound_thm2(iv, q, fa, fb))]
            if q > 1:
                pairs.append(("hoelder", bounds.bound_thm8(ps, fa, fb), bounds.bound_thm3(iv, q, fa, fb)))
            for name, frac, classic in pairs:
                count += 1
                rel = abs(frac - classic) / max(abs(classic), np.finfo(float).tiny)
                if rel > tol:
                    found.append(Discrepancy(name, a, b, q, fa, fb, frac, classic, rel))
    return count, found


# -- sweeps -------------------------------------------------------------------

@dataclass
class SweepConfig:
    thetas: list[float] = field(default_factory=lambda: [0.25, 0.5, 0.75, 1.0])
    alphas: list[float] = field(default_factory=lambda: [0.25, 0.5, 0.75, 1.0])
    ms: list[float] = field(default_factory=lambda: [0.5, 0.75, 1.0])
    qs: list[float] = field(default_factory=lambda: [1.0, 1.5, 2.0, 3.0])
    intervals: list[tuple[float, float]] = field(default_factory=lambda: [(1.0, 2.0), (1.0, 4.0), (0.5, 3.0)])
    functions: list[str] | None = None
    theorems: list[str] = field(default_factory=lambda: list(bounds.THEOREMS))
    sandwich: bool = True
    identity: bool = True
    quad: QuadratureSpec = DEFAULT_QUAD
    seed: int = DEFAULT_SEED
    budget: int = DEFAULT_BUDGET
    csv_path: str | None = None
    json_path: str | None = None

    def __post_init__(self):
        self.thetas = [float(v) for v in self.thetas]
        self.alphas = [float(v) for v in self.alphas]
        self.ms = [float(v) for v in self.ms]
        self.qs = [float(v) for v in self.qs]
        self.intervals = [(float(a), float(b)) for a, b in self.intervals]
        self.theorems = [str(t) for t in self.theorems]
        for t in self.theorems:
            if t not in bounds.THEOREMS:
                raise DomainError(f"unknown theorem {t!r}")
        if self.functions is not None:
            known = corpus_by_name()
            missing = [n for n in self.functions if n not in known]
            if missing:
                raise DomainError(f"unknown corpus functions: {', '.join(missing)}")

    def selected(self) -> list[TestFunction]:
        fns = corpus()
        if self.functions is None:
            return fns
        return [fn for fn in fns if fn.name in self.functions]


def applicable(theorem: str, ps: ParamSet) -> bool:
    """Whether a grid point falls inside the theorem's hypotheses (others are not swept)."""
    try:
        bounds.check_preconditions(theorem, ps)
    except DegenerateIntervalError:
        return True  # reported as a degenerate record
    except DomainError:
        return False
    return True


def run_sweep(cfg: SweepConfig) -> list[VerificationRecord]:
    """Evaluate every applicable (theorem, function, grid point) plus sandwich and identity checks.

    Records come back in canonical order: theorem, function, then grid indices.
    """
    cache = EvaluationCache(cfg.budget, cfg.seed)
    fns = cfg.selected()
    records: list[VerificationRecord] = []
    for theorem in cfg.theorems:
        for fn in fns:
            grid = itertools.product(cfg.thetas, cfg.alphas, cfg.ms, cfg.qs, cfg.intervals)
            for theta, alpha, m, q, (a, b) in grid:
                try:
                    ps = ParamSet(theta, alpha, m, a, b, q)
                except DomainError as exc:
                    records.append(VerificationRecord(theorem, fn.name, theta, alpha, m, a, b, q,
                                                      status=REJECTED, message=str(exc)))
                    continue
                if not applicable(theorem, ps):
                    continue
                try:
                    records.append(verify_theorem(theorem, ps, fn, cfg.quad, cache=cache))
                except HHFracError as exc:
                    log.warning("theorem %s, %s, %s failed: %s", theorem, fn.name, ps, exc)
                    records.append(VerificationRecord(theorem, fn.name, theta, alpha, m, a, b, q,
                                                      status=INCONSISTENT, message=str(exc)))
    for check, enabled in ((SANDWICH_ID, cfg.sandwich), (IDENTITY_ID, cfg.identity)):
        if not enabled:
            continue
        runner = verify_sandwich if check == SANDWICH_ID else verify_identity
        for fn in fns:
            for theta, (a, b) in itertools.product(cfg.thetas, cfg.intervals):
                try:
                    records.append(runner(fn, theta, Interval(a, b), cfg.quad, cache=cache))
                except HHFracError as exc:
                    records.append(VerificationRecord(check, fn.name, theta, 1.0, 1.0, a, b, 1.0,
                                                      status=INCONSISTENT, message=str(exc)))
    return records


def summarize(records: Iterable[VerificationRecord]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for rec in records:
        counts[rec.status] = counts.get(rec.status, 0) + 1
    return dict(sorted(counts.items()))


# -- report I/O ---------------------------------------------------------------

def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def emit_report(records: Iterable[VerificationRecord], fmt: str, path: str | Path) -> None:
    """Write records as CSV (fixed leading columns plus a JSON ``details`` column) or a JSON array."""
    path = Path(path)
    records = list(records)
    try:
        if fmt == "json":
            with path.open("w") as fh:
                json.dump([r.to_dict() for r in records], fh, indent=1)
                fh.write("\n")
        elif fmt == "csv":
            with path.open("w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(CSV_COLUMNS + ("details",))
                for r in records:
                    d = r.to_dict()
                    details = {k: v for k, v in d.items() if k not in CSV_COLUMNS}
                    writer.writerow([_fmt(d[c]) for c in CSV_COLUMNS]
                                    + [json.dumps(details, sort_keys=True)])
        else:
            raise ValueError(f"unknown report format {fmt!r}")
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc


_FLOAT_COLUMNS = {"theta", "alpha", "m", "a", "b", "q", "lhs", "bound", "slack"}


def load_report(path: str | Path, fmt: str | None = None) -> list[VerificationRecord]:
    path = Path(path)
    fmt = fmt or path.suffix.lstrip(".")
    try:
        with path.open(newline="") as fh:
            if fmt == "json":
                return [VerificationRecord.from_dict(d) for d in json.load(fh)]
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise OSError(f"cannot read report {path}: {exc}") from exc
    out = []
    for row in rows:
        d: dict = json.loads(row.pop("details") or "{}")
        for k, v in row.items():
            if k in _FLOAT_COLUMNS:
                d[k] = float(v) if v != "" else None
            else:
                d[k] = v
        out.append(VerificationRecord.from_dict(d))
    return out


# -- config -------------------------------------------------------------------

_CONFIG_KEYS = {
    "theta": "thetas", "alpha": "alphas", "m": "ms", "q": "qs", "intervals": "intervals",
    "functions": "functions", "theorems": "theorems", "sandwich": "sandwich",
    "identity": "identity", "seed": "seed", "budget": "budget",
}


def load_config(path: str | Path) -> SweepConfig:
    """Read a TOML sweep configuration.

    Top-level keys: ``theta``, ``alpha``, ``m``, ``q`` (lists), ``intervals``
    (list of ``[a, b]``), ``functions``, ``theorems``, ``sandwich``,
    ``identity``, ``seed``, ``budget``; tables ``[quadrature]`` (``abs_tol``,
    ``rel_tol``, ``max_subdivisions``) and ``[output]`` (``csv``, ``json``).
    """
    path = Path(path)
    with path.open("rb") as fh:
        raw = tomllib.load(fh)
    kwargs = {}
    for key, value in raw.items():
        if key == "quadrature":
            kwargs["quad"] = QuadratureSpec(**{k: value[k] for k in value})
        elif key == "output":
            unknown = set(value) - {"csv", "json"}
            if unknown:
                raise DomainError(f"unknown [output] keys: {sorted(unknown)}")
            base = path.parent
            if "csv" in value:
                kwargs["csv_path"] = str(base / value["csv"])
            if "json" in value:
                kwargs["json_path"] = str(base / value["json"])
        elif key in _CONFIG_KEYS:
            kwargs[_CONFIG_KEYS[key]] = value
        else:
            raise DomainError(f"unknown config key {key!r}")
    return SweepConfig(**kwargs)
