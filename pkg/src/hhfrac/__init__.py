"""Numerical verification of fractional Hermite-Hadamard type inequalities for harmonically (alpha, m)-convex functions."""

from .bounds import (BoundConstants, ParamSet, bound, bound_thm2, bound_thm3, bound_thm5, bound_thm6,
                     bound_thm7, bound_thm8, bound_thm9, c1, c2, c3, c4, c5, c6, check_preconditions,
                     half_interval_constants, k_constants, k_consts, lambda_consts, mu_consts,
                     theorem_constants, weighted_power_constants)
from .convexity import CertificationResult, ConvexityClass, certify, evaluate_inequality, power_abs_derivative
from .errors import ConvergenceError, DegenerateIntervalError, DomainError, HHFracError, QuadratureError
from .fracint import (Interval, Sandwich, TestFunction, classical_mean, fractional_mean_result, hh_sandwich,
                      i_f, lemma_rhs, rl_left, rl_right)
from .harness import (SweepConfig, VerificationRecord, check_reductions, corpus, emit_report, load_config,
                      load_report, run_sweep, verify_theorem)
from .quadrature import QuadratureSpec, QuadResult, integrate
from .specfun import beta_fn, gamma_fn, hyp2f1

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
