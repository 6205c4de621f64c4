"""Rationality and transcendence tests for Mahler functions."""

from .arith import Poly, format_rational, parse_rational, poly_derivative, poly_eval, poly_gcd
from .document import load_equation, load_fixture, parse_equation_document
from .eigen import (
    applicability,
    approximate_roots,
    characteristic_polynomial,
    eigen_verdict,
    estimate_eigenvalue,
    estimate_exponent,
    k_power_roots,
)
from .equation import (
    MahlerEquation,
    SeriesPrefix,
    compute_coefficients,
    degree_bounds,
    equation_from_product,
    residual_check,
    validate_equation,
)
from .universal import build_hankel, exact_rank, kappa, reconstruct_rational, universal_verdict
from .verdict import Reason, Tag, Verdict

__all__ = [
    "MahlerEquation", "Poly", "Reason", "SeriesPrefix", "Tag", "Verdict",
    "applicability", "approximate_roots", "build_hankel", "characteristic_polynomial",
    "compute_coefficients", "degree_bounds", "eigen_verdict", "equation_from_product",
    "estimate_eigenvalue", "estimate_exponent", "exact_rank", "format_rational", "k_power_roots",
    "kappa", "load_equation", "load_fixture", "parse_equation_document", "parse_rational",
    "poly_derivative", "poly_eval", "poly_gcd", "reconstruct_rational", "residual_check",
    "universal_verdict", "validate_equation",
]
