"""Eigenvalue test.

The characteristic polynomial of ``a_0 F(z) + ... + a_d F(z^(k^d)) = 0`` is
``a_0(1) x^d + a_1(1) x^(d-1) + ... + a_d(1)``.  When a_0(1) a_d(1) != 0 and its
roots are distinct, F behaves like ``C(z) / (1 - z)^(log_k lambda_F)`` near
z = 1 for one root lambda_F, and F is transcendental unless lambda_F is an
integral power of k.  lambda_F is the limit of F(z)/F(z^k) as z -> 1-.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import Poly, poly_derivative, poly_eval, poly_gcd
from .equation import MahlerEquation, float_coefficients, validate_equation
from .roots import RootApproximation, RootFindingError, approximate_roots
from .verdict import EIGENVALUE_TEST, Evidence, Reason, Tag, Verdict

DEFAULT_MAX_TERMS = 2 ** 20
MAX_LADDER = 40


class EstimatorError(ArithmeticError):
    pass


@dataclass(frozen=True)
class CharPoly:
    poly: Poly
    a_values: tuple[Fraction, ...]

    @property
    def d(self) -> int:
        return len(self.a_values) - 1


def characteristic_polynomial(eq: MahlerEquation) -> CharPoly:
    validate_equation(eq)
    a = tuple(poly_eval(p, Fraction(1)) for p in eq.coefficients)
    # coefficient of x^(d-i) is a_i
    return CharPoly(Poly(reversed(a)), a)


@dataclass(frozen=True)
class Gate:
    passed: bool
    reason: Reason | None = None


def applicability(cp: CharPoly) -> Gate:
    if cp.a_values[0] == 0:
        return Gate(False, Reason.LEADING_ZERO)
    if cp.a_values[-1] == 0:
        return Gate(False, Reason.TRAILING_ZERO)
    if poly_gcd(cp.poly, poly_derivative(cp.poly)).degree > 0:
        return Gate(False, Reason.REPEATED_ROOTS)
    return Gate(True)


def _power_exponent_bound(bound: Fraction, k: int) -> int:
    """Smallest e >= 0 with k^e >= bound."""
    e = 0
    while k ** e < bound:
        e += 1
    return e


def k_power_roots(cp: CharPoly | Poly, k: int) -> list[int]:
    """Every integer n with p(k^n) = 0, by exact evaluation over a Cauchy range."""
    poly = cp.poly if isinstance(cp, CharPoly) else cp
    if poly.is_zero or poly[0] == 0:
        raise ValueError("precondition violated: need a_0 != 0 and a_d != 0")
    c = poly.coeffs
    lead, const = c[-1], c[0]
    upper = 1 + max((abs(x / lead) for x in c[:-1]), default=Fraction(0))
    lower = 1 + max((abs(x / const) for x in c[1:]), default=Fraction(0))
    hi = _power_exponent_bound(upper, k)
    lo = _power_exponent_bound(lower, k)
    return [n for n in range(-lo, hi + 1) if poly_eval(poly, Fraction(k) ** n) == 0]


class RadialEvaluator:
    """Evaluate F at real z in (0, 1) from a float coefficient prefix.

    The prefix doubles until the partial sum moves by less than ``rel_tol``
    relatively, up to ``max_terms`` coefficients.
    """

    def __init__(self, eq: MahlerEquation, rel_tol: float, max_terms: int = DEFAULT_MAX_TERMS,
                 start: int = 1024):
        self.eq = eq
        self.rel_tol = rel_tol
        self.max_terms = max_terms
        self.start = min(start, max_terms)
        self._coeffs = float_coefficients(eq, self.start)
        self._cache: dict[float, tuple[float, int]] = {}

    def _ensure(self, n: int):
        if len(self._coeffs) < n:
            self._coeffs = float_coefficients(self.eq, n)

    def __call__(self, z: float) -> float:
        if z in self._cache:
            return self._cache[z][0]
        n = self.start
        prev = None
        while True:
            self._ensure(n)
            s = float(np.dot(self._coeffs[:n], z ** np.arange(n)))
            if prev is not None and abs(s - prev) <= self.rel_tol * abs(s):
                self._cache[z] = (s, n)
                return s
            if n >= self.max_terms:
                raise EstimatorError(f"truncation cap reached ({self.max_terms} terms at z = 1 - {1 - z:.3g})")
            prev = s
            n = min(2 * n, self.max_terms)

    @property
    def terms_used(self) -> int:
        return max((n for _, n in self._cache.values()), default=0)


def _smooth(seq: list[float]) -> list[float]:
    # signed geometric mean of neighbours cancels a period-2 sign mode (root -lambda)
    out = []
    for x, y in zip(seq, seq[1:]):
        if x * y > 0:
            out.append(math.copysign(math.sqrt(x * y), x))
        else:
            out.append((x + y) / 2)
    return out


def _richardson(seq: list[float], k: int) -> list[float]:
    # ladder errors decay like (1 - z_m) = k^-m
    return [(k * y - x) / (k - 1) for x, y in zip(seq, seq[1:])]


@dataclass
class LadderEstimate:
    value: float
    m: int
    ratios: list[tuple[int, float]] = field(default_factory=list)
    terms_used: int = 0


def _stabilize(eq: MahlerEquation, tol: float, max_terms: int, ratio) -> LadderEstimate:
    k = eq.k
    evaluate = RadialEvaluator(eq, tol / 10, max_terms)
    raw: list[float] = []
    ms: list[int] = []
    for m in range(2, MAX_LADDER + 1):
        try:
            raw.append(ratio(evaluate, m))
        except ZeroDivisionError:
            raise EstimatorError(f"F vanishes on the ladder at m = {m}") from None
        ms.append(m)
        acc = _richardson(_smooth(raw), k)
        if len(acc) >= 3 and abs(acc[-1] - acc[-2]) < tol and abs(acc[-2] - acc[-3]) < tol:
            return LadderEstimate(acc[-1], m, list(zip(ms, raw)), evaluate.terms_used)
    raise EstimatorError(f"ratio not stabilizing after m = {MAX_LADDER}")


def _ladder_point(k: int, m: int) -> float:
    return 1.0 - float(k) ** -m


def estimate_eigenvalue(eq: MahlerEquation, tol: float = 1e-6,
                        max_terms: int = DEFAULT_MAX_TERMS) -> LadderEstimate:
    """Limit of F(z)/F(z^k) along z_m = 1 - k^-m.

    The raw ratios are smoothed over neighbouring m and Richardson-extrapolated
    before the stopping rule (two consecutive changes below ``tol``) is applied.
    """
    k = eq.k

    def ratio(evaluate, m):
        z = _ladder_point(k, m)
        return evaluate(z) / evaluate(z ** k)

    return _stabilize(eq, tol, max_terms, ratio)


def estimate_exponent(eq: MahlerEquation, tol: float = 1e-6,
                      max_terms: int = DEFAULT_MAX_TERMS) -> LadderEstimate:
    """Radial exponent beta with F(z) ~ C(z) (1 - z)^-beta, from F(z_(m+1))/F(z_m) -> k^beta."""
    k = eq.k

    def ratio(evaluate, m):
        return evaluate(_ladder_point(k, m + 1)) / evaluate(_ladder_point(k, m))

    est = _stabilize(eq, tol, max_terms, ratio)
    if est.value <= 0:
        raise EstimatorError("radial growth ratio is not positive")
    est.value = math.log(est.value, k)
    return est


@dataclass
class EigenReport:
    applicable: bool
    char_poly: CharPoly
    verdict: Verdict
    gate_reason: Reason | None = None
    k_power_roots: list[int] = field(default_factory=list)
    roots: RootApproximation | None = None
    lambda_estimate: float | None = None
    exponent_estimate: float | None = None
    matched_root_index: int | str | None = None
    evidence: Evidence | None = None
    diagnostics: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "gate": self.gate_reason.value if self.gate_reason else None,
            "char_poly": self.char_poly.poly.to_literals(),
            "k_power_roots": list(self.k_power_roots),
            "roots": [[r.real, r.imag] for r in self.roots.roots] if self.roots else [],
            "lambda_estimate": self.lambda_estimate,
            "exponent_estimate": self.exponent_estimate,
            "matched_root_index": self.matched_root_index,
            "evidence": self.evidence.value if self.evidence else None,
            "verdict": self.verdict.to_dict(),
            "diagnostics": list(self.diagnostics),
        }


def _inconclusive(reason: Reason, detail: str | None = None) -> Verdict:
    return Verdict(Tag.INCONCLUSIVE, EIGENVALUE_TEST, reason=reason, detail=detail)


def match_root(estimate: float, roots: RootApproximation) -> int | None:
    """Index of the real root the estimate safely identifies, else None."""
    dists = [abs(estimate - r) for r in roots.roots]
    j = min(range(len(dists)), key=dists.__getitem__)
    root = roots.roots[j]
    if abs(root.imag) > max(1e-8, roots.radii[j]):
        return None
    if not dists[j] < roots.gap / 3:
        return None
    return j


def eigen_verdict(eq: MahlerEquation, tol: float = 1e-6,
                  max_terms: int = DEFAULT_MAX_TERMS) -> tuple[Verdict, EigenReport]:
    cp = characteristic_polynomial(eq)
    gate = applicability(cp)
    if not gate.passed:
        v = _inconclusive(gate.reason)
        return v, EigenReport(False, cp, v, gate_reason=gate.reason)

    powers = k_power_roots(cp, eq.k)
    report = EigenReport(True, cp, _inconclusive(Reason.AMBIGUOUS_MATCH), k_power_roots=powers)
    try:
        report.roots = approximate_roots(cp.poly)
    except RootFindingError as exc:
        report.diagnostics.append(f"root approximation: {exc}")

    if not powers:
        v = Verdict(Tag.TRANSCENDENTAL, EIGENVALUE_TEST, evidence=Evidence.EXACT)
        report.verdict, report.evidence = v, Evidence.EXACT
        return v, report

    if report.roots is None:
        v = _inconclusive(Reason.ESTIMATOR_FAILED, report.diagnostics[-1])
        report.verdict = v
        return v, report

    try:
        est = estimate_eigenvalue(eq, tol, max_terms)
    except EstimatorError as exc:
        v = _inconclusive(Reason.ESTIMATOR_FAILED, str(exc))
        report.verdict = v
        report.diagnostics.append(str(exc))
        return v, report
    report.lambda_estimate = est.value
    try:
        report.exponent_estimate = estimate_exponent(eq, tol, max_terms).value
        report.diagnostics.append(
            f"|k^beta - lambda| = {abs(eq.k ** report.exponent_estimate - est.value):.3g}")
    except EstimatorError as exc:
        report.diagnostics.append(f"exponent cross-check: {exc}")

    j = match_root(est.value, report.roots)
    if j is None:
        report.matched_root_index = "ambiguous"
        v = _inconclusive(Reason.AMBIGUOUS_MATCH, f"estimate {est.value:.9g}")
        report.verdict = v
        return v, report
    report.matched_root_index = j
    power_indices = {
        min(range(len(report.roots.roots)), key=lambda i: abs(report.roots.roots[i] - float(eq.k) ** n)): n
        for n in powers
    }
    if j in power_indices:
        n = power_indices[j]
        v = _inconclusive(Reason.K_POWER_EIGENVALUE, f"lambda_F = {eq.k}^{n}")
    else:
        v = Verdict(Tag.TRANSCENDENTAL, EIGENVALUE_TEST, evidence=Evidence.NUMERIC)
        report.evidence = Evidence.NUMERIC
    report.verdict = v
    return v, report
