"""Mahler functional equations and their power-series solutions.

An equation ``a_0(z) F(z) + a_1(z) F(z^k) + ... + a_d(z) F(z^(k^d)) = 0`` is
held by :class:`MahlerEquation`.  Matching the coefficient of ``z^N`` gives

    sum_i sum_{j + k^i m = N} a_{i,j} f(m) = 0,

which is solved for ``f(N - v)`` by pivoting on the lowest nonzero coefficient
``a_{0,v}`` of ``a_0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.signal import lfilter, lfiltic

from .arith import Poly, Scalar


class EquationError(ValueError):
    """The equation itself is malformed."""


class CoefficientError(ValueError):
    """The recurrence cannot produce (or contradicts) the requested coefficients."""


@dataclass(frozen=True)
class MahlerEquation:
    k: int
    coefficients: tuple[Poly, ...]
    initial_terms: tuple[Fraction, ...] = ()
    name: str | None = None

    def __init__(self, k: int, coefficients: Sequence, initial_terms: Sequence[Scalar] = (),
                 name: str | None = None):
        polys = tuple(c if isinstance(c, Poly) else Poly(c) for c in coefficients)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coefficients", polys)
        object.__setattr__(self, "initial_terms", tuple(Fraction(x) for x in initial_terms))
        object.__setattr__(self, "name", name)

    @property
    def d(self) -> int:
        return len(self.coefficients) - 1

    @property
    def height(self) -> int:
        """H, the largest degree among the a_i (0 when all are constant)."""
        return max((p.degree for p in self.coefficients if not p.is_zero), default=0)

    @property
    def order_at_zero(self) -> int:
        """v, the order of vanishing of a_0 at z = 0."""
        return self.coefficients[0].valuation()

    def with_initial_terms(self, terms: Sequence[Scalar]) -> "MahlerEquation":
        return MahlerEquation(self.k, self.coefficients, terms, self.name)


@dataclass(frozen=True)
class ValidationReport:
    k: int
    d: int
    height: int
    order_at_zero: int
    seed_horizon: int

    @property
    def required_seeds(self) -> int:
        return self.seed_horizon + 1


def seed_horizon(k: int, v: int) -> int:
    """Largest index that must be supplied as an initial term.

    For orders N < vk/(k-1) the terms a_i(z) F(z^(k^i)), i >= 1, may reference
    coefficients that the pivot has not reached yet, so every index up to
    floor(vk/(k-1)) is taken from the seeds.  f(0) is always seeded.
    """
    return (v * k) // (k - 1)


def validate_equation(eq: MahlerEquation) -> ValidationReport:
    if not isinstance(eq.k, int) or eq.k < 2:
        raise EquationError("k must be >= 2")
    if eq.d < 1:
        raise EquationError("d must be >= 1")
    if eq.coefficients[0].is_zero:
        raise EquationError("a_0 must not be the zero polynomial")
    if all(p.is_zero for p in eq.coefficients[1:]):
        raise EquationError("at least one of a_1..a_d must be nonzero")
    v = eq.order_at_zero
    return ValidationReport(eq.k, eq.d, eq.height, v, seed_horizon(eq.k, v))


SEEDED = "seeded"
SOLVED = "solved"


@dataclass(frozen=True)
class SeriesPrefix:
    coeffs: tuple[Fraction, ...]
    source: tuple[str, ...] = field(default=())

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1


def _higher_terms(eq: MahlerEquation):
    """(k^i, j, a_{i,j}) for every nonzero coefficient of a_1..a_d."""
    out = []
    for i, p in enumerate(eq.coefficients[1:], start=1):
        kp = eq.k ** i
        out.extend((kp, j, c) for j, c in enumerate(p.coeffs) if c)
    return out


def compute_coefficients(eq: MahlerEquation, n: int) -> SeriesPrefix:
    """Exact coefficients f(0..n) of the solution fixed by the seeds."""
    rep = validate_equation(eq)
    v = rep.order_at_zero
    seeds = eq.initial_terms
    if len(seeds) < rep.required_seeds:
        raise CoefficientError(
            f"insufficient initial terms: need f(0..{rep.seed_horizon}), got {len(seeds)}")
    a0 = [(j, c) for j, c in enumerate(eq.coefficients[0].coeffs) if c]
    higher = _higher_terms(eq)
    top = max(n, len(seeds) - 1)
    f: list[Fraction] = []
    source: list[str] = []

    for order in range(top + v + 1):
        m_piv = order - v
        pivot_coeff = Fraction(0)
        rest = Fraction(0)
        for j, c in a0:
            idx = order - j
            if idx < 0:
                continue
            if idx == m_piv:
                pivot_coeff += c
            else:
                rest += c * f[idx]
        for kp, j, c in higher:
            t = order - j
            if t < 0 or t % kp:
                continue
            m = t // kp
            if m < m_piv or (m >= len(f) and m < len(seeds) and m != m_piv):
                rest += c * (f[m] if m < len(f) else seeds[m])
            elif m == m_piv:
                pivot_coeff += c
            else:
                raise CoefficientError(f"underdetermined at index {max(m_piv, 0)}")

        if m_piv < 0:
            if rest != 0:
                raise CoefficientError(f"inconsistent seed: order {order} residual is {rest}")
        elif m_piv < len(seeds):
            value = seeds[m_piv]
            if pivot_coeff * value + rest != 0:
                raise CoefficientError(
                    f"inconsistent seed: f({m_piv}) = {value} violates the order-{order} equation")
            f.append(value)
            source.append(SEEDED)
        elif pivot_coeff == 0:
            if rest == 0:
                raise CoefficientError(f"underdetermined at index {m_piv}")
            raise CoefficientError(f"no solution: order-{order} equation cannot be satisfied")
        else:
            f.append(-rest / pivot_coeff)
            source.append(SOLVED)

    return SeriesPrefix(tuple(f[: n + 1]), tuple(source[: n + 1]))


@dataclass(frozen=True)
class ResidualReport:
    verified_order: int
    required_order: int
    first_failure: int | None = None

    @property
    def ok(self) -> bool:
        return self.first_failure is None or self.first_failure > self.required_order


def residual_check(eq: MahlerEquation, prefix: SeriesPrefix | Sequence[Scalar]) -> ResidualReport:
    """Expand sum_i a_i(z) F_N(z^(k^i)) and find the first nonzero coefficient."""
    coeffs = prefix.coeffs if isinstance(prefix, SeriesPrefix) else tuple(Fraction(x) for x in prefix)
    n = len(coeffs) - 1
    v = eq.order_at_zero
    top = eq.height + eq.k ** eq.d * n
    acc: dict[int, Fraction] = {}
    for i, p in enumerate(eq.coefficients):
        kp = eq.k ** i
        for m, fm in enumerate(coeffs):
            if not fm:
                continue
            for j, c in enumerate(p.coeffs):
                if c:
                    acc[j + kp * m] = acc.get(j + kp * m, 0) + c * fm
    bad = sorted(t for t, c in acc.items() if c != 0)
    if not bad:
        return ResidualReport(top, n - v)
    first = bad[0]
    return ResidualReport(first - 1, n - v, first if first <= n - v else None)


def degree_bounds(eq: MahlerEquation) -> tuple[int, int]:
    """Bounds on deg Q and deg P for a reduced rational solution P/Q."""
    validate_equation(eq)
    h, k, d = eq.height, eq.k, eq.d
    bound_q = (h * (k - 1)) // (k ** (d + 1) - 2 * k ** d + 1)
    bound_p = bound_q + h // (k ** (d - 1) * (k - 1))
    return bound_q, bound_p


def equation_from_product(numer: Poly, denom: Poly, k: int) -> MahlerEquation:
    """Equation denom(z) F(z) - numer(z) F(z^k) = 0 for F = prod_n r(z^(k^n)).

    Requires r = numer/denom with r(0) = 1 so the product converges
    coefficientwise to a series with F(0) = 1.
    """
    if k < 2:
        raise EquationError("k must be >= 2")
    if denom[0] == 0:
        raise EquationError("r has a pole at 0")
    if numer[0] / denom[0] != 1:
        raise EquationError(
            "product does not converge coefficientwise to a power series with F(0)=1")
    return MahlerEquation(k, [denom, -numer], [1])


# floating-point extension, used only for radial evaluation near z = 1

def float_coefficients(eq: MahlerEquation, n: int, exact_terms: int = 64) -> np.ndarray:
    """Coefficients f(0..n-1) as float64.

    The first ``exact_terms`` (at least the seed horizon) are computed exactly;
    the rest are produced block by block, each block depending only on earlier
    blocks through the a_i, i >= 1, plus a short linear filter for a_0.
    """
    rep = validate_equation(eq)
    v = rep.order_at_zero
    head = max(exact_terms, rep.required_seeds, len(eq.initial_terms))
    if n <= head:
        return np.array([float(x) for x in compute_coefficients(eq, n - 1).coeffs], dtype=float)

    f = np.zeros(n, dtype=float)
    f[:head] = [float(x) for x in compute_coefficients(eq, head - 1).coeffs]
    a0 = eq.coefficients[0].coeffs[v:]
    denom = np.array([float(c) for c in a0])
    higher = [(kp, j, float(c)) for kp, j, c in _higher_terms(eq)]
    k = eq.k

    lo = head
    while lo < n:
        hi = min(n, k * lo - v)
        idx = np.arange(lo, hi)
        g = np.zeros(hi - lo)
        for kp, j, c in higher:
            t = idx + v - j
            mask = (t >= 0) & (t % kp == 0)
            g[mask] += c * f[t[mask] // kp]
        if len(denom) == 1:
            f[lo:hi] = -g / denom[0]
        else:
            past = f[max(0, lo - len(denom) + 1):lo][::-1]
            zi = lfiltic([1.0], denom, past)
            f[lo:hi], _ = lfilter([1.0], denom, -g, zi=zi)
        lo = hi
    return f
