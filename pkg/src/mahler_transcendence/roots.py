"""Simultaneous root approximation (Aberth-Ehrlich iteration)."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import mpmath

from .arith import Poly


class RootFindingError(ArithmeticError):
    pass


@dataclass(frozen=True)
class RootApproximation:
    roots: tuple[complex, ...]
    radii: tuple[float, ...]
    gap: float
    precision_bits: int = 53
    iterations: int = 0


def _horner(coeffs, x):
    """p(x) and p'(x), coefficients highest degree first."""
    p = coeffs[0]
    dp = 0 * x
    for c in coeffs[1:]:
        dp = dp * x + p
        p = p * x + c
    return p, dp


def _aberth(coeffs, tol, max_iter, conv):
    n = len(coeffs) - 1
    lead = coeffs[0]
    radius = 1 + max(abs(c / lead) for c in coeffs[1:])
    z = [conv(radius * cmath.exp(1j * (2 * math.pi * j / n + 0.4))) for j in range(n)]
    for it in range(1, max_iter + 1):
        worst = 0
        for j in range(n):
            p, dp = _horner(coeffs, z[j])
            if p == 0:
                continue
            ratio = p / dp if dp != 0 else p
            s = sum(1 / (z[j] - z[i]) for i in range(n) if i != j)
            w = ratio / (1 - ratio * s)
            z[j] = z[j] - w
            worst = max(worst, abs(w))
        if worst < tol / 10:
            return z, it
    raise RootFindingError("no convergence")


def _validate(coeffs, roots, tol) -> bool:
    n = len(coeffs) - 1
    scale = sum(abs(c) for c in coeffs)
    for r in roots:
        p, _ = _horner(coeffs, r)
        if abs(p) > tol * scale * max(1, abs(r)) ** n:
            return False
    return True


def _inclusion_radii(coeffs, roots):
    # each disk |x - z_j| <= n |p(z_j)| / |a_n prod_{i != j}(z_j - z_i)| holds a root
    n = len(roots)
    out = []
    for j, zj in enumerate(roots):
        p, _ = _horner(coeffs, zj)
        prod = coeffs[0]
        for i, zi in enumerate(roots):
            if i != j:
                prod *= zj - zi
        out.append(float(n * abs(p) / abs(prod)) if prod != 0 else math.inf)
    return out


def approximate_roots(p: Poly | Sequence, tol: float = 1e-12, max_iter: int = 1000) -> RootApproximation:
    """All complex roots of a squarefree polynomial to within ``tol``.

    Runs in binary64 first and retries once at 128-bit precision if the
    iteration stalls or the residual check fails.
    """
    poly = p if isinstance(p, Poly) else Poly(p)
    if poly.degree < 1:
        raise ValueError("need a nonconstant polynomial")
    rational = list(reversed(poly.coeffs))

    try:
        coeffs = [complex(float(c)) for c in rational]
        roots, its = _aberth(coeffs, tol, max_iter, complex)
        if not _validate(coeffs, roots, tol):
            raise RootFindingError("residual check failed")
        radii = _inclusion_radii(coeffs, roots)
        bits = 53
    except (RootFindingError, ZeroDivisionError, OverflowError):
        with mpmath.workprec(128):
            coeffs = [mpmath.mpc(mpmath.mpf(c.numerator) / c.denominator) for c in rational]
            try:
                roots, its = _aberth(coeffs, tol, max_iter, mpmath.mpc)
            except ZeroDivisionError:
                raise RootFindingError("no convergence") from None
            if not _validate(coeffs, roots, tol):
                raise RootFindingError("no convergence: residual check failed")
            radii = _inclusion_radii(coeffs, roots)
            roots = [complex(r) for r in roots]
        bits = 128

    roots = [complex(r) for r in roots]
    order = sorted(range(len(roots)), key=lambda i: (-roots[i].real, roots[i].imag))
    roots = [roots[i] for i in order]
    radii = [radii[i] for i in order]
    gap = min((abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1:]), default=math.inf)
    return RootApproximation(tuple(roots), tuple(radii), gap, bits, its)
