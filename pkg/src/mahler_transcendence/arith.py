"""Exact rational scalars and dense univariate polynomials over Q.

Scalars are :class:`fractions.Fraction`, which is always kept in lowest terms
with a positive denominator.  :class:`Poly` is an immutable dense polynomial
whose coefficient ``i`` multiplies ``z**i``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce, total_ordering
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]

_LITERAL = re.compile(r"-?[0-9]+(/[0-9]+)?")


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal such as ``"7"`` or ``"-3/2"``.

    No whitespace, decimal points or signs on the denominator are accepted.
    """
    if not isinstance(text, str) or not _LITERAL.fullmatch(text):
        raise ValueError(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in rational literal: {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x: Scalar) -> str:
    return str(Fraction(x))


@total_ordering
class _MinusInfinity:
    """Degree of the zero polynomial; compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-inf-degree")

    def __repr__(self):
        return "-inf"


MINUS_INFINITY = _MinusInfinity()


class Poly:
    """Immutable dense polynomial with exact rational coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "_c", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def from_literals(cls, literals: Sequence[str]) -> "Poly":
        return cls(parse_rational(s) for s in literals)

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> "Poly":
        return cls([0] * n + [c])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else MINUS_INFINITY

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def valuation(self):
        """Order of vanishing at z = 0 (``MINUS_INFINITY`` is never returned;
        the zero polynomial raises)."""
        if not self._c:
            raise ValueError("valuation of the zero polynomial")
        return next(i for i, c in enumerate(self._c) if c != 0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._c):
            return self._c[i]
        return Fraction(0)

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Poly([other])._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __bool__(self):
        return bool(self._c)

    # arithmetic

    def __neg__(self):
        return Poly(-c for c in self._c)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self._c), len(other._c))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self._c)
        other = _as_poly(other)
        if not self._c or not other._c:
            return Poly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dq = len(other._c) - 1
        lead = other._c[-1]
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lead
            if c:
                quot[i - dq] = c
                for j, b in enumerate(other._c):
                    rem[i - dq + j] -= c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        return poly_eval(self, x)

    # structural helpers

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ValueError("zero polynomial has no monic associate")
        return self * (1 / self.leading)

    def substitute_power(self, k: int) -> "Poly":
        """Return p(z**k)."""
        out = [Fraction(0)] * ((len(self._c) - 1) * k + 1) if self._c else []
        for i, c in enumerate(self._c):
            out[i * k] = c
        return Poly(out)

    def truncate(self, n: int) -> "Poly":
        """Keep the terms of degree < n."""
        return Poly(self._c[:n])

    def shift_down(self, s: int) -> "Poly":
        """Divide by z**s; the low terms must vanish."""
        if any(self._c[:s]):
            raise ValueError(f"polynomial is not divisible by z^{s}")
        return Poly(self._c[s:])

    def reversed(self, d: int | None = None) -> "Poly":
        """Coefficient reversal z**d * p(1/z), with d defaulting to the degree."""
        if d is None:
            d = len(self._c) - 1
        return Poly(self[d - i] for i in range(d + 1))

    def to_literals(self) -> list[str]:
        return [format_rational(c) for c in self._c]

    def to_str(self, var: str = "z", descending: bool = False) -> str:
        if not self._c:
            return "0"
        parts = []
        powers = range(len(self._c) - 1, -1, -1) if descending else range(len(self._c))
        for i in powers:
            c = self._c[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({self.to_str()})"

    __str__ = to_str


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly([x])
    raise TypeError(f"cannot interpret {x!r} as a polynomial")


def poly_eval(p: Poly, x):
    """Horner evaluation; exact when ``x`` is rational."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    if isinstance(acc, int):
        return Fraction(acc)
    return acc


def poly_derivative(p: Poly) -> Poly:
    return Poly(i * c for i, c in enumerate(p.coeffs) if i > 0)


def _primitive_int(coeffs: Sequence[Fraction]) -> list[int]:
    """Scale a rational coefficient vector to coprime integers, sign kept."""
    den = reduce(lcm, (c.denominator for c in coeffs), 1)
    ints = [int(c * den) for c in coeffs]
    g = reduce(gcd, ints, 0)
    return [v // g for v in ints] if g > 1 else ints


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials (lowest degree first)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        la = a[-1]
        a = [lb * c for c in a]
        for j, c in enumerate(b):
            a[shift + j] -= la * c
        while a and a[-1] == 0:
            a.pop()
    return a


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q by the primitive-part Euclidean scheme."""
    if p.is_zero and q.is_zero:
        raise ValueError("gcd undefined for two zero polynomials")
    if q.is_zero:
        return p.monic()
    if p.is_zero:
        return q.monic()
    a, b = _primitive_int(p.coeffs), _primitive_int(q.coeffs)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, (_primitive_int([Fraction(c) for c in r]) if r else [])
    return Poly(a).monic()


def clear_denominators(row: Sequence[Scalar]) -> list[int]:
    """Multiply a rational vector by the lcm of its denominators."""
    fr = [Fraction(x) for x in row]
    den = reduce(lcm, (c.denominator for c in fr), 1)
    return [int(c * den) for c in fr]


def series_divide(p: Poly, q: Poly, n: int) -> list[Fraction]:
    """First ``n`` power-series coefficients of p/q (requires q(0) != 0)."""
    if q[0] == 0:
        raise ValueError("series division needs q(0) != 0")
    q0 = q[0]
    qc = q.coeffs
    out: list[Fraction] = []
    for i in range(n):
        acc = p[i]
        for j in range(1, min(i, len(qc) - 1) + 1):
            acc -= qc[j] * out[i - j]
        out.append(acc / q0)
    return out
