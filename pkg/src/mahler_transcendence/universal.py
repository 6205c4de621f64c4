"""Universal rationality/transcendence test via the rank of a Hankel matrix.

For a Mahler equation with parameters k, d and H = max deg a_i, let

    kappa = floor(H(k-1) / (k^(d+1) - 2k^d + 1)) + floor(H / (k^(d-1)(k-1))) + 1.

F is rational exactly when the (1 + kappa) x (1 + H + kappa(k^d + ... + 1))
Hankel matrix of its coefficients is rank deficient.  In that case a left null
vector yields the denominator, and the candidate P/Q is certified against
enough coefficients of F that agreement forces equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .arith import Poly, clear_denominators, format_rational, parse_rational, poly_gcd, series_divide
from .equation import MahlerEquation, SeriesPrefix, compute_coefficients, degree_bounds, validate_equation
from .verdict import UNIVERSAL_TEST, Tag, Verdict


class CertificationError(RuntimeError):
    """A reconstructed P/Q failed to match F; indicates a bug, not a math outcome."""


def kappa(eq: MahlerEquation) -> int:
    """Row parameter of the test: one more than the two degree bounds combined."""
    _, bound_p = degree_bounds(eq)
    return bound_p + 1


def geometric_sum(k: int, d: int) -> int:
    """k^d + ... + k + 1, i.e. (k^(d+1) - 1)/(k - 1) without dividing."""
    return sum(k ** i for i in range(d + 1))


def hankel_shape(eq: MahlerEquation, kap: int) -> tuple[int, int]:
    return 1 + kap, 1 + eq.height + kap * geometric_sum(eq.k, eq.d)


def certification_order(eq: MahlerEquation, kap: int) -> int:
    """ceil(H + kappa k^(d+1)/(k-1)): agreement through this order forces F = P/Q."""
    k = eq.k
    return eq.height + -(-kap * k ** (eq.d + 1) // (k - 1))


@dataclass(frozen=True)
class HankelMatrix:
    rows: int
    cols: int
    window: tuple[Fraction, ...]

    def entry(self, i: int, j: int) -> Fraction:
        """1-based (i, j) entry, equal to f(i + j - 2)."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError((i, j))
        return self.window[i + j - 2]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.window[i:i + self.cols]) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols


def build_hankel(prefix: SeriesPrefix | Sequence, eq: MahlerEquation,
                 kap: int | None = None) -> HankelMatrix:
    if kap is None:
        kap = kappa(eq)
    rows, cols = hankel_shape(eq, kap)
    coeffs = prefix.coeffs if isinstance(prefix, SeriesPrefix) else tuple(prefix)
    need = rows + cols - 1
    if len(coeffs) < need:
        raise ValueError(f"prefix too short: need f(0..{need - 1}), got {len(coeffs)} terms")
    return HankelMatrix(rows, cols, tuple(Fraction(x) for x in coeffs[:need]))


def dump_matrix(m: HankelMatrix | Sequence[Sequence]) -> str:
    rows = m.to_rows() if isinstance(m, HankelMatrix) else [list(r) for r in m]
    ncols = len(rows[0]) if rows else 0
    lines = [f"{len(rows)} {ncols}"]
    lines.extend(" ".join(format_rational(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def read_matrix_dump(text: str) -> list[list[Fraction]]:
    lines = text.splitlines()
    nrows, ncols = (int(x) for x in lines[0].split(" "))
    rows = [[parse_rational(x) for x in line.split(" ")] for line in lines[1:1 + nrows]]
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise ValueError("matrix dump does not match its header")
    return rows


def _bareiss(rows: list[list[int]], pivot_cols: int) -> int:
    """In-place fraction-free elimination over the first ``pivot_cols`` columns.

    Columns beyond ``pivot_cols`` (an augmentation) are carried along.  Returns
    the rank; the zero rows of the leading block end up at the bottom.
    """
    nrows = len(rows)
    width = len(rows[0]) if rows else 0
    prev = 1
    r = 0
    for c in range(pivot_cols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv_row = rows[r]
        piv = piv_row[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            a = row[c]
            for j in range(c + 1, width):
                # exact by Sylvester's identity
                row[j] = (piv * row[j] - a * piv_row[j]) // prev
            row[c] = 0
        prev = piv
        r += 1
    return r


def exact_rank(m: HankelMatrix | Sequence[Sequence]) -> int:
    """Rank over Q by Bareiss elimination on the denominator-cleared rows."""
    rows = m.to_rows() if isinstance(m, HankelMatrix) else [list(r) for r in m]
    if not rows or not rows[0]:
        return 0
    ints = [clear_denominators(r) for r in rows]
    return _bareiss(ints, len(ints[0]))


def left_null_vector(m: HankelMatrix | Sequence[Sequence]) -> list[int] | None:
    """A nonzero integer q with q . M = 0, or None when M has full row rank.

    Taken from the last row of the eliminated augmented matrix [M | I],
    scaled to content 1 with a positive leading entry.
    """
    rows = m.to_rows() if isinstance(m, HankelMatrix) else [list(r) for r in m]
    n = len(rows)
    ncols = len(rows[0])
    aug = []
    for i, r in enumerate(rows):
        # row i is scaled by s_i = lcm of its denominators; carrying diag(s)
        # makes the augmented block record q directly
        s_i = lcm(*(Fraction(x).denominator for x in r))
        aug.append(clear_denominators(r) + [s_i if t == i else 0 for t in range(n)])
    rank = _bareiss(aug, ncols)
    if rank == n:
        return None
    q = aug[-1][ncols:]
    g = 0
    for x in q:
        g = gcd(g, x)
    q = [x // g for x in q]
    lead = next(x for x in q if x)
    return [-x for x in q] if lead < 0 else q


def reconstruct_rational(eq: MahlerEquation, p: Poly, q: Poly, kap: int | None = None,
                         prefix: SeriesPrefix | None = None) -> bool:
    """True iff P/Q agrees with F through the certification order, hence F = P/Q."""
    if q[0] == 0:
        raise ValueError("precondition violated: Q(0) must be nonzero")
    if kap is None:
        kap = kappa(eq)
    if p.degree >= kap + 1 or q.degree >= kap + 1:
        raise ValueError("precondition violated: deg P and deg Q must be at most kappa")
    top = certification_order(eq, kap)
    if prefix is None or len(prefix) < top + 1:
        prefix = compute_coefficients(eq, top)
    return series_divide(p, q, top + 1) == list(prefix.coeffs[: top + 1])


def _reduce(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Lowest terms with Q(0) = 1."""
    if p.is_zero:
        return Poly(), Poly([1])
    g = poly_gcd(p, q)
    p, q = p // g, q // g
    if q[0] == 0:
        raise CertificationError("denominator vanishes at 0 after reduction")
    c = q[0]
    return p * (1 / c), q * (1 / c)


def universal_verdict(eq: MahlerEquation, extra_kappa: int = 0) -> Verdict:
    """Decide rational vs transcendental from the Hankel rank.

    ``extra_kappa`` enlarges kappa beyond the formula value; the verdict does
    not depend on it.
    """
    validate_equation(eq)
    kap = kappa(eq) + extra_kappa
    rows, cols = hankel_shape(eq, kap)
    top = max(rows + cols - 2, certification_order(eq, kap))
    prefix = compute_coefficients(eq, top)
    m = build_hankel(prefix, eq, kap)
    qvec = left_null_vector(m)
    if qvec is None:
        return Verdict(Tag.TRANSCENDENTAL, UNIVERSAL_TEST, rank=rows, shape=(rows, cols))
    rank = exact_rank(m)
    # Q(z) = q_kappa + q_(kappa-1) z + ... + q_0 z^kappa
    q = Poly(reversed(qvec))
    p = (q * Poly(prefix.coeffs[:kap])).truncate(kap)
    p, q = _reduce(p, q)
    if not reconstruct_rational(eq, p, q, kap, prefix):
        raise CertificationError(f"certification failed for P = {p}, Q = {q}")
    return Verdict(Tag.RATIONAL, UNIVERSAL_TEST, rank=rank, shape=(rows, cols),
                   numerator=p, denominator=q)
