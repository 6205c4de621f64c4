from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mahler_transcendence.arith import Poly
from mahler_transcendence.document import FIXTURE_NAMES
from mahler_transcendence.equation import (
    SEEDED,
    SOLVED,
    CoefficientError,
    EquationError,
    MahlerEquation,
    compute_coefficients,
    degree_bounds,
    equation_from_product,
    float_coefficients,
    residual_check,
    validate_equation,
)


def baum_sweet(n):
    b = [0] * (n + 1)
    b[0] = 1
    for i in range(1, n + 1):
        if i % 2 == 1:
            b[i] = b[(i - 1) // 2]
        elif i % 4 == 0:
            b[i] = b[i // 4]
        else:
            b[i] = 0
    return b


def thue_morse(n):
    return [(-1) ** bin(i).count("1") for i in range(n + 1)]


def truncated_product(r: Poly, k: int, n: int) -> list[Fraction]:
    """prod_{j : k^j <= n} r(z^(k^j)) truncated to n + 1 terms."""
    acc = Poly([1])
    kp = 1
    while kp <= n:
        acc = (acc * r.substitute_power(kp)).truncate(n + 1)
        kp *= k
    return [acc[i] for i in range(n + 1)]


def direct_residual(eq, coeffs):
    f = Poly(coeffs)
    total = Poly()
    for i, a in enumerate(eq.coefficients):
        total = total + a * f.substitute_power(eq.k ** i)
    return total


def test_validate_rudin_shapiro(fixtures):
    rep = validate_equation(fixtures["rudin_shapiro"])
    assert (rep.height, rep.order_at_zero, rep.d, rep.k) == (1, 0, 2, 2)


def test_validate_dumas(fixtures):
    rep = validate_equation(fixtures["dumas"])
    assert (rep.height, rep.order_at_zero) == (12, 3)
    assert rep.seed_horizon == 6


@pytest.mark.parametrize("k, coeffs, message", [
    (1, [[1], [-1]], "k must be >= 2"),
    (2, [[1]], "d must be >= 1"),
    (2, [[], [1]], "a_0 must not be the zero polynomial"),
    (2, [[1], [], []], "at least one of a_1..a_d"),
])
def test_validate_errors(k, coeffs, message):
    with pytest.raises(EquationError, match=message):
        validate_equation(MahlerEquation(k, coeffs, [1]))


def test_dilcher_stolarsky_f_prefix(fixtures):
    assert compute_coefficients(fixtures["dilcher_stolarsky_f"], 3).coeffs == (1, 1, 1, 0)


def test_baum_sweet_prefix(fixtures):
    assert list(compute_coefficients(fixtures["baum_sweet"], 7).coeffs) == [1, 1, 0, 1, 1, 0, 0, 1]
    assert list(compute_coefficients(fixtures["baum_sweet"], 300).coeffs) == baum_sweet(300)


def test_thue_morse_prefix(fixtures):
    assert list(compute_coefficients(fixtures["thue_morse"], 8).coeffs) == [1, -1, -1, 1, -1, 1, 1, -1, -1]
    assert list(compute_coefficients(fixtures["thue_morse"], 300).coeffs) == thue_morse(300)


def test_rudin_shapiro_matches_recurrences(fixtures):
    n = 256
    r = [0] * (n + 1)
    r[0] = 1
    for i in range(1, n + 1):
        if i % 2 == 0:
            r[i] = r[i // 2]
        elif i % 4 == 1:
            r[i] = r[(i - 1) // 4]
        else:
            r[i] = -r[(i - 1) // 2]
    assert list(compute_coefficients(fixtures["rudin_shapiro"], n).coeffs) == r


def test_dumas_seeds_are_consistent(fixtures):
    prefix = compute_coefficients(fixtures["dumas"], 40)
    assert list(prefix.coeffs[:11]) == [0, 1, 1, 2, 1, 5, 2, 7, 1, 9, 5]
    assert prefix.source[:11] == (SEEDED,) * 11
    assert set(prefix.source[11:]) == {SOLVED}


def test_dilcher_stolarsky_coefficients_are_binary(fixtures):
    for name in ("dilcher_stolarsky_f", "dilcher_stolarsky_g"):
        assert set(compute_coefficients(fixtures[name], 500).coeffs) <= {0, 1}


def test_insufficient_initial_terms(fixtures):
    eq = fixtures["dumas"].with_initial_terms([0, 1, 1])
    with pytest.raises(CoefficientError, match="insufficient initial terms"):
        compute_coefficients(eq, 10)


def test_inconsistent_seed(fixtures):
    eq = fixtures["thue_morse"].with_initial_terms([1, 999])
    with pytest.raises(CoefficientError, match="inconsistent seed"):
        compute_coefficients(eq, 5)


def test_nonzero_pivot_at_order_zero_forces_zero_seed():
    # F(z) - 2 F(z^2) = 0: the order-0 equation reads -f(0) = 0
    eq = MahlerEquation(2, [[1], [-2]], [1])
    with pytest.raises(CoefficientError, match="inconsistent seed"):
        compute_coefficients(eq, 3)
    assert compute_coefficients(eq.with_initial_terms([0]), 3).coeffs == (0, 0, 0, 0)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_residual_vanishes_on_computed_prefix(fixtures, name):
    eq = fixtures[name]
    prefix = compute_coefficients(eq, 60)
    rep = residual_check(eq, prefix)
    assert rep.ok
    assert rep.verified_order >= 60 - eq.order_at_zero
    # independent route: expand with polynomial arithmetic
    total = direct_residual(eq, prefix.coeffs)
    assert all(total[i] == 0 for i in range(60 - eq.order_at_zero + 1))


def test_residual_rudin_shapiro_length_16(fixtures):
    eq = fixtures["rudin_shapiro"]
    assert residual_check(eq, compute_coefficients(eq, 15)).verified_order >= 15


def test_residual_detects_corrupted_seed(fixtures):
    eq = fixtures["thue_morse"]
    rep = residual_check(eq, [1, 999, -1, 1, -1, 1])
    assert not rep.ok
    assert rep.first_failure == 1
    assert rep.verified_order == 0


def test_residual_zero_function(fixtures):
    eq = fixtures["rudin_shapiro"]
    rep = residual_check(eq, [0] * 10)
    assert rep.ok
    assert rep.verified_order == eq.height + eq.k ** eq.d * 9


def test_equation_from_product_stern():
    eq = equation_from_product(Poly([1, 1, 1]), Poly([1]), 2)
    assert eq.coefficients == (Poly([1]), Poly([-1, -1, -1]))
    assert eq.initial_terms == (1,)
    prefix = compute_coefficients(eq, 15)
    expected = Poly([1])
    for n in range(5):
        expected = expected * Poly([1, 1, 1]).substitute_power(2 ** n)
    assert list(prefix.coeffs) == [expected[i] for i in range(16)]


def test_equation_from_product_partitions():
    eq = equation_from_product(Poly([1]), Poly([1, -1]), 2)
    assert eq.coefficients == (Poly([1, -1]), Poly([-1]))
    # prod 1/(1 - z^(2^n)) counts binary partitions
    assert list(compute_coefficients(eq, 10).coeffs) == [1, 1, 2, 2, 4, 4, 6, 6, 10, 10, 14]


def test_equation_from_product_refusals():
    with pytest.raises(EquationError, match="product does not converge"):
        equation_from_product(Poly([2, 1]), Poly([1]), 3)
    with pytest.raises(EquationError, match="pole at 0"):
        equation_from_product(Poly([1]), Poly([0, 1]), 2)


def series_divide_local(p, q, n):
    out = []
    for i in range(n):
        acc = p[i] - sum(q[j] * out[i - j] for j in range(1, min(i, q.degree) + 1))
        out.append(acc / q[0])
    return out


@pytest.mark.parametrize("name, h, k, d, expected", [
    ("dilcher_stolarsky_f", 4, 4, 2, (0, 0)),
    ("rudin_shapiro", 1, 2, 2, (1, 1)),
])
def test_degree_bounds_examples(fixtures, name, h, k, d, expected):
    eq = fixtures[name]
    assert (eq.height, eq.k, eq.d) == (h, k, d)
    assert degree_bounds(eq) == expected


def test_degree_bounds_constant_coefficients():
    assert degree_bounds(MahlerEquation(3, [[2], [-1], [5]], [1])) == (0, 0)


def test_degree_bounds_hold_for_geometric(fixtures):
    bq, bp = degree_bounds(fixtures["geometric"])
    assert 1 <= bq and 0 <= bp


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_prefix_determinism(fixtures, name):
    eq = fixtures[name]
    long = compute_coefficients(eq, 120)
    for m in (0, 1, 7, 33, 119):
        short = compute_coefficients(eq, m)
        assert short.coeffs == long.coeffs[: m + 1]
        assert short.source == long.source[: m + 1]


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_float_extension_matches_exact(fixtures, name):
    eq = fixtures[name]
    exact = compute_coefficients(eq, 4095).coeffs
    approx = float_coefficients(eq, 4096, exact_terms=16)
    assert np.array_equal(approx, np.array([float(x) for x in exact]))


def test_float_extension_with_filtered_a0():
    # a_0 = 1 - z/2 is not a monomial, exercising the linear filter path
    eq = MahlerEquation(2, [[1, Fraction(-1, 2)], [-1, 0, 1]], [1])
    exact = compute_coefficients(eq, 999).coeffs
    approx = float_coefficients(eq, 1000, exact_terms=8)
    assert np.allclose(approx, [float(x) for x in exact], rtol=1e-12, atol=1e-12)


@given(
    st.lists(st.integers(-3, 3), min_size=1, max_size=3),
    st.lists(st.integers(-3, 3), min_size=0, max_size=2),
    st.integers(2, 4),
)
@settings(max_examples=30, deadline=None)
def test_product_consistency(tail_num, tail_den, k):
    numer, denom = Poly([1] + tail_num), Poly([1] + tail_den)
    eq = equation_from_product(numer, denom, k)
    n = 40
    # r = numer/denom as a series, then the truncated product
    r_series = Poly(series_divide_local(numer, denom, n + 1))
    assert list(compute_coefficients(eq, n).coeffs) == truncated_product(r_series, k, n)
