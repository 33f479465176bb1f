"""Scalar layer: arithmetic, kernels, and adaptive summation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from stieltjes_audit.xreal import (NonConvergenceError, XReal, as_xreal,
                                   bose_kernel, decimal_digits_for, exp,
                                   format_decimal, log, loglog_power_kernel,
                                   omega_kernel, pow_, sum_series)

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=997)


def ulp_bound(prec, scale=16):
    return as_xreal(Fraction(scale, 2 ** prec), prec)


def test_construction_and_precision():
    x = XReal(3, 128)
    assert x.precision == 128
    assert XReal(x).precision == 128
    assert XReal(x, 192).precision == 192
    assert as_xreal(Fraction(1, 3), 96).precision == 96
    with pytest.raises(ValueError):
        XReal(1, 2)


def test_string_round_trip():
    x = as_xreal(Fraction(22, 7), 256)
    s = x.decimal(decimal_digits_for(256))
    assert abs(XReal(s, 256) - x) <= ulp_bound(200)


@given(a=rationals, b=rationals)
def test_field_ops_match_fraction(a, b):
    prec = 192
    xa, xb = as_xreal(a, prec), as_xreal(b, prec)
    assert abs((xa + xb) - (a + b)) <= ulp_bound(prec) * (1 + abs(a + b))
    assert abs((xa - xb) - (a - b)) <= ulp_bound(prec) * (1 + abs(a - b))
    assert abs((xa * xb) - (a * b)) <= ulp_bound(prec) * (1 + abs(a * b))
    if b != 0:
        assert abs((xa / xb) - Fraction(a, b)) <= ulp_bound(prec) * (1 + abs(Fraction(a, b)))


@given(a=rationals, b=rationals)
def test_comparisons_match_fraction(a, b):
    xa, xb = as_xreal(a, 160), as_xreal(b, 160)
    assert (xa < xb) == (a < b)
    assert (xa == xb) == (a == b)
    assert (xa >= xb) == (a >= b)
    if a != b:
        # mixed comparison is exact (mpq vs mpfr), so only the strict case
        # is stable under the rounding of a itself
        assert (xa < b) == (a < b)


def test_pow_variants():
    x = as_xreal(2, 256)
    assert x ** 10 == 1024
    assert abs(pow_(x, Fraction(1, 2)) * pow_(x, Fraction(1, 2)) - 2) <= ulp_bound(240)
    assert abs(pow_(9, Fraction(3, 2), 128) - 27) <= ulp_bound(110)


def test_exp_log_inverse():
    for q in (Fraction(1, 7), Fraction(5, 2), Fraction(9)):
        x = as_xreal(q, 224)
        assert abs(log(exp(x)) - x) <= ulp_bound(200) * (1 + abs(q))


def test_omega_kernel_endpoints_and_interior():
    # 1/(1-y) + 1/log(y), continued to 1 at y=0 and 1/2 at y=1
    assert omega_kernel(0, 192) == 1
    assert omega_kernel(1, 192) == Fraction(1, 2)
    y = as_xreal(Fraction(1, 3), 192)
    direct = 1 / (1 - y) + 1 / log(y)
    assert abs(omega_kernel(y) - direct) <= ulp_bound(180)


def test_omega_kernel_near_one_is_smooth():
    # the direct formula is catastrophically cancellative here
    y = 1 - as_xreal(Fraction(1, 2 ** 80), 256)
    v = omega_kernel(y)
    assert abs(v - Fraction(1, 2)) <= as_xreal(Fraction(1, 2 ** 75), 256)


def test_bose_kernel():
    # 1/(e^x - 1) - 1/x, continued to -1/2 at x=0
    assert bose_kernel(0, 192) == Fraction(-1, 2)
    x = as_xreal(1, 192)
    assert abs(bose_kernel(x) - (1 / (exp(x) - 1) - 1)) <= ulp_bound(180)
    tiny = as_xreal(Fraction(1, 2 ** 60), 192)
    assert abs(bose_kernel(tiny) + Fraction(1, 2)) <= as_xreal(Fraction(1, 2 ** 58), 192)
    # survives arguments that overflow e^x
    big = bose_kernel(as_xreal(10 ** 9, 192))
    assert abs(big + Fraction(1, 10 ** 9)) <= as_xreal(Fraction(1, 10 ** 17), 192)


def test_loglog_power_kernel():
    e_inv = exp(as_xreal(-1, 192))
    assert abs(loglog_power_kernel(e_inv, 1)) <= ulp_bound(180)
    y = exp(-exp(as_xreal(1, 192)))
    assert abs(loglog_power_kernel(y, 3) - 1) <= ulp_bound(170)
    assert loglog_power_kernel(as_xreal(Fraction(1, 2), 192), 0) == 1


def test_format_decimal_shapes():
    x = as_xreal(Fraction(-355, 113), 128)
    s = format_decimal(x.raw, 8)
    assert s.startswith("-3.141592") and "e+00" in s
    assert format_decimal(as_xreal(0, 64).raw, 10) == "0"
    assert decimal_digits_for(256) >= 75


def test_sum_series_geometric():
    res = sum_series(lambda n: as_xreal(Fraction(1, 2 ** (n + 1)), 160),
                     as_xreal(Fraction(1, 2 ** 120), 160), prec=160)
    assert res.converged
    assert abs(res.value - 1) <= as_xreal(Fraction(1, 2 ** 110), 160)
    assert res.error_estimate < as_xreal(Fraction(1, 2 ** 100), 160)


def test_sum_series_basel_accelerated():
    # slowly convergent; extrapolation must beat the raw 1/N partial-sum error
    target = XReal("1.6449340668482264364724151666460251892189499012068", 256)
    res = sum_series(lambda n: as_xreal(Fraction(1, (n + 1) ** 2), 256),
                     XReal("1e-24", 256), max_terms=60000, depth=7, prec=256)
    assert res.converged
    assert res.terms_used < 60000
    assert abs(res.value - target) <= XReal("5e-24", 256)


def test_sum_series_nonconvergence():
    with pytest.raises(NonConvergenceError):
        sum_series(lambda n: as_xreal(Fraction(1, n + 1), 128),
                   XReal("1e-40", 128), max_terms=2000)


@settings(max_examples=25)
@given(st.integers(min_value=2, max_value=40))
def test_sum_series_error_estimate_honest(k):
    # tail of a geometric series with known closed form
    res = sum_series(lambda n: as_xreal(Fraction(1, k ** n), 128),
                     as_xreal(Fraction(1, 2 ** 100), 128), prec=128)
    true = Fraction(k, k - 1)
    assert abs(res.value - true) <= res.error_estimate + as_xreal(Fraction(1, 2 ** 100), 128)
