"""Exact rational building blocks (Bernoulli numbers, harmonic numbers, series coefficients).

Everything in this module is integer/Fraction arithmetic, so results are exact
and safe to use as ground truth in floating-point error analysis.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction

_lock = threading.Lock()

# zigzag (up/down) numbers via the Seidel triangle; zigzag[2n-1] is the
# tangent number T_n, which gives |B_2n| without any rational recurrence
_zigzag: list[int] = [1]
_seidel_row: list[int] = [1]


def _extend_zigzag(n: int) -> None:
    global _seidel_row
    while len(_zigzag) <= n:
        row = _seidel_row
        k = len(row)
        new = [0] * (k + 1)
        # boustrophedon: accumulate the previous row in alternating direction
        if k % 2 == 1:
            acc = 0
            for i in range(k):
                acc += row[k - 1 - i]
                new[i + 1] = acc
            new[0] = 0
            new = new[::-1]
        else:
            acc = 0
            for i in range(k):
                acc += row[i]
                new[i + 1] = acc
            new[0] = 0
        # zigzag number is the accumulated end of the new row
        _zigzag.append(max(new[0], new[-1]))
        _seidel_row = new


def zigzag_number(n: int) -> int:
    """Return the n-th zigzag number (1, 1, 1, 2, 5, 16, 61, 272, ...)."""
    if n < 0:
        raise ValueError("zigzag index must be nonnegative")
    with _lock:
        _extend_zigzag(n)
        return _zigzag[n]


def tangent_number(n: int) -> int:
    # T_1 = 1, T_2 = 2, T_3 = 16, ...
    if n < 1:
        raise ValueError("tangent index starts at 1")
    return zigzag_number(2 * n - 1)


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n with the B_1 = -1/2 convention."""
    if n < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    m = n // 2
    t = tangent_number(m)
    # |B_2m| = 2m * T_m / (2^2m (2^2m - 1)), sign (-1)^(m+1)
    mag = Fraction(2 * m * t, (1 << n) * ((1 << n) - 1))
    return mag if m % 2 == 1 else -mag


def harmonic(n: int) -> Fraction:
    """H_n = sum_{k=1}^n 1/k as an exact Fraction; H_0 = 0."""
    if n < 0:
        raise ValueError("harmonic index must be nonnegative")
    h = Fraction(0)
    for k in range(1, n + 1):
        h += Fraction(1, k)
    return h


_log_recip_coeffs: list[Fraction] = [Fraction(1)]


def log_reciprocal_coeff(k: int) -> Fraction:
    """Taylor coefficient a_k of z / log(1+z) = sum_k a_k z^k.

    a_0 = 1, a_1 = 1/2, a_2 = -1/12, a_3 = 1/24, a_4 = -19/720, ...
    These drive the endpoint expansion of the 1/(1-y) + 1/log(y) kernel.
    """
    if k < 0:
        raise ValueError("coefficient index must be nonnegative")
    with _lock:
        while len(_log_recip_coeffs) <= k:
            n = len(_log_recip_coeffs)
            # from (z/log(1+z)) * (log(1+z)/z) = 1
            s = Fraction(0)
            for j in range(n):
                s += _log_recip_coeffs[j] * Fraction((-1) ** (n - j), n - j + 1)
            _log_recip_coeffs.append(-s)
        return _log_recip_coeffs[k]


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient; raises on negative arguments."""
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be nonnegative")
    return math.comb(n, k)


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial argument must be nonnegative")
    return math.factorial(n)
