"""Zeta values, gamma-function derivatives and the shared constant pool.

All routines here are Euler-Maclaurin based and independent of both the
quadrature engine and the binomial-transform series machinery, so they can
serve as one side of a cross-check without sharing failure modes with the
other side.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Optional, Union

from gmpy2 import mpfr

from . import bell, exact
from .xreal import (
    DEFAULT_PRECISION,
    DomainError,
    NonConvergenceError,
    XReal,
    _convert,
    as_xreal,
    context_for,
)

_MEMO_LOCK = threading.Lock()
_MEMO: dict[tuple, XReal] = {}


def _memoized(key: tuple, builder):
    with _MEMO_LOCK:
        if key in _MEMO:
            return _MEMO[key]
    val = builder()
    with _MEMO_LOCK:
        _MEMO.setdefault(key, val)
    return val


def _pochhammer(s: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= s + i
    return out


def _hurwitz_em(s: int, a, prec: int) -> mpfr:
    """Euler-Maclaurin evaluation of zeta(s, a) for integer s >= 2, a >= 1/4.

    Direct terms up to a fixed cutoff, then tail corrections of increasing
    Bernoulli order until the first dropped one is below target; the cutoff
    doubles in the (never observed) case the corrections bottom out early.
    """
    work = prec + 48
    ctx = context_for(work)
    av = _convert(a, work)
    if not av > 0.249:
        raise DomainError("hurwitz offset must be at least 1/4")
    target = mpfr(2) ** -(prec + 16)
    N = max(64, prec // 4)
    while True:
        direct = mpfr(0, work)
        for n in range(N - 1, -1, -1):  # small terms first
            direct = ctx.add(direct, ctx.pow(ctx.add(av, n), -s))
        X = ctx.add(av, N)
        tail = ctx.div(ctx.pow(X, 1 - s), s - 1)
        tail = ctx.add(tail, ctx.div(ctx.pow(X, -s), 2))
        k = 1
        k_limit = int(3.1 * float(X))
        ok = False
        while k <= k_limit:
            c = exact.bernoulli(2 * k) / exact.factorial(2 * k)
            term = ctx.mul(
                ctx.mul(_convert(c, work), _pochhammer(s, 2 * k - 1)),
                ctx.pow(X, -s - 2 * k + 1),
            )
            if abs(term) < target:
                ok = True
                break
            tail = ctx.add(tail, term)
            k += 1
        if ok:
            return ctx.add(direct, tail)
        N *= 2


def riemann_zeta(s: int, prec: int = DEFAULT_PRECISION) -> XReal:
    """zeta(s) for integer s >= 2."""
    if not isinstance(s, int) or s < 2:
        raise DomainError("riemann_zeta needs an integer s >= 2")
    return _memoized(
        ("zeta", s, prec),
        lambda: XReal._wrap(mpfr(_hurwitz_em(s, 1, prec), prec)),
    )


def hurwitz_zeta(s: int, a, prec: int = DEFAULT_PRECISION) -> XReal:
    """zeta(s, a) for integer s >= 2 and offset a >= 1/4."""
    if not isinstance(s, int) or s < 2:
        raise DomainError("hurwitz_zeta needs an integer s >= 2")
    key_a = a if isinstance(a, (int, Fraction)) else str(as_xreal(a).raw)
    return _memoized(
        ("hurwitz", s, key_a, prec),
        lambda: XReal._wrap(mpfr(_hurwitz_em(s, a, prec), prec)),
    )


def zeta_prime_2(prec: int = DEFAULT_PRECISION) -> XReal:
    """zeta'(2) = -sum log(n)/n^2, Euler-Maclaurin with exact log-derivatives."""

    def build() -> XReal:
        work = prec + 48
        ctx = context_for(work)
        target = mpfr(2) ** -(prec + 16)
        N = max(64, prec // 4)
        while True:
            direct = mpfr(0, work)
            for n in range(N - 1, 1, -1):
                nn = mpfr(n, work)
                direct = ctx.add(direct, ctx.div(ctx.log(nn), ctx.mul(nn, nn)))
            X = mpfr(N, work)
            lnX = ctx.log(X)
            # integral of log x/x^2 from N: (log N + 1)/N, then f(N)/2
            tail = ctx.div(ctx.add(lnX, 1), X)
            tail = ctx.add(tail, ctx.div(lnX, ctx.mul(2, ctx.mul(X, X))))
            # f^(m)(x) = x^(-2-m) (alpha_m log x + beta_m), exact recurrence
            alpha, beta = Fraction(1), Fraction(0)
            deriv_order = 0
            k = 1
            k_limit = int(3.1 * N)
            ok = False
            while k <= k_limit:
                while deriv_order < 2 * k - 1:
                    alpha, beta = (
                        -(2 + deriv_order) * alpha,
                        alpha - (2 + deriv_order) * beta,
                    )
                    deriv_order += 1
                c = exact.bernoulli(2 * k) / exact.factorial(2 * k)
                fm = ctx.mul(
                    ctx.pow(X, -2 - deriv_order),
                    ctx.add(ctx.mul(_convert(alpha, work), lnX), _convert(beta, work)),
                )
                term = ctx.mul(_convert(c, work), fm)
                if abs(term) < target:
                    ok = True
                    break
                tail = ctx.sub(tail, term)
                k += 1
            if ok:
                return XReal._wrap(mpfr(ctx.minus(ctx.add(direct, tail)), prec))
            N *= 2

    return _memoized(("zeta_prime_2", prec), build)


def digamma(x, prec: int = DEFAULT_PRECISION) -> XReal:
    """psi(x) for x > 0 via upward recurrence plus the asymptotic series."""

    def build() -> XReal:
        work = prec + 32
        ctx = context_for(work)
        xv = _convert(x, work)
        if not xv > 0:
            raise DomainError("digamma argument must be positive")
        X0 = (prec + 32) // 4 + 8
        m = max(0, X0 - int(xv))
        acc = mpfr(0, work)
        for i in range(m):
            acc = ctx.add(acc, ctx.div(1, ctx.add(xv, i)))
        X = ctx.add(xv, m)
        psi = ctx.sub(ctx.log(X), ctx.div(1, ctx.mul(2, X)))
        X2 = ctx.mul(X, X)
        Xpow = X2
        target = mpfr(2) ** -(prec + 16)
        k = 1
        while True:
            c = exact.bernoulli(2 * k) / (2 * k)
            term = ctx.div(_convert(c, work), Xpow)
            if abs(term) < target:
                break
            psi = ctx.sub(psi, term)
            if k > 4 * X0:
                raise NonConvergenceError("digamma asymptotic series stalled")
            Xpow = ctx.mul(Xpow, X2)
            k += 1
        return XReal._wrap(mpfr(ctx.sub(psi, acc), prec))

    key_x = x if isinstance(x, (int, Fraction)) else str(as_xreal(x).raw)
    return _memoized(("digamma", key_x, prec), build)


def polygamma(p: int, x, prec: int = DEFAULT_PRECISION) -> XReal:
    """psi^(p)(x) = (-1)^(p+1) p! zeta(p+1, x) for p >= 1."""
    if p < 1:
        raise DomainError("polygamma order must be >= 1; use digamma for p = 0")
    sign = 1 if p % 2 == 1 else -1
    z = hurwitz_zeta(p + 1, x, prec + 16)
    return (z * (sign * exact.factorial(p))).with_precision(prec)


def euler_gamma(prec: int = DEFAULT_PRECISION) -> XReal:
    """Euler's constant, as -psi(1)."""
    return _memoized(("gamma", prec), lambda: -digamma(1, prec))


def pi_const(prec: int = DEFAULT_PRECISION) -> XReal:
    return XReal._wrap(context_for(prec).const_pi())


def log_2pi(prec: int = DEFAULT_PRECISION) -> XReal:
    def build() -> XReal:
        ctx = context_for(prec + 16)
        return XReal._wrap(mpfr(ctx.log(ctx.mul(2, ctx.const_pi())), prec))

    return _memoized(("log_2pi", prec), build)


def zeta_prime_minus_one(prec: int = DEFAULT_PRECISION) -> XReal:
    """zeta'(-1) = (1 - gamma - log 2pi + zeta'(2)/zeta(2)) / 12.

    Obtained by differentiating the functional equation at s = -1; numerically
    about -0.1654211437.
    """

    def build() -> XReal:
        p = prec + 16
        combo = 1 - euler_gamma(p) - log_2pi(p) + zeta_prime_2(p) / riemann_zeta(2, p)
        return (combo / 12).with_precision(prec)

    return _memoized(("zeta_prime_minus_1", prec), build)


def lngamma_real(x, prec: int = DEFAULT_PRECISION) -> XReal:
    """log Gamma(x) for x > 0: climb to the Stirling region, then the series."""
    work = prec + 48
    ctx = context_for(work)
    xv = _convert(x, work)
    if not xv > 0:
        raise DomainError("lngamma argument must be positive")
    X0 = max(10, (prec + 32) // 4 + 8)
    m = max(0, X0 - int(xv))
    acc = mpfr(0, work)
    for i in range(m):
        acc = ctx.add(acc, ctx.log(ctx.add(xv, i)))
    X = ctx.add(xv, m)
    lnX = ctx.log(X)
    L = ctx.mul(ctx.sub(X, mpfr("0.5", work)), lnX)
    L = ctx.sub(L, X)
    L = ctx.add(L, ctx.div(log_2pi(work).raw, 2))
    target = mpfr(2) ** -(prec + 24)
    Xpow = X
    X2 = ctx.mul(X, X)
    k = 1
    while True:
        c = exact.bernoulli(2 * k) / (2 * k * (2 * k - 1))
        term = ctx.div(_convert(c, work), Xpow)
        if abs(term) < target:
            break
        L = ctx.add(L, term)
        if k > 4 * X0:
            raise NonConvergenceError("Stirling series stalled")
        Xpow = ctx.mul(Xpow, X2)
        k += 1
    return XReal._wrap(mpfr(ctx.sub(L, acc), prec))


def gamma_real(x, prec: int = DEFAULT_PRECISION) -> XReal:
    """Gamma(x) for x > 0."""
    ln = lngamma_real(x, prec + 16)
    ctx = context_for(prec + 16)
    return XReal._wrap(mpfr(ctx.exp(ln.raw), prec))


def log_gamma_integer(t: int, prec: int = DEFAULT_PRECISION) -> XReal:
    """log Gamma(t) for integer t >= 1, through the exact factorial."""
    if not isinstance(t, int) or t < 1:
        raise DomainError("log_gamma_integer needs an integer t >= 1")
    if t <= 2:
        return XReal(0, prec)
    ctx = context_for(prec + 16)
    return XReal._wrap(mpfr(ctx.log(mpfr(exact.factorial(t - 1), prec + 16)), prec))


def gamma_derivative(m: int, x=1, prec: int = DEFAULT_PRECISION) -> XReal:
    """m-th derivative of Gamma at x, via the complete Bell polynomial in
    psi(x), psi'(x), ..., psi^(m-1)(x)."""
    if m < 0:
        raise DomainError("derivative order must be nonnegative")
    p = prec + 16

    def build() -> XReal:
        if m == 0:
            y: Union[int, XReal] = 1
        else:
            args = [digamma(x, p)] + [polygamma(j, x, p) for j in range(1, m)]
            y = bell.bell_eval(m, args)
        is_one = isinstance(x, int) and x == 1
        g = XReal(1, p) if is_one else gamma_real(x, p)
        return as_xreal(g * y).with_precision(prec)

    key_x = x if isinstance(x, (int, Fraction)) else str(as_xreal(x).raw)
    return _memoized(("gamma_derivative", m, key_x, prec), build)


def stieltjes_laurent(p: int, prec: int = DEFAULT_PRECISION) -> XReal:
    """gamma_p, the p-th Laurent coefficient constant, by Euler-Maclaurin.

    Uses the limit representation gamma_p = lim [sum_{k<=N} log^p k / k -
    log^{p+1} N / (p+1)] with tail corrections.  The derivatives of
    f(x) = log^p x / x are P_m(log x) / x^{m+1} where the integer-coefficient
    polynomials follow P_{m+1} = P_m' - (m+1) P_m.
    """
    if not isinstance(p, int) or p < 0:
        raise DomainError("stieltjes_laurent order must be a nonnegative integer")

    def build() -> XReal:
        work = prec + 48 + 4 * p
        ctx = context_for(work)
        target = mpfr(2) ** -(prec + 16)
        N = max(64, prec // 4)
        while True:
            # k = 1 contributes log^p(1)/1, i.e. 1 for p = 0 and 0 otherwise
            direct = mpfr(1 if p == 0 else 0, work)
            for k in range(2, N + 1):
                kk = mpfr(k, work)
                direct = ctx.add(direct, ctx.div(ctx.pow(ctx.log(kk), p), kk))
            X = mpfr(N, work)
            lnX = ctx.log(X)
            acc = ctx.sub(direct, ctx.div(ctx.pow(lnX, p + 1), p + 1))
            fN = ctx.div(ctx.pow(lnX, p), X)
            acc = ctx.sub(acc, ctx.div(fN, 2))
            # coeffs[i] is the t^i coefficient of P_m(t), ascending
            coeffs = [0] * p + [1]
            deriv_order = 0
            k = 1
            k_limit = int(3.1 * N)
            ok = False
            while k <= k_limit:
                while deriv_order < 2 * k - 1:
                    dpoly = [i * coeffs[i] for i in range(1, len(coeffs))] + [0]
                    coeffs = [
                        dpoly[i] - (deriv_order + 1) * coeffs[i]
                        for i in range(len(coeffs))
                    ]
                    deriv_order += 1
                poly = mpfr(0, work)
                for c in reversed(coeffs):
                    poly = ctx.add(ctx.mul(poly, lnX), c)
                c2k = exact.bernoulli(2 * k) / exact.factorial(2 * k)
                term = ctx.mul(
                    _convert(c2k, work),
                    ctx.mul(poly, ctx.pow(X, -(2 * k))),
                )
                if abs(term) < target:
                    ok = True
                    break
                acc = ctx.sub(acc, term)
                k += 1
            if ok:
                return XReal._wrap(mpfr(acc, prec))
            N *= 2

    return _memoized(("stieltjes_laurent", p, prec), build)


def zeta_prime_minus_one_glaisher(prec: int = DEFAULT_PRECISION) -> XReal:
    """zeta'(-1) without the functional equation: Euler-Maclaurin on x log x.

    Computes log A = lim [sum_{k<=N} k log k - (N^2/2 + N/2 + 1/12) log N
    + N^2/4] and returns 1/12 - log A.  Serves as an independent cross-check
    on zeta_prime_minus_one, whose derivation shares nothing with this sum.
    """

    def build() -> XReal:
        work = prec + 48
        ctx = context_for(work)
        target = mpfr(2) ** -(prec + 16)
        M = max(64, prec // 4)
        while True:
            direct = mpfr(0, work)
            for k in range(2, M):
                kk = mpfr(k, work)
                direct = ctx.add(direct, ctx.mul(kk, ctx.log(kk)))
            X = mpfr(M, work)
            lnX = ctx.log(X)
            X2 = ctx.mul(X, X)
            acc = ctx.add(direct, ctx.div(ctx.mul(X, lnX), 2))
            acc = ctx.sub(acc, ctx.div(ctx.mul(X2, lnX), 2))
            acc = ctx.add(acc, ctx.div(X2, 4))
            acc = ctx.sub(acc, ctx.div(lnX, 12))
            k = 2
            k_limit = int(3.1 * M)
            ok = False
            while k <= k_limit:
                c = (
                    exact.bernoulli(2 * k)
                    * exact.factorial(2 * k - 3)
                    / exact.factorial(2 * k)
                )
                term = ctx.mul(_convert(c, work), ctx.pow(X, -(2 * k - 2)))
                if abs(term) < target:
                    ok = True
                    break
                acc = ctx.add(acc, term)
                k += 1
            if ok:
                twelfth = ctx.div(mpfr(1, work), 12)
                return XReal._wrap(mpfr(ctx.sub(twelfth, acc), prec))
            M *= 2

    return _memoized(("zeta_prime_minus_1_glaisher", prec), build)


_CONSTANT_BUILDERS = {
    "gamma": euler_gamma,
    "pi": pi_const,
    "log_2pi": log_2pi,
    "zeta2": lambda prec: riemann_zeta(2, prec),
    "zeta3": lambda prec: riemann_zeta(3, prec),
    "zeta4": lambda prec: riemann_zeta(4, prec),
    "zeta_prime_2": zeta_prime_2,
    "zeta_prime_minus_1": zeta_prime_minus_one,
}


def constant(name: str, prec: int = DEFAULT_PRECISION) -> XReal:
    """Named constants shared across the audit."""
    try:
        builder = _CONSTANT_BUILDERS[name]
    except KeyError:
        raise DomainError(f"unknown constant {name!r}") from None
    return builder(prec)
