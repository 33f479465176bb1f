"""Dilogarithm on [0, 1] and the logarithmic integral on (0, 1).

Both functions infer their working precision from the argument, so quadrature
integrands can pass nodes carrying elevated precision straight through.  The
dilogarithm uses the defining series up to 1/2 and the Euler reflection
Li2(x) = zeta(2) - log(x)log(1-x) - Li2(1-x) beyond it; the reflection is
benign there because the reflected argument is small exactly where log(x) is.
"""
from __future__ import annotations

from typing import Optional

from gmpy2 import mpfr

from . import zeta
from .xreal import (
    DEFAULT_PRECISION,
    DomainError,
    NonConvergenceError,
    XReal,
    _convert,
    as_xreal,
    context_for,
)


def _operand_precision(x, prec: Optional[int]) -> int:
    if prec is not None:
        return prec
    if isinstance(x, XReal):
        return x.precision
    return DEFAULT_PRECISION


def _dilog_series(x: mpfr, work: int, ctx) -> mpfr:
    # plain sum of x^k / k^2; the ratio is at most ~0.52 after reflection
    target = mpfr(2) ** -(work + 8)
    acc = mpfr(0, work)
    xpow = mpfr(x, work)
    k = 1
    while True:
        term = ctx.div(xpow, k * k)
        acc = ctx.add(acc, term)
        if abs(term) < target:
            return acc
        k += 1
        if k > 4 * work + 64:
            raise NonConvergenceError("dilogarithm series stalled")
        xpow = ctx.mul(xpow, x)


def dilog(x, prec: Optional[int] = None) -> XReal:
    """Li2(x) for 0 <= x <= 1."""
    p = _operand_precision(x, prec)
    work = p + 32
    ctx = context_for(work)
    xv = _convert(x, work)
    if xv < 0 or xv > 1:
        raise DomainError("dilog is implemented on [0, 1] only")
    if xv == 0:
        return XReal(0, p)
    if xv == 1:
        return zeta.riemann_zeta(2, p)
    half = mpfr("0.5", work)
    if xv <= half:
        return XReal._wrap(mpfr(_dilog_series(xv, work, ctx), p))
    u = ctx.sub(1, xv)
    val = zeta.riemann_zeta(2, work).raw
    val = ctx.sub(val, ctx.mul(ctx.log(xv), ctx.log(u)))
    val = ctx.sub(val, _dilog_series(u, work, ctx))
    return XReal._wrap(mpfr(val, p))


def logarithmic_integral(x, prec: Optional[int] = None) -> XReal:
    """li(x) for 0 < x < 1, by the series gamma + log(-log x) + sum log^k(x)/(k k!).

    The summand peaks near exp(|log x|), so the working precision grows with
    |log x| to absorb the cancellation against the tiny result.
    """
    p = _operand_precision(x, prec)
    probe = context_for(p + 8)
    xv0 = _convert(x, p + 8)
    if not (xv0 > 0 and xv0 < 1):
        raise DomainError("logarithmic_integral is implemented on (0, 1) only")
    z0 = float(probe.log(xv0))
    work = p + 32 + max(0, int(1.5 * abs(z0) / 0.6931) + 8)
    ctx = context_for(work)
    xv = _convert(x, work)
    z = ctx.log(xv)
    acc = ctx.add(zeta.euler_gamma(work).raw, ctx.log(ctx.minus(z)))
    target = mpfr(2) ** -(work + 8)
    zpow = mpfr(z, work)
    kfact = 1
    k = 1
    while True:
        term = ctx.div(zpow, k * kfact)
        acc = ctx.add(acc, term)
        if k > 8 and abs(term) < target:
            return XReal._wrap(mpfr(acc, p))
        k += 1
        if k > 16 * work + 64:
            raise NonConvergenceError("logarithmic integral series stalled")
        kfact *= k
        zpow = ctx.mul(zpow, z)
