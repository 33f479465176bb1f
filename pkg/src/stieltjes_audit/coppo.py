"""Monic moment polynomials and the integral route to the Stieltjes constants.

p_n is the unique monic polynomial of degree n with

    int_0^oo p_n(x - log z) exp(-z) dz = x^n        for every real x,

which pins its coefficients against the log-moments of exp(-z), i.e. the
derivatives of Gamma at 1.  Evaluating p_n at -log log(1/t) and integrating
against the omega kernel on (0, 1) reproduces gamma_n.  The route shares
nothing with the forward-difference ladder, so the two act as independent
witnesses for the same constants.
"""

from __future__ import annotations

import threading
from typing import Optional, Sequence

from .exact import binomial
from .quadrature import QuadResult, integrate_halfline, integrate_unit
from .xreal import XReal, as_xreal, exp, loglog_power_kernel, omega_kernel
from .zeta import gamma_derivative

_COEFF_CACHE: dict = {}
_LOCK = threading.Lock()


def backsub_coefficients(n: int, prec: int = 256) -> list:
    """Coefficients [a_0, ..., a_n] of p_n, lowest degree first, a_n = 1.

    Back substitution: requiring the shifted log-moments to telescope to
    x^n forces, for k = n-1 down to 0,

        a_k = - sum_{l=1}^{n-k} (-1)^l C(k+l, l) Gamma^(l)(1) a_{k+l}.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    key = (n, prec)
    with _LOCK:
        got = _COEFF_CACHE.get(key)
    if got is not None:
        return list(got)
    work = prec + 32
    derivs = [gamma_derivative(m, 1, work) for m in range(n + 1)]
    coeffs: list = [None] * n + [XReal(1, work)]
    for k in range(n - 1, -1, -1):
        acc = XReal(0, work)
        for l in range(1, n - k + 1):
            term = derivs[l] * coeffs[k + l] * binomial(k + l, l)
            acc = acc - term if l % 2 else acc + term
        coeffs[k] = -acc
    out = [XReal(c, prec) for c in coeffs]
    with _LOCK:
        _COEFF_CACHE[key] = list(out)
    return out


def poly_eval(coeffs: Sequence, z) -> XReal:
    """Horner evaluation; coefficients lowest degree first."""
    zx = as_xreal(z)
    acc = as_xreal(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * zx + c
    return acc


def moment_integral(n: int, x, prec: int = 256) -> QuadResult:
    """int_0^oo p_n(x - log z) exp(-z) dz; equals x^n when p_n is right."""
    coeffs = backsub_coefficients(n, 2 * prec + 64)
    xx = as_xreal(x, 2 * prec + 64)

    def f(z):
        from .xreal import log
        return poly_eval(coeffs, xx - log(z)) * exp(-z)

    return integrate_halfline(f, prec=prec)


def stieltjes_via_coppo(n: int, prec: int = 256, tol=None) -> QuadResult:
    """gamma_n as the omega-kernel moment of p_n(-log log(1/t)) on (0, 1)."""
    coeffs = backsub_coefficients(n, 2 * prec + 64)

    def f(t):
        z = -loglog_power_kernel(t, 1)
        return poly_eval(coeffs, z) * omega_kernel(t)

    return integrate_unit(f, tol=tol, prec=prec)
