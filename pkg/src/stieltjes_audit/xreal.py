"""Precision core: a thin wrapper over MPFR plus the analytic kernels.

Design notes
------------
All arithmetic goes through cached per-precision ``gmpy2.context`` objects via
their bound methods, never through the thread-local global context, so the
library is safe to call from worker threads at mixed precisions.

``XReal`` is deliberately minimal: it carries one ``mpfr`` value whose
precision attribute is the working precision. Mixed-precision arithmetic
resolves to the maximum operand precision; plain Python ints, floats and
Fractions act as exact operands.

The kernels at the bottom (``omega_kernel``, ``bose_kernel``,
``loglog_power_kernel``) are the numerically delicate pieces shared by the
integral evaluations; each switches to a Taylor/Bernoulli expansion near its
cancellation point and evaluates the direct formula at elevated internal
precision elsewhere, so the advertised relative error is met on the whole
domain.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import gmpy2
from gmpy2 import mpfr, mpq

from . import exact

MIN_PRECISION = 8
DEFAULT_PRECISION = 256

Number = Union["XReal", int, float, Fraction, mpfr]


class StieltjesAuditError(Exception):
    """Base class for library errors."""


class DomainError(StieltjesAuditError, ValueError):
    """Argument outside the documented domain of a function."""


class NonConvergenceError(StieltjesAuditError):
    """An iterative evaluation exhausted its budget.

    The partial result, when one makes sense, is attached as ``.partial``.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


_CTX_LOCK = threading.Lock()
_CTX_CACHE: dict[int, gmpy2.context] = {}


def context_for(prec: int) -> gmpy2.context:
    """Shared context at ``prec`` bits; cached objects must never be mutated."""
    if prec < MIN_PRECISION:
        prec = MIN_PRECISION
    ctx = _CTX_CACHE.get(prec)
    if ctx is None:
        with _CTX_LOCK:
            ctx = _CTX_CACHE.get(prec)
            if ctx is None:
                # traps: silent inf/nan would corrupt an audit, fail loudly
                ctx = gmpy2.context(
                    precision=prec,
                    trap_divzero=True,
                    trap_invalid=True,
                    trap_overflow=True,
                )
                _CTX_CACHE[prec] = ctx
    return ctx


def _convert(value, prec: int) -> mpfr:
    if isinstance(value, XReal):
        value = value._v
    if isinstance(value, Fraction):
        value = mpq(value.numerator, value.denominator)
    return mpfr(value, prec)


class XReal:
    """Immutable arbitrary-precision real number."""

    __slots__ = ("_v",)

    def __init__(self, value: Number = 0, precision: Optional[int] = None):
        if precision is None:
            if isinstance(value, XReal):
                precision = value._v.precision
            elif isinstance(value, mpfr):
                precision = value.precision
            else:
                precision = DEFAULT_PRECISION
        if precision < MIN_PRECISION:
            raise ValueError(f"precision {precision} below minimum {MIN_PRECISION}")
        object.__setattr__(self, "_v", _convert(value, precision))

    @staticmethod
    def _wrap(v: mpfr) -> "XReal":
        out = object.__new__(XReal)
        object.__setattr__(out, "_v", v)
        return out

    @property
    def precision(self) -> int:
        return self._v.precision

    @property
    def raw(self) -> mpfr:
        return self._v

    def with_precision(self, prec: int) -> "XReal":
        return XReal._wrap(mpfr(self._v, prec))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, XReal):
            return other._v, other._v.precision
        if isinstance(other, mpfr):
            return other, other.precision
        if isinstance(other, int):
            return other, 0
        if isinstance(other, float):
            return other, 0
        if isinstance(other, Fraction):
            return mpq(other.numerator, other.denominator), 0
        return None, -1

    def _binary(self, other, opname: str, reverse: bool = False):
        ov, oprec = self._coerce(other)
        if oprec < 0:
            return NotImplemented
        ctx = context_for(max(self._v.precision, oprec))
        op = getattr(ctx, opname)
        return XReal._wrap(op(ov, self._v) if reverse else op(self._v, ov))

    def __add__(self, other):
        return self._binary(other, "add")

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, "sub")

    def __rsub__(self, other):
        return self._binary(other, "sub", reverse=True)

    def __mul__(self, other):
        return self._binary(other, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, "div")

    def __rtruediv__(self, other):
        return self._binary(other, "div", reverse=True)

    def __pow__(self, other):
        return self._binary(other, "pow")

    def __rpow__(self, other):
        return self._binary(other, "pow", reverse=True)

    def __neg__(self):
        return XReal._wrap(context_for(self._v.precision).minus(self._v))

    def __pos__(self):
        return self

    def __abs__(self):
        return XReal._wrap(abs(self._v))

    # -- comparisons (exact, precision-independent) -------------------------

    def _cmp_value(self, other):
        ov, oprec = self._coerce(other)
        if oprec < 0:
            return None
        return ov

    def __eq__(self, other):
        ov = self._cmp_value(other)
        return NotImplemented if ov is None else self._v == ov

    def __ne__(self, other):
        ov = self._cmp_value(other)
        return NotImplemented if ov is None else self._v != ov

    def __lt__(self, other):
        ov = self._cmp_value(other)
        return NotImplemented if ov is None else self._v < ov

    def __le__(self, other):
        ov = self._cmp_value(other)
        return NotImplemented if ov is None else self._v <= ov

    def __gt__(self, other):
        ov = self._cmp_value(other)
        return NotImplemented if ov is None else self._v > ov

    def __ge__(self, other):
        ov = self._cmp_value(other)
        return NotImplemented if ov is None else self._v >= ov

    def __hash__(self):
        return hash(self._v)

    def __bool__(self):
        return self._v != 0

    def __float__(self):
        return float(self._v)

    def decimal(self, digits: int = 30) -> str:
        """Deterministic scientific-notation decimal string."""
        return format_decimal(self._v, digits)

    def __repr__(self):
        return f"XReal('{self.decimal(25)}', precision={self.precision})"

    def __str__(self):
        return self.decimal(self.precision * 30103 // 100000)


def as_xreal(x: Number, prec: Optional[int] = None) -> XReal:
    if isinstance(x, XReal) and (prec is None or x.precision == prec):
        return x
    return XReal(x, prec)


def format_decimal(v: mpfr, digits: int) -> str:
    if digits < 2:
        digits = 2
    if v == 0:
        return "0"
    mant, exp10, _ = v.digits(10, digits)
    sign = ""
    if mant.startswith("-"):
        sign, mant = "-", mant[1:]
    return f"{sign}{mant[0]}.{mant[1:]}e{exp10 - 1:+03d}"


def decimal_digits_for(prec: int) -> int:
    # bits * log10(2), minus a safety digit
    return max(2, prec * 30103 // 100000 - 1)


# -- elementary functions ----------------------------------------------------


def _unary(opname: str):
    def fn(x: Number, prec: Optional[int] = None) -> XReal:
        xv = as_xreal(x)
        ctx = context_for(prec or xv.precision)
        return XReal._wrap(getattr(ctx, opname)(xv._v))

    fn.__name__ = opname
    return fn


exp = _unary("exp")
log = _unary("log")
log1p = _unary("log1p")
expm1 = _unary("expm1")
sqrt = _unary("sqrt")
sinh = _unary("sinh")
cosh = _unary("cosh")
tanh = _unary("tanh")
asinh = _unary("asinh")


def pow_(x: Number, y: Number, prec: Optional[int] = None) -> XReal:
    xv = as_xreal(x)
    p = prec or xv.precision
    ctx = context_for(p)
    yv = y._v if isinstance(y, XReal) else y
    if isinstance(yv, Fraction):
        yv = mpq(yv.numerator, yv.denominator)
    return XReal._wrap(ctx.pow(xv._v, yv))


def pi(prec: int = DEFAULT_PRECISION) -> XReal:
    return XReal._wrap(context_for(prec).const_pi())


def binomial_exact(n: int, k: int) -> int:
    return exact.binomial(n, k)


# -- kernels -----------------------------------------------------------------


def omega_kernel(y: Number, prec: Optional[int] = None) -> XReal:
    """Evaluate 1/(1-y) + 1/log(y) on [0, 1].

    The two poles at y = 1 cancel; the kernel continues to 1/2 there and to 1
    at y = 0. Near y = 1 the direct form loses about log2(1/(1-y)) bits, so
    once 1 - y drops below 2^(-prec/3) the evaluation switches to the Taylor
    coefficients of z/log(1+z); elsewhere it runs at elevated precision.
    """
    xv = as_xreal(y, prec)
    p = xv.precision
    work = p + p // 3 + 32
    ctx = context_for(work)
    v = xv._v
    if v < 0 or v > 1:
        raise DomainError(f"omega_kernel argument {float(v)} outside [0, 1]")
    if v == 0:
        return XReal(1, p)
    eps = ctx.sub(1, v)
    cut = mpfr(2) ** -(p // 3)
    if eps < cut:
        # sum_{k>=1} (-1)^(k+1) a_k eps^(k-1), all terms positive
        s = ctx.div(1, 2)
        epow = mpfr(eps, work)
        k = 2
        floor_ = mpfr(2) ** -(p + 24)
        while True:
            coeff = exact.log_reciprocal_coeff(k)
            term = ctx.mul(_convert(Fraction((-1) ** (k + 1)) * coeff, work), epow)
            s = ctx.add(s, term)
            if abs(term) < floor_:
                break
            if k > p:  # eps tiny enough that this cannot trigger in practice
                break
            epow = ctx.mul(epow, eps)
            k += 1
        return XReal._wrap(mpfr(s, p))
    r = ctx.add(ctx.div(1, eps), ctx.div(1, ctx.log(v)))
    return XReal._wrap(mpfr(r, p))


def bose_kernel(x: Number, prec: Optional[int] = None) -> XReal:
    """Evaluate 1/(e^x - 1) - 1/x on [0, oo); the value at 0+ is -1/2."""
    xv = as_xreal(x, prec)
    p = xv.precision
    work = p + p // 4 + 32
    ctx = context_for(work)
    v = xv._v
    if v < 0:
        raise DomainError(f"bose_kernel argument {float(v)} negative")
    cut = mpfr(2) ** -(p // 4)
    if v < cut:
        # 1/(e^x-1) = 1/x - 1/2 + sum B_2k x^(2k-1)/(2k)!
        s = ctx.div(-1, 2)
        if v != 0:
            floor_ = mpfr(2) ** -(p + 24)
            xpow = mpfr(v, work)
            x2 = ctx.mul(v, v)
            k = 1
            while True:
                c = exact.bernoulli(2 * k) / exact.factorial(2 * k)
                term = ctx.mul(_convert(c, work), xpow)
                s = ctx.add(s, term)
                if abs(term) < floor_ or k > p:
                    break
                xpow = ctx.mul(xpow, x2)
                k += 1
        return XReal._wrap(mpfr(s, p))
    if v > (work + 16) * 0.7:
        # e^x would overflow the significand range; 1/(e^x - 1) collapses to
        # e^-x (underflows to 0 harmlessly beyond that)
        r = ctx.sub(ctx.exp(ctx.minus(v)), ctx.div(1, v))
    else:
        r = ctx.sub(ctx.div(1, ctx.expm1(v)), ctx.div(1, v))
    return XReal._wrap(mpfr(r, p))


def loglog_power_kernel(y: Number, n: int, prec: Optional[int] = None) -> XReal:
    """Evaluate log(log(1/y))^n on (0, 1); n = 0 returns 1 everywhere."""
    if n < 0:
        raise DomainError("power must be a nonnegative integer")
    xv = as_xreal(y, prec)
    p = xv.precision
    if n == 0:
        return XReal(1, p)
    ctx = context_for(p + 32)
    v = xv._v
    if v <= 0 or v >= 1:
        raise DomainError(f"loglog_power_kernel argument {float(v)} outside (0, 1)")
    inner = ctx.log(ctx.div(1, v))
    w = ctx.log(inner)
    return XReal._wrap(mpfr(ctx.pow(w, n), p))


# -- series summation --------------------------------------------------------


@dataclass
class SeriesResult:
    value: XReal
    terms_used: int
    error_estimate: XReal
    converged: bool


def neville_zero(xs: Sequence[mpfr], ys: Sequence[mpfr], ctx) -> mpfr:
    """Polynomial extrapolation of (xs, ys) to x = 0."""
    tab = list(ys)
    n = len(tab)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            num = ctx.sub(ctx.mul(xs[i - j], tab[i]), ctx.mul(xs[i], tab[i - 1]))
            tab[i] = ctx.div(num, ctx.sub(xs[i - j], xs[i]))
    return tab[-1]


def solve_linear(A: list[list[mpfr]], b: list[mpfr], ctx) -> list[mpfr]:
    """Gaussian elimination with partial pivoting, in-context arithmetic."""
    n = len(A)
    M = [list(A[i]) + [b[i]] for i in range(n)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(M[r][col]))
        if M[piv][col] == 0:
            raise ZeroDivisionError("singular extrapolation system")
        M[col], M[piv] = M[piv], M[col]
        for r in range(col + 1, n):
            f = ctx.div(M[r][col], M[col][col])
            if f == 0:
                continue
            for c in range(col, n + 1):
                M[r][c] = ctx.sub(M[r][c], ctx.mul(f, M[col][c]))
    x = [mpfr(0)] * n
    for i in reversed(range(n)):
        acc = M[i][n]
        for j in range(i + 1, n):
            acc = ctx.sub(acc, ctx.mul(M[i][j], x[j]))
        x[i] = ctx.div(acc, M[i][i])
    return x


def log_tail_basis(depth: int) -> list[Callable]:
    """Basis b_k(N) for partial-sum tails with logarithmic factors.

    Series like sum log(n)/n^s have tails (log N + c)/N^(s-1) + ...; plain
    polynomial extrapolation in 1/N stalls on the log factor, this basis does
    not. Ordered by asymptotic size.
    """
    fns = [
        lambda ctx, n: ctx.div(ctx.log(n), n),
        lambda ctx, n: ctx.div(1, n),
        lambda ctx, n: ctx.div(ctx.log(n), ctx.mul(n, n)),
        lambda ctx, n: ctx.div(1, ctx.mul(n, n)),
        lambda ctx, n: ctx.div(ctx.log(n), ctx.mul(ctx.mul(n, n), n)),
    ]
    if not 2 <= depth <= len(fns):
        raise ValueError(f"depth must be in [2, {len(fns)}]")
    return fns[:depth]


def tail_fit(ns: Sequence[int], values: Sequence[mpfr], basis: Sequence[Callable], ctx) -> mpfr:
    """Fit S(N) = S_inf - sum_k c_k b_k(N) through the given points, return S_inf."""
    m = len(basis) + 1
    if len(ns) < m:
        raise ValueError("not enough points for the requested basis")
    ns = list(ns)[-m:]
    values = list(values)[-m:]
    A = []
    for n in ns:
        nm = mpfr(n, ctx.precision)
        A.append([mpfr(1)] + [ctx.minus(b(ctx, nm)) for b in basis])
    return solve_linear(A, list(values), ctx)[0]


def sum_series(
    term: Callable[[int], Number],
    tolerance: Number,
    *,
    max_terms: int = 100_000,
    richardson: bool = True,
    depth: int = 4,
    basis: str = "power",
    prec: Optional[int] = None,
) -> SeriesResult:
    """Sum term(0) + term(1) + ... adaptively.

    Convergence requires a regular term pattern (8 consecutive terms below
    tolerance/16, or 8 consecutive nonincreasing magnitudes) together with a
    tail estimate under the tolerance. The tail estimate is the smaller of a
    geometric-ratio bound and the change between successive extrapolations of
    the dyadic partial sums; when the geometric bound wins, the raw partial
    sum is already more accurate than the extrapolation and is returned as is.

    basis="power" extrapolates polynomially in 1/N, basis="log" fits tails
    with logarithmic corrections. richardson=False disables value-side
    acceleration but keeps the tail estimate for stopping.
    """
    if basis not in ("power", "log"):
        raise ValueError("basis must be 'power' or 'log'")
    first = as_xreal(term(0))
    acc_prec = prec or (first.precision + 32)
    ctx = context_for(acc_prec)
    tol = _convert(tolerance, acc_prec)
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    small_cut = ctx.div(tol, 16)

    s = mpfr(0, acc_prec)
    snap_ns: list[int] = []
    snap_vals: list[mpfr] = []
    extrap_prev = None
    extrap_cur = None
    extrap_est = None
    tail_geo = None
    recent: list[mpfr] = []
    small_run = 0
    mono_run = 0
    prev_abs = None
    next_snap = 8
    basis_fns = log_tail_basis(depth) if basis == "log" else None

    n = 0
    a = first._v
    while True:
        s = ctx.add(s, mpfr(a, acc_prec))
        abs_a = abs(a)
        small_run = small_run + 1 if abs_a < small_cut else 0
        mono_run = mono_run + 1 if (prev_abs is not None and abs_a <= prev_abs) else 0
        prev_abs = abs_a
        recent.append(abs_a)
        if len(recent) > 9:
            recent.pop(0)
        tail_geo = None
        if len(recent) == 9 and recent[0] > 0:
            ratio8 = ctx.div(recent[-1], recent[0])
            if ratio8 < mpfr("0.0576"):  # 0.7^8
                r = ctx.pow(ratio8, mpfr("0.125"))
                tail_geo = ctx.div(ctx.mul(abs_a, r), ctx.sub(1, r))
        count = n + 1
        if count == next_snap:
            snap_ns.append(count)
            snap_vals.append(s)
            next_snap *= 2
            window = depth + 1 if basis == "power" else len(basis_fns) + 1
            if len(snap_ns) >= (2 if basis == "power" else window):
                try:
                    if basis == "power":
                        pts = min(window, len(snap_ns))
                        xs = [ctx.div(1, mpfr(m_, acc_prec)) for m_ in snap_ns[-pts:]]
                        cur = neville_zero(xs, snap_vals[-pts:], ctx)
                    else:
                        cur = tail_fit(snap_ns, snap_vals, basis_fns, ctx)
                except ZeroDivisionError:
                    cur = None
                if cur is not None:
                    extrap_prev, extrap_cur = extrap_cur, cur
                    if extrap_prev is not None:
                        extrap_est = abs(ctx.sub(extrap_cur, extrap_prev))
        candidates = [e for e in (extrap_est, tail_geo) if e is not None]
        if candidates and count >= 16:
            est = min(candidates)
            regular = small_run >= 8 or mono_run >= 8
            if regular and est < tol:
                if tail_geo is not None and (extrap_est is None or tail_geo <= extrap_est):
                    value, err = s, tail_geo
                elif richardson and extrap_cur is not None:
                    value, err = extrap_cur, extrap_est
                else:
                    value = s
                    err = ctx.add(extrap_est, abs(ctx.sub(extrap_cur, s)))
                return SeriesResult(
                    value=XReal._wrap(value),
                    terms_used=count,
                    error_estimate=XReal._wrap(err),
                    converged=True,
                )
        n += 1
        if n >= max_terms:
            break
        a = as_xreal(term(n))._v

    est = extrap_est if extrap_est is not None else abs(a)
    partial = SeriesResult(
        value=XReal._wrap(s),
        terms_used=n,
        error_estimate=XReal._wrap(est),
        converged=False,
    )
    raise NonConvergenceError(
        f"series did not converge within {max_terms} terms", partial=partial
    )
