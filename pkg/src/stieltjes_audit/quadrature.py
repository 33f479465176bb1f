"""Double-exponential quadrature on (0, 1) and (0, oo).

tanh-sinh for the unit interval, exp-sinh for the half line. Nodes are
generated at roughly twice the working precision so that distances to the
endpoints stay representable; integrands receive the abscissa as an ``XReal``
at node precision and may recover 1 - y to full accuracy by plain
subtraction.

Divergent integrands are the one failure mode a truncated trapezoid handles
badly: the level sums settle toward a large finite number and the inter-level
differences shrink, which would read as convergence. The driver therefore
checks the transformed integrand at the edge of the node range; a
non-integrable endpoint keeps |w*f| of order cosh(t) out there, while any
integrable singularity we audit decays double-exponentially. A loud
``QuadratureNonConvergence`` beats a silently wrong number.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable, Optional

from gmpy2 import mpfr

from .xreal import (
    DEFAULT_PRECISION,
    NonConvergenceError,
    StieltjesAuditError,
    XReal,
    as_xreal,
    context_for,
)


class EndpointExcluded(StieltjesAuditError):
    """An integrand may raise this to drop a node (e.g. exactly at a pole)."""


class QuadratureNonConvergence(NonConvergenceError):
    pass


@dataclass
class QuadResult:
    value: XReal
    error_estimate: XReal
    levels: int
    evaluations: int
    converged: bool


_NODE_LOCK = threading.Lock()
_UNIT_NODES: dict[tuple, tuple[mpfr, mpfr]] = {}
_HALF_NODES: dict[tuple, tuple[mpfr, mpfr, mpfr]] = {}


def _canon(k: int, level: int) -> tuple[int, int]:
    # t = k / 2^level with k, level reduced; level 0 keeps k as is
    while level > 0 and k % 2 == 0:
        k //= 2
        level -= 1
    return k, level


def _unit_node(k: int, level: int, node_prec: int) -> tuple[mpfr, mpfr]:
    """(delta, weight) for t = k/2^level >= 0; y = 1 - delta and delta."""
    kk, lev = _canon(k, level)
    key = (node_prec, kk, lev)
    with _NODE_LOCK:
        node = _UNIT_NODES.get(key)
    if node is not None:
        return node
    ctx = context_for(node_prec)
    t = ctx.div(mpfr(kk, node_prec), mpfr(2) ** lev)
    u2 = ctx.mul(ctx.const_pi(), ctx.sinh(t))  # 2u = pi*sinh(t)
    E = ctx.exp(u2)
    delta = ctx.div(1, ctx.add(1, E))
    cosh2u = ctx.div(ctx.add(E, ctx.div(1, E)), 2)
    w = ctx.div(
        ctx.mul(ctx.div(ctx.const_pi(), 2), ctx.cosh(t)),
        ctx.add(1, cosh2u),
    )
    node = (delta, w)
    with _NODE_LOCK:
        _UNIT_NODES.setdefault(key, node)
    return node


def _half_node(k: int, level: int, node_prec: int) -> tuple[mpfr, mpfr, mpfr]:
    """(x_plus, x_minus, (pi/2)cosh t) for t = k/2^level >= 0."""
    kk, lev = _canon(k, level)
    key = (node_prec, kk, lev)
    with _NODE_LOCK:
        node = _HALF_NODES.get(key)
    if node is not None:
        return node
    ctx = context_for(node_prec)
    t = ctx.div(mpfr(kk, node_prec), mpfr(2) ** lev)
    u = ctx.mul(ctx.div(ctx.const_pi(), 2), ctx.sinh(t))
    xp = ctx.exp(u)
    node = (xp, ctx.div(1, xp), ctx.mul(ctx.div(ctx.const_pi(), 2), ctx.cosh(t)))
    with _NODE_LOCK:
        _HALF_NODES.setdefault(key, node)
    return node


def _eval(f: Callable, x: mpfr, prec: int):
    v = f(XReal._wrap(mpfr(x, prec)))
    if v is None:
        return None
    return as_xreal(v).raw


class _Driver:
    """Shared incremental trapezoid machinery for both transforms."""

    def __init__(self, kind: str, f: Callable, tol, prec: int,
                 max_level: int, max_evals: int):
        self.kind = kind
        self.f = f
        self.prec = prec
        self.work = prec + 64
        self.node_prec = 2 * prec + 64
        self.ctx = context_for(self.work)
        floor_ = mpfr(2) ** (-prec + 16)
        t = as_xreal(tol).raw if tol is not None else floor_
        self.tol = t if t > floor_ else floor_
        # depth of the transformed range, in nats
        d_nats = 1.5 * float(-self.ctx.log(self.tol)) + 40.0
        ctx = self.ctx
        if kind == "unit":
            arg = ctx.div(ctx.mul(2, mpfr(d_nats, 64)), ctx.const_pi())
        else:
            arg = ctx.div(ctx.mul(6, mpfr(d_nats, 64)), ctx.const_pi())
        self.t_max = float(ctx.asinh(arg))
        if kind == "unit":
            # keep 1 - delta representable at node precision with p bits spare
            cap_nats = (self.node_prec - prec - 8) * math.log(2)
            self.t_max = min(self.t_max, math.asinh(cap_nats / math.pi))
        self.max_level = max_level
        self.max_evals = max_evals
        self.evaluations = 0
        self.tail_alarm = False

    def _node_term(self, k: int, level: int, side: int):
        """w*f at t = side * k/2^level, or None for a skipped node."""
        ctx = self.ctx
        if self.kind == "unit":
            delta, w = _unit_node(k, level, self.node_prec)
            y = ctx.sub(1, delta) if side >= 0 else delta
            if k == 0:
                y = delta  # t = 0 means y = 1/2 exactly once
            if y == 0 or y == 1:
                return None  # beyond node resolution
            try:
                fv = _eval(self.f, y, self.node_prec)
            except EndpointExcluded:
                fv = None
            return None if fv is None else ctx.mul(w, fv)
        xp, xm, wc = _half_node(k, level, self.node_prec)
        x = xp if side >= 0 else xm
        try:
            fv = _eval(self.f, x, self.node_prec)
        except EndpointExcluded:
            fv = None
        return None if fv is None else ctx.mul(ctx.mul(wc, x), fv)

    def _scan_level(self, level: int) -> mpfr:
        """Sum of new contributions at this level (step 2^-level)."""
        ctx = self.ctx
        h_inv = 1 << level
        k_max = int(self.t_max * h_inv) + 1
        total = mpfr(0, self.work)
        small_cut = ctx.mul(self.tol, mpfr(2) ** -12)
        step = 2 if level > 0 else 1
        min_k = 8 * h_inv if level == 0 else 4
        if level == 0:
            c = self._node_term(0, 0, +1)
            self.evaluations += 1
            if c is not None:
                total = ctx.add(total, c)
        for side in (+1, -1):
            small_run = 0
            k = 1
            last_mag = None
            max_mag = mpfr(1, self.work)
            hit_edge = True
            while k <= k_max:
                c = self._node_term(k, level, side)
                self.evaluations += 1
                if self.evaluations > self.max_evals:
                    raise QuadratureNonConvergence(
                        f"evaluation budget {self.max_evals} exhausted")
                if c is not None:
                    total = ctx.add(total, c)
                    mag = abs(c)
                    last_mag = mag
                    if mag > max_mag:
                        max_mag = mag
                    small_run = small_run + 1 if mag < small_cut else 0
                else:
                    small_run += 1
                if small_run >= 3 and k >= min_k:
                    hit_edge = False
                    break
                k += step
            # a non-integrable endpoint keeps |w*f| at the range edge on the
            # same scale as the biggest contribution; integrable ones decay
            # double-exponentially there
            if (hit_edge and last_mag is not None
                    and last_mag > ctx.mul(max_mag, mpfr(2) ** -10)):
                self.tail_alarm = True
        return total

    def run(self) -> QuadResult:
        ctx = self.ctx
        s_prev = None
        s_cur = None
        diff = None
        for level in range(self.max_level + 1):
            new = self._scan_level(level)
            if self.tail_alarm:
                raise QuadratureNonConvergence(
                    "transformed integrand does not decay at the range edge; "
                    "the integral looks divergent")
            h = ctx.div(1, mpfr(1 << level, self.work))
            if level == 0:
                s_cur = new
            else:
                s_cur = ctx.add(ctx.div(s_cur, 2), ctx.mul(h, new))
            if s_prev is not None and level >= 2:
                diff = abs(ctx.sub(s_cur, s_prev))
                scale = max(mpfr(1), abs(s_cur))
                if diff <= ctx.mul(ctx.div(self.tol, 2), scale):
                    est = ctx.add(diff, mpfr(2) ** (-self.prec + 4))
                    return QuadResult(
                        value=XReal._wrap(mpfr(s_cur, self.prec)),
                        error_estimate=XReal._wrap(mpfr(est, 64)),
                        levels=level,
                        evaluations=self.evaluations,
                        converged=True,
                    )
            s_prev = s_cur
        partial = QuadResult(
            value=XReal._wrap(mpfr(s_cur, self.prec)),
            error_estimate=XReal._wrap(mpfr(diff if diff is not None else mpfr("inf"), 64)),
            levels=self.max_level,
            evaluations=self.evaluations,
            converged=False,
        )
        raise QuadratureNonConvergence(
            f"no convergence after {self.max_level} refinement levels",
            partial=partial)


def integrate_unit(f: Callable, tol=None, prec: int = DEFAULT_PRECISION,
                   max_level: int = 12, max_evals: int = 500_000) -> QuadResult:
    """Integrate f over (0, 1) with tanh-sinh nodes.

    f maps XReal -> XReal (or None to skip a node); raising EndpointExcluded
    also skips the node. Raises QuadratureNonConvergence when levels exhaust
    or the integrand is detected as non-integrable.
    """
    return _Driver("unit", f, tol, prec, max_level, max_evals).run()


def integrate_halfline(f: Callable, tol=None, prec: int = DEFAULT_PRECISION,
                       max_level: int = 12, max_evals: int = 500_000) -> QuadResult:
    """Integrate f over (0, oo) with exp-sinh nodes; same contract as
    integrate_unit."""
    return _Driver("half", f, tol, prec, max_level, max_evals).run()
