"""Complete Bell polynomials with exact integer coefficients.

The polynomials are stored sparsely as {monomial: coefficient} with a
monomial encoded as a tuple of (variable index, exponent) pairs sorted by
index; variable index i stands for x_i. Coefficients come from the partition
formula, which is the ground truth here; the raising-operator recurrence is
provided separately so tests can cross-validate the two constructions.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from . import exact

Monomial = tuple[tuple[int, int], ...]


def enumerate_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Partitions of n as nonincreasing part tuples, reverse-lexicographic.

    For n = 4: (4), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1).
    """
    if n < 0:
        raise ValueError("partition argument must be nonnegative")
    if n == 0:
        yield ()
        return
    part = [n]
    while True:
        yield tuple(part)
        # decrement the rightmost part above 1, repack what follows
        idx = len(part) - 1
        while idx >= 0 and part[idx] == 1:
            idx -= 1
        if idx < 0:
            return
        r = part[idx] - 1
        total = part[idx] + (len(part) - 1 - idx)
        part = part[:idx]
        q, t = divmod(total, r)
        part.extend([r] * q)
        if t:
            part.append(t)


def _multiplicities(part: tuple[int, ...]) -> dict[int, int]:
    mult: dict[int, int] = {}
    for p in part:
        mult[p] = mult.get(p, 0) + 1
    return mult


@dataclass(frozen=True)
class BellPoly:
    """Complete Bell polynomial Y_n."""

    n: int
    terms: Mapping[Monomial, int]

    def coefficient(self, monomial: Monomial) -> int:
        return self.terms.get(tuple(sorted(monomial)), 0)

    def __call__(self, xs: Sequence):
        return bell_eval_terms(self.terms, xs)

    def to_string(self) -> str:
        """Render with monomials sorted by descending exponent vector."""

        def expvec(mono: Monomial) -> tuple:
            vec = [0] * self.n
            for idx, e in mono:
                vec[idx - 1] = e
            return tuple(-v for v in vec)

        pieces = []
        for mono in sorted(self.terms, key=expvec):
            c = self.terms[mono]
            factors = []
            for idx, e in mono:
                factors.append(f"x{idx}" + (f"^{e}" if e > 1 else ""))
            if not factors:
                pieces.append(str(c))
            else:
                body = " ".join(factors)
                pieces.append(body if c == 1 else f"{c} {body}")
        return " + ".join(pieces) if pieces else "0"


_BELL_LOCK = threading.Lock()
_BELL_CACHE: dict[int, BellPoly] = {}


def complete_bell_poly(n: int) -> BellPoly:
    """Y_n from the partition formula n!/(prod k_i! (i!)^k_i)."""
    if n < 0:
        raise ValueError("Bell index must be nonnegative")
    with _BELL_LOCK:
        poly = _BELL_CACHE.get(n)
        if poly is not None:
            return poly
    nfact = exact.factorial(n)
    terms: dict[Monomial, int] = {}
    for part in enumerate_partitions(n):
        mult = _multiplicities(part)
        denom = 1
        for i, k in mult.items():
            denom *= exact.factorial(k) * exact.factorial(i) ** k
        coeff, rem = divmod(nfact, denom)
        assert rem == 0
        mono = tuple(sorted((i, k) for i, k in mult.items()))
        terms[mono] = coeff
    poly = BellPoly(n=n, terms=terms)
    with _BELL_LOCK:
        _BELL_CACHE[n] = poly
    return poly


# -- polynomial algebra used by the recurrence construction ------------------


def _mono_mul_var(mono: Monomial, idx: int) -> Monomial:
    d = dict(mono)
    d[idx] = d.get(idx, 0) + 1
    return tuple(sorted(d.items()))


def _poly_accumulate(dst: dict[Monomial, int], mono: Monomial, coeff: int) -> None:
    c = dst.get(mono, 0) + coeff
    if c:
        dst[mono] = c
    elif mono in dst:
        del dst[mono]


def _raising_operator(terms: Mapping[Monomial, int]) -> dict[Monomial, int]:
    # sum_i x_{i+1} d/dx_i
    out: dict[Monomial, int] = {}
    for mono, coeff in terms.items():
        for idx, e in mono:
            d = dict(mono)
            if e == 1:
                del d[idx]
            else:
                d[idx] = e - 1
            d[idx + 1] = d.get(idx + 1, 0) + 1
            _poly_accumulate(out, tuple(sorted(d.items())), coeff * e)
    return out


def bell_from_recurrence(n: int) -> BellPoly:
    """Y_{m+1} = x_1 Y_m + (raising operator applied to Y_m), seeded at Y_0 = 1."""
    if n < 0:
        raise ValueError("Bell index must be nonnegative")
    terms: dict[Monomial, int] = {(): 1}
    for _ in range(n):
        nxt: dict[Monomial, int] = {}
        for mono, coeff in terms.items():
            _poly_accumulate(nxt, _mono_mul_var(mono, 1), coeff)
        for mono, coeff in _raising_operator(terms).items():
            _poly_accumulate(nxt, mono, coeff)
        terms = nxt
    return BellPoly(n=n, terms=terms)


def bell_eval_terms(terms: Mapping[Monomial, int], xs: Sequence):
    """Evaluate a term map at xs = (x_1, x_2, ...); works for any ring values."""
    total = None
    for mono, coeff in terms.items():
        prod = None
        for idx, e in mono:
            if idx > len(xs):
                raise ValueError(f"need x_{idx} but only {len(xs)} values given")
            f = xs[idx - 1] ** e
            prod = f if prod is None else prod * f
        term = coeff if prod is None else prod * coeff
        total = term if total is None else total + term
    if total is None:
        return 0
    return total


def bell_eval(n: int, xs: Sequence):
    """Y_n evaluated at xs; len(xs) must be at least n."""
    if len(xs) < n:
        raise ValueError(f"Y_{n} needs {n} arguments, got {len(xs)}")
    return complete_bell_poly(n)(xs)


def partition_count(n: int) -> int:
    return sum(1 for _ in enumerate_partitions(n))
