"""Hasse-ladder Stieltjes constants, digamma series, eta row, Bernoulli check."""

from fractions import Fraction

import pytest

from stieltjes_audit import hasse, zeta
from stieltjes_audit.exact import bernoulli, binomial
from stieltjes_audit.hasse import HasseConfig
from stieltjes_audit.xreal import as_xreal, log

from conftest import matches_pin, pinned, within


def test_gamma0_reproduces_euler_constant():
    sv = hasse.stieltjes_gamma(0, 1, 256)
    g = zeta.euler_gamma(256)
    assert abs(sv.value - g) <= sv.error_estimate
    assert within(sv.value, g, "1e-6")


def test_laurent_agreement_low_orders():
    for p in (1, 2):
        sv = hasse.stieltjes_gamma(p, 1, 256)
        assert within(sv.value, pinned(f"gamma_{p}"), "1e-6")


def test_deeper_ladder_tightens():
    cfg = HasseConfig(n_max=8192)
    sv = hasse.stieltjes_gamma(1, 1, 256, cfg)
    assert within(sv.value, pinned("gamma_1"), "1e-8")


def test_shift_to_u_equals_two():
    # gamma_0(2) = gamma - 1; gamma_p(2) = gamma_p for p >= 1
    sv0 = hasse.stieltjes_gamma(0, 2, 256)
    assert within(sv0.value, zeta.euler_gamma(256) - 1, "1e-6")
    sv1 = hasse.stieltjes_gamma(1, 2, 256)
    assert within(sv1.value, pinned("gamma_1"), "1e-6")


def test_rational_u_argument():
    sv = hasse.stieltjes_gamma(0, Fraction(3, 2), 256)
    # gamma_0(u) = -psi(u)
    assert within(sv.value, -zeta.digamma(Fraction(3, 2), 256), "1e-6")


def test_digamma_series_three_points():
    for u in (1, 2, Fraction(3, 2)):
        sv = hasse.digamma_hasse(u, 256)
        assert within(sv.value, zeta.digamma(u, 256), "1e-8")


def test_eta_row_pins_and_sign_alternation():
    etas = hasse.eta_sequence(4, 256)
    for n in range(4):
        assert matches_pin(etas[n], f"eta_{n}")
        assert (etas[n] > 0) == (n % 2 == 1)


def test_bernoulli_hasse_exact():
    # oracle: B_k(a) = sum_j C(k,j) B_j a^(k-j), exact in Fractions
    for k in range(7):
        for a in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)):
            want = sum(binomial(k, j) * bernoulli(j) * a ** (k - j)
                       for j in range(k + 1))
            assert hasse.bernoulli_hasse(k, a) == want
    # odd Bernoulli numbers at a = 1 vanish beyond the first
    assert hasse.bernoulli_hasse(3, 1) == 0
    assert hasse.bernoulli_hasse(5, 1) == 0


def test_zeta_ladder_check():
    sv = hasse.hasse_zeta_check(3, 192)
    assert within(sv.value, 2 * zeta.riemann_zeta(3, 192), "1e-5")


def test_outer_term_decay_ratio():
    # partial-sum tails of the psi(1) ladder shrink like Theta(1/N)
    cfg = HasseConfig(n_max=2048)
    snaps = hasse.ladder_snapshots(1, 1, 0, cfg)
    psi1 = -zeta.euler_gamma(256)
    tails = {n: abs(as_xreal(snaps[n], 256) - psi1) for n in (256, 512, 1024, 2048)}
    for lo, hi in ((256, 512), (512, 1024), (1024, 2048)):
        ratio = tails[lo] / tails[hi]
        assert Fraction(1, 2) <= ratio <= 4


def test_truncation_bound_holds():
    rows = hasse.ladder_snapshots(1, 1, 0, HasseConfig(n_max=1024))
    psi1 = -zeta.euler_gamma(256)
    for n in (128, 256, 512):
        tail = abs(as_xreal(rows[n], 256) - psi1)
        assert tail <= as_xreal(Fraction(1, n), 256)


def test_domain_errors():
    with pytest.raises(ValueError):
        hasse.stieltjes_gamma(-1, 1, 128)
    with pytest.raises(ValueError):
        hasse.stieltjes_gamma(0, 0, 128)
    with pytest.raises(ValueError):
        hasse.hasse_zeta_check(1, 128)
