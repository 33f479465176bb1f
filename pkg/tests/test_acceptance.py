"""Acceptance gate: twelve criteria, one test and one printed verdict line each.

Each test gathers its checks into a list of (label, bool) pairs, prints a
single ACCEPTANCE line, then asserts. Run with -v for the per-criterion
pass/fail listing, add -s to see the printed lines on success.
"""

import json
import random
from fractions import Fraction

from stieltjes_audit import auditor, bell, cli, coppo, hasse, quadrature, zeta
from stieltjes_audit.bell import bell_eval, complete_bell_poly
from stieltjes_audit.exact import binomial
from stieltjes_audit.xreal import XReal, as_xreal, exp, log

from conftest import pinned, within


def conclude(num, label, checks):
    failed = [name for name, ok in checks if not ok]
    status = "FAIL" if failed else "PASS"
    print(f"ACCEPTANCE {num:02d}: {status} - {label}")
    assert not failed, f"criterion {num} ({label}): failed {failed}"


def test_criterion_01_euler_anchor(ctx256):
    quad = ctx256.omega_log_moment(0)
    gamma0 = hasse.stieltjes_gamma(0, 1, 256)
    diff = abs(quad.value - gamma0.value)
    conclude(1, "Euler-constant anchor", [
        ("quad converged", quad.converged),
        ("quad error <= 1e-12", quad.error_estimate <= XReal("1e-12", 256)),
        ("routes agree <= 1e-6", diff <= XReal("1e-6", 256)),
        ("value is 0.5772...", within(quad.value, "0.5772", "1e-4")),
    ])


def test_criterion_02_harmonic_closed_form_suite(ctx256):
    ids = [f"EQ_B_2_N{n}" for n in range(1, 21)]
    reps = auditor.run_registry(prec=256, ids=ids, ctx=ctx256)
    tol = XReal("1e-10", 256)
    conclude(2, "closed form vs quadrature for n = 1..20", [
        ("all 20 pass", all(r.verdict == "PASS" for r in reps)),
        ("residuals <= 1e-10", all(r.abs_residual <= tol for r in reps)),
    ])


def test_criterion_03_exponential_sum_grid(ctx256):
    cases = [c for c in auditor.registry() if c.id.startswith("EQ_1_5")]
    reps = auditor.run_registry(prec=256, ids=[c.id for c in cases],
                                ctx=ctx256)
    eq = [r for r in reps if "DIV" not in r.case_id]
    div = [r for r in reps if "DIV" in r.case_id]
    tol = XReal("1e-10", 256)
    conclude(3, "exponential-sum grid, 18 (r,u,n) combinations", [
        ("grid complete", len(eq) == 12 and len(div) == 6),
        ("convergent combos hold <= 1e-10",
         all(r.verdict == "PASS" and r.abs_residual <= tol for r in eq)),
        ("divergent combos detected",
         all(r.verdict == "PASS" and r.lhs_value is None for r in div)),
    ])


def test_criterion_04_stieltjes_reference_values(ctx256):
    g1 = hasse.stieltjes_gamma(1, 1, 256).value
    g2 = hasse.stieltjes_gamma(2, 1, 256).value
    checks = [
        # quoted four-digit approximations truncate toward zero
        ("gamma_1 quotes -0.0728",
         Fraction(-729, 10000) < g1 < Fraction(-728, 10000)),
        ("gamma_2 quotes -0.0096",
         Fraction(-97, 10000) < g2 < Fraction(-96, 10000)),
    ]
    cap = XReal("1e-5", 256)
    for n in range(3):
        via_coppo = coppo.stieltjes_via_coppo(n, 256).value
        direct = hasse.stieltjes_gamma(n, 1, 256).value
        checks.append((f"coppo route n={n}", abs(via_coppo - direct) <= cap))
    conclude(4, "gamma_1, gamma_2 quoted digits and cross-representation",
             checks)


def test_criterion_05_bell_suite():
    rng = random.Random(20260813)
    checks = [("p(22) = 1002", len(complete_bell_poly(22).terms) == 1002)]
    same = all(complete_bell_poly(n).terms == bell.bell_from_recurrence(n).terms
               for n in range(13))
    checks.append(("enumeration = recurrence, n <= 12", same))

    def rand_tuple():
        return [Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                for _ in range(8)]

    shift_ok = True
    for _ in range(50):
        n = rng.randint(0, 8)
        xs, alpha = rand_tuple(), Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        lhs = bell_eval(n, ([xs[0] + alpha] + xs[1:])[:n])
        rhs = sum(binomial(n, k) * alpha ** (n - k) * bell_eval(k, xs[:k])
                  for k in range(n + 1))
        shift_ok = shift_ok and lhs == rhs
    checks.append(("shift identity, 50 rational tuples", shift_ok))

    conv_ok = True
    for _ in range(50):
        n = rng.randint(0, 8)
        xs, ys = rand_tuple(), rand_tuple()
        both = [a + b for a, b in zip(xs, ys)]
        lhs = bell_eval(n, both[:n])
        rhs = sum(binomial(n, k) * bell_eval(n - k, xs[:n - k])
                  * bell_eval(k, ys[:k]) for k in range(n + 1))
        conv_ok = conv_ok and lhs == rhs
    checks.append(("convolution identity, 50 rational tuples", conv_ok))
    conclude(5, "partition count, recurrence, shift and convolution", checks)


def test_criterion_06_gamma_derivative_suite():
    tol = XReal("1e-10", 256)
    quad_ok = True
    for m in range(1, 7):
        gd = zeta.gamma_derivative(m, 1, 256)
        q = quadrature.integrate_halfline(
            lambda t, m=m: exp(-t) * log(t) ** m, tol=1e-20, prec=256)
        quad_ok = quad_ok and q.converged and abs(gd - q.value) <= tol
    sign_ok = all((-1) ** m * zeta.gamma_derivative(m, 1, 192) > 0
                  for m in range(1, 11))
    g = zeta.constant("gamma", 256)
    z2 = zeta.constant("zeta2", 256)
    z3 = zeta.constant("zeta3", 256)
    cap = XReal("1e-12", 256)
    closed_ok = (
        abs(zeta.gamma_derivative(1, 1, 256) + g) <= cap
        and abs(zeta.gamma_derivative(2, 1, 256) - (g * g + z2)) <= cap
        and abs(zeta.gamma_derivative(3, 1, 256)
                - (-(g * g * g) - 3 * g * z2 - 2 * z3)) <= cap)
    conclude(6, "derivatives of gamma at 1: quadrature, signs, closed forms", [
        ("matches half-line quadrature, m <= 6", quad_ok),
        ("sign law (-1)^m, m <= 10", sign_ok),
        ("three closed forms <= 1e-12", closed_ok),
    ])


def test_criterion_07_adjudication(ctx256):
    adj = auditor.adjudicate_stieltjes_families(256, ctx=ctx256)
    g = zeta.constant("gamma", 256)
    g1 = as_xreal(pinned("gamma_1"), 256)
    target = -(g1 + g * g)
    signs = {r.case_id: r.verdict for r in auditor.run_registry(
        prec=256, ids=["EQ_2_6_N1", "EQ_2_6_N2", "EQ_2_6_N3",
                       "EQ_2_11", "EQ_2_11_AS_I2"], ctx=ctx256)}
    conclude(7, "family adjudication via the first two log-moments", [
        ("first moment equals -(gamma_1 + gamma^2) <= 1e-8",
         abs(adj.first.integral - target) <= XReal("1e-8", 256)),
        ("rejected prediction misses by |gamma_1|",
         within(adj.first.residual_section2, abs(g1), "1e-3")),
        ("second moment deviates too",
         adj.second.residual_section2 > XReal("1", 256)),
        ("sign claims hold as signs of the integrals",
         all(signs[i] == "PASS" for i in
             ("EQ_2_6_N1", "EQ_2_6_N2", "EQ_2_6_N3", "EQ_2_11_AS_I2"))),
        ("printed orientation deviates, as adjudicated",
         signs["EQ_2_11"] == "AUDIT_DEVIATION"),
        ("winner is the rigorous family",
         adj.first.winner == "APPENDIX_B" and adj.second.winner == "APPENDIX_B"),
        ("conclusive", adj.first.conclusive and adj.second.conclusive),
    ])


def test_criterion_08_reconstruction(ctx256):
    dn = auditor.compute_dn_table(4, 256, ctx=ctx256)
    checks = []
    for m, tol in ((0, "1e-5"), (1, "1e-5"), (2, "1e-5"), (3, "1e-4")):
        rec = auditor.reconstruct_gamma_via_dn(m, dn, 256)
        ref = hasse.stieltjes_gamma(m, 1, 256).value
        checks.append((f"m={m} within {tol}", within(rec, ref, tol)))
    conclude(8, "gamma_n rebuilt from d-values and Bell polynomials", checks)


def test_criterion_09_polylog_suite(ctx256):
    reps = {r.case_id: r for r in auditor.run_registry(
        prec=256, ids=["EQ_B_5", "EQ_B_6", "EQ_B_8", "EQ_B_10", "EQ_B_11"],
        ctx=ctx256)}
    tight = XReal("1e-8", 256)
    loose = XReal("1e-6", 256)
    conclude(9, "dilogarithm and series identities", [
        ("all five pass", all(r.verdict == "PASS" for r in reps.values())),
        ("B.5/B.6 <= 1e-8", reps["EQ_B_5"].abs_residual <= tight
         and reps["EQ_B_6"].abs_residual <= tight),
        ("B.5 value pins", within(reps["EQ_B_5"].rhs_value,
                                  pinned("b5_combo"), "1e-8")),
        ("B.8 reproduces zeta'(2)", within(reps["EQ_B_8"].lhs_value,
                                           pinned("zeta_prime_2"), "1e-8")),
        ("B.10/B.11 <= 1e-6", reps["EQ_B_10"].abs_residual <= loose
         and reps["EQ_B_11"].abs_residual <= loose),
    ])


def test_criterion_10_coppo_suite():
    tol = XReal("1e-9", 256)
    moment_ok = True
    for n in range(5):
        for x in (-1, 0, Fraction(1, 2), Fraction(3, 2), 3):
            q = coppo.moment_integral(n, x, 256)
            want = as_xreal(Fraction(x) ** n, 256)
            moment_ok = moment_ok and abs(q.value - want) <= tol
    g = zeta.constant("gamma", 256)
    z2 = zeta.constant("zeta2", 256)
    cap = XReal("1e-12", 256)
    p0 = coppo.backsub_coefficients(0, 256)
    p1 = coppo.backsub_coefficients(1, 256)
    p2 = coppo.backsub_coefficients(2, 256)
    printed_ok = (
        abs(as_xreal(p0[0], 256) - 1) <= cap
        and abs(as_xreal(p1[0], 256) + g) <= cap
        and abs(as_xreal(p1[1], 256) - 1) <= cap
        and abs(as_xreal(p2[0], 256) - (g * g - z2)) <= cap
        and abs(as_xreal(p2[1], 256) + 2 * g) <= cap
        and abs(as_xreal(p2[2], 256) - 1) <= cap)
    conclude(10, "moment property and printed polynomials", [
        ("x^n recovered <= 1e-9, n <= 4, five x-values", moment_ok),
        ("p0..p2 coefficients <= 1e-12", printed_ok),
    ])


def test_criterion_11_limit_suite():
    suite = auditor.limit_suite(256)
    by_id = {e.limit_id: e for e in suite.entries}
    checks = []
    for lid in ("B_14", "B_16", "B_17", "B_18", "B_19", "B_20"):
        e = by_id[lid]
        checks.append((lid, e.monotone and e.final_below_slack
                       and len(e.residuals) == 13))
    conclude(11, "endpoint limits decay monotonically, final < 0.05", checks)


def test_criterion_12_determinism():
    cfg = cli.RunConfig(precision_bits=256, jobs=4)
    doc_a, reps_256 = cli.build_report_document(cfg)
    doc_b, _ = cli.build_report_document(cfg)
    bytes_a = json.dumps(doc_a, sort_keys=True)
    bytes_b = json.dumps(doc_b, sort_keys=True)
    verdicts = {}
    for prec in (192, 320):
        reps = auditor.run_registry(prec=prec, jobs=4)
        verdicts[prec] = {r.case_id: r.verdict for r in reps}
    verdicts[256] = {r.case_id: r.verdict for r in reps_256}
    conclude(12, "byte-identical reruns, verdicts stable across precision", [
        ("reruns byte-identical", bytes_a == bytes_b),
        ("192 agrees with 256", verdicts[192] == verdicts[256]),
        ("320 agrees with 256", verdicts[320] == verdicts[256]),
    ])
