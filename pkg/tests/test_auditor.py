"""Registry structure, case evaluation, derived tables, and the adjudication."""

import pytest

from stieltjes_audit import auditor
from stieltjes_audit.auditor import (ALLOWED_SHARED, AUDIT_DEVIATION,
                                     AuditContext, ERROR, FAIL, PASS,
                                     RIGOROUS, SECTION2_AUDIT)
from stieltjes_audit.xreal import XReal, as_xreal

from conftest import matches_pin, pinned, within


def test_registry_is_well_formed():
    cases = auditor.registry()
    assert len(cases) == 129
    ids = [c.id for c in cases]
    assert len(set(ids)) == len(ids)
    for c in cases:
        assert c.family in (RIGOROUS, SECTION2_AUDIT)
        assert c.kind in ("equality", "positive", "divergent")
        assert c.paper_anchor.strip()
        assert c.description
        if c.kind == "equality":
            assert c.tolerance > 0
            # both sides must not lean on the same computational route
            shared = (set(c.lhs_deps) & set(c.rhs_deps)) - ALLOWED_SHARED
            assert not shared, (c.id, shared)


def test_case_lookup():
    c = auditor.case_by_id("EQ_B_30")
    assert c.family == RIGOROUS
    with pytest.raises(KeyError):
        auditor.case_by_id("EQ_NOPE")


def test_evaluate_single_case(ctx256):
    rep = auditor.evaluate_case(auditor.case_by_id("EQ_B_2_N1"), ctx256)
    assert rep.verdict == PASS
    assert rep.abs_residual <= rep.tolerance
    assert rep.evaluations > 0


def test_divergent_case_detection(ctx256):
    rep = auditor.evaluate_case(auditor.case_by_id("EQ_1_5_DIV_N1R2U1"), ctx256)
    assert rep.verdict == PASS
    assert rep.lhs_value is None
    assert rep.rhs_value is not None
    assert "divergence detected" in rep.note


def test_section2_deviation_is_not_failure(ctx256):
    rep = auditor.evaluate_case(auditor.case_by_id("EQ_2_5"), ctx256)
    assert rep.family == SECTION2_AUDIT
    assert rep.verdict == AUDIT_DEVIATION
    # the miss is the size of gamma_1, the signature of the family clash
    assert within(rep.abs_residual, abs(pinned("gamma_1")), "1e-4")


def test_tolerance_override(ctx256):
    rep = auditor.evaluate_case(auditor.case_by_id("EQ_2_5"), ctx256,
                                tol_override=1.0)
    assert rep.verdict == PASS


def test_run_registry_preserves_order_and_filters(ctx256):
    ids = ["EQ_B_30", "EQ_1_11", "EQ_B_21_N1"]
    reps = auditor.run_registry(prec=256, ids=ids, ctx=ctx256)
    assert [r.case_id for r in reps] == ["EQ_1_11", "EQ_B_21_N1", "EQ_B_30"]
    fam = auditor.run_registry(prec=256, family=SECTION2_AUDIT, ctx=ctx256)
    assert fam and all(r.family == SECTION2_AUDIT for r in fam)
    with pytest.raises(KeyError):
        auditor.run_registry(prec=256, ids=["EQ_MISSING"], ctx=ctx256)


def test_parallel_run_is_bit_identical(ctx256):
    ids = ["EQ_1_10_U1", "EQ_1_10_U2", "EQ_B_2_N1", "EQ_B_2_N2",
           "EQ_B_4_N1", "EQ_B_4_N2", "EQ_1_14_U1", "EQ_1_14_U2"]
    seq = auditor.run_registry(prec=192, ids=ids)
    par = auditor.run_registry(prec=192, ids=ids, jobs=4)
    for a, b in zip(seq, par):
        assert a.case_id == b.case_id
        assert a.verdict == b.verdict
        assert str(a.lhs_value.raw) == str(b.lhs_value.raw)
        assert a.evaluations == b.evaluations


def test_dn_table_pins(ctx256):
    dn = auditor.compute_dn_table(6, 256, ctx=ctx256)
    for n in range(7):
        assert matches_pin(as_xreal(dn.d(n), 320), f"d_{n}")
        assert dn.errors[n] < XReal("1e-60", 256)
    with pytest.raises(ValueError):
        auditor.compute_dn_table(7, 256)


def test_dn_convolution_agrees_with_quadrature(ctx256):
    dn = auditor.compute_dn_table(3, 256, ctx=ctx256)
    for n in range(4):
        conv = auditor.dn_convolution(n, 256)
        assert abs(as_xreal(dn.d(n), 256) - conv) <= XReal("1e-60", 256)


def test_reconstruction_round_trip(ctx256):
    dn = auditor.compute_dn_table(4, 256, ctx=ctx256)
    for m, tol in ((0, "1e-5"), (1, "1e-5"), (2, "1e-5"), (3, "1e-4")):
        rec = auditor.reconstruct_gamma_via_dn(m, dn, 256)
        assert within(rec, pinned(f"gamma_{m}"), tol)


def test_adjudication_structure(ctx256):
    adj = auditor.adjudicate_stieltjes_families(256, ctx=ctx256)
    assert adj.first.winner == "APPENDIX_B"
    assert adj.second.winner == "APPENDIX_B"
    assert adj.first.conclusive and adj.second.conclusive
    assert adj.gap_equals_gamma1
    # the first-moment gap is |gamma_1| itself
    assert within(adj.first.gap, abs(pinned("gamma_1")), "1e-10")
    assert adj.first.residual_appendix < XReal("1e-8", 256)
    assert adj.first.residual_section2 > XReal("0.07", 256)


def test_sign_suites_all_hold(ctx256):
    suite = auditor.sign_suites(256, ctx=ctx256)
    assert suite.all_hold
    assert len(suite.claims) >= 18
    ids = {c.claim_id for c in suite.claims}
    assert "DN_POSITIVE_N1" in ids
    assert "GAMMA_DERIV_SIGN_M10" in ids
    assert "ETA1_POSITIVE" in ids


def test_limit_suite_shapes():
    suite = auditor.limit_suite(192)
    assert suite.all_hold
    by_id = {e.limit_id: e for e in suite.entries}
    for lid in ("B_14", "B_16", "B_17", "B_18", "B_19", "B_20"):
        entry = by_id[lid]
        assert entry.asserted and entry.monotone and entry.final_below_slack
    printed = by_id["B_14_PRINTED"]
    assert not printed.asserted
    assert not printed.final_below_slack


def test_truncation_check_rows():
    rows = auditor.hasse_truncation_check(192)
    assert [n for n, _, _ in rows] == [128, 256, 512]
    for n, tail, cap in rows:
        assert tail <= cap


def test_context_validation():
    with pytest.raises(ValueError):
        AuditContext(32)
