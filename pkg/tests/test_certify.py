import json
import math
from dataclasses import replace
from fractions import Fraction

import pytest

from rileycert.certify import (CosRatio, HashMismatch, PreconditionUnverifiable,
                               RootCertificate, ScanReport, find_root_gt2,
                               lo_set, solve_lambda_witness, verify_certificate,
                               witness_plan_for, xn_enclosure)
from rileycert.dyadic import Dyadic, DyadicInterval
from rileycert.knots import DoubleTwistKnot, KlKnot, TwoBridgeFraction
from rileycert.polyring import eval_interval
from rileycert.riley import kl_named_polys, lambda_dt, riley_for_knot


def test_xn_exact_cases():
    assert xn_enclosure(2, 128) == DyadicInterval.point(0)
    assert xn_enclosure(3, 128) == DyadicInterval.point(1)


def test_xn_algebraic_cases():
    for n, square in ((4, 2), (6, 3)):
        iv = xn_enclosure(n, 128)
        assert iv.width() <= Dyadic(1, -128)
        assert iv.lo.as_fraction() ** 2 < square < iv.hi.as_fraction() ** 2


def test_xn_series_cases():
    for n in (5, 7, 9, 12, 50):
        iv = xn_enclosure(n, 128)
        assert iv.width() <= Dyadic(1, -128)
        assert abs(float(iv.midpoint()) - 2 * math.cos(math.pi / n)) < 1e-12
    with pytest.raises(ValueError):
        xn_enclosure(1, 64)


def test_xn_definite_signs_survive_refinement():
    # a definite evaluation sign never flips as precision increases
    phi = riley_for_knot(DoubleTwistKnot(1, 2))
    point = DyadicInterval.point(Dyadic(5, -1))
    signs = [eval_interval(phi.poly, xn_enclosure(5, prec), point).sign()
             for prec in (64, 128, 256, 512)]
    assert signs[0] in (1, -1)
    assert all(s == signs[0] for s in signs)


def test_cos_ratio_comparisons_exact():
    # m = 3 against n = 4 is the boundary case c = x_n^2 - 2 exactly
    assert CosRatio(1, 2).le_xn_squared_minus_2(4)
    assert not CosRatio(1, 2).le_xn_squared_minus_2(3)
    # m = 4 against n = 3: c = -1 = x_3^2 - 2, again equality
    assert CosRatio(2, 3).le_xn_squared_minus_2(3)
    assert CosRatio(3, 4).le_xn_squared_minus_2(3)
    assert CosRatio(1, 3).le_one()
    assert not CosRatio(1, 4).le_one()
    with pytest.raises(ValueError):
        CosRatio(3, 2)


def _check_witness_enclosure(lam, n, ratio, require_c_le_1=False):
    xn = xn_enclosure(n, 128)
    y_c = solve_lambda_witness(lam, xn, ratio, 128, n=n,
                               require_c_le_1=require_c_le_1)
    assert y_c.lo >= 2
    # lambda over the enclosure must straddle c
    lam_iv = eval_interval(lam, xn, y_c)
    c_iv = ratio.enclosure(160)
    assert lam_iv.lo.as_fraction() <= c_iv.hi.as_fraction()
    assert c_iv.lo.as_fraction() <= lam_iv.hi.as_fraction()
    return y_c


def test_solve_lambda_witness_boundary_m3_n4():
    # c = 0 = x_4^2 - 2: y_c = 2 exactly, enclosure hugs it
    y_c = _check_witness_enclosure(lambda_dt(1), 4, CosRatio(1, 2))
    assert y_c.hi - y_c.lo <= Dyadic(1, -100)
    assert y_c.lo == 2


def test_solve_lambda_witness_boundary_m4_n3():
    y_c = _check_witness_enclosure(lambda_dt(2), 3, CosRatio(2, 3))
    assert y_c.lo == 2  # lambda(x_3, 2) = -1 = c already


def test_solve_lambda_witness_interior():
    y_c = _check_witness_enclosure(lambda_dt(1), 5, CosRatio(2, 3))
    assert y_c.lo > 2


def test_solve_lambda_witness_kl():
    lam, _, _ = kl_named_polys()
    _check_witness_enclosure(lam, 4, CosRatio(1, 2), require_c_le_1=True)


def test_solve_lambda_witness_precondition_failures():
    with pytest.raises(PreconditionUnverifiable):
        solve_lambda_witness(lambda_dt(1), xn_enclosure(3, 128),
                             CosRatio(1, 2), 128, n=3)  # m=3 needs n>=4
    lam, _, _ = kl_named_polys()
    with pytest.raises(PreconditionUnverifiable):
        solve_lambda_witness(lam, xn_enclosure(8, 128), CosRatio(1, 4), 128,
                             n=8, require_c_le_1=True)  # c > 1
    # interval route (no n): strict case passes, boundary case cannot certify
    solve_lambda_witness(lambda_dt(1), xn_enclosure(5, 128), CosRatio(1, 2), 128)
    with pytest.raises(PreconditionUnverifiable):
        solve_lambda_witness(lambda_dt(1), xn_enclosure(4, 128),
                             CosRatio(1, 2), 128)


def test_find_root_examples_m2():
    knot = DoubleTwistKnot(1, 2)
    phi = riley_for_knot(knot)
    for n in (5, 6):
        report = find_root_gt2(phi, n, witness=witness_plan_for(knot))
        assert report.certified, n
        cert = report.certificate
        assert cert.a > 2
        assert cert.a >= Dyadic(2) + Dyadic(1, -64)  # strictness margin
        assert cert.b - cert.a <= Dyadic(1, -128)
        assert cert.sign_a == -cert.sign_b
        assert verify_certificate(cert, phi)


def test_find_root_inconclusive_n2():
    knot = DoubleTwistKnot(1, 2)
    phi = riley_for_knot(knot)
    report = find_root_gt2(phi, 2, y_max=64, y_max_cap=64,
                           witness=witness_plan_for(knot))
    assert report.status == "inconclusive"
    assert report.certificate is None
    assert report.trace["y_max_reached"] == 64
    assert "absence" in report.trace["note"]


def test_find_root_thresholds_sample():
    cases = [(DoubleTwistKnot(1, 4), 3, True),
             (DoubleTwistKnot(1, 3), 3, False),
             (DoubleTwistKnot(1, 3), 4, True),
             (DoubleTwistKnot(1, -2), 3, False),
             (DoubleTwistKnot(1, -2), 4, True),
             (KlKnot(2), 4, False),
             (KlKnot(2), 5, True),
             (KlKnot(3), 4, True),
             (KlKnot(4), 3, True)]
    for knot, n, expect in cases:
        phi = riley_for_knot(knot)
        report = find_root_gt2(phi, n, witness=witness_plan_for(knot),
                               y_max_cap=64)
        assert report.certified == expect, (knot, n, report.status)
        if expect:
            assert verify_certificate(report.certificate, phi)


def test_find_root_generic_fraction():
    # figure-eight: double branched cover is a lens space, higher ones are
    # known not left-orderable; the scan must come back empty-handed
    phi = riley_for_knot(TwoBridgeFraction(5, 3))
    report = find_root_gt2(phi, 3, y_max=16, y_max_cap=16)
    assert report.status == "inconclusive"


def test_certificate_tampering_detected():
    knot = DoubleTwistKnot(1, 4)
    phi = riley_for_knot(knot)
    cert = find_root_gt2(phi, 3, witness=witness_plan_for(knot)).certificate
    assert verify_certificate(cert, phi)
    assert not verify_certificate(replace(cert, a=cert.b, b=cert.a), phi)
    assert not verify_certificate(replace(cert, a=Dyadic(1), b=cert.b), phi)
    assert not verify_certificate(
        replace(cert, sign_a=cert.sign_b, sign_b=cert.sign_a), phi)
    # a <= 2 is rejected outright
    assert not verify_certificate(replace(cert, a=Dyadic(2)), phi)
    with pytest.raises(HashMismatch):
        verify_certificate(replace(cert, poly_hash="0" * 64), phi)
    other = riley_for_knot(DoubleTwistKnot(1, 3))
    with pytest.raises(HashMismatch):
        verify_certificate(cert, other)


def test_certificate_serialization_round_trip():
    knot = KlKnot(3)
    phi = riley_for_knot(knot)
    cert = find_root_gt2(phi, 4, witness=witness_plan_for(knot)).certificate
    blob = json.dumps(cert.to_json_dict(), sort_keys=True)
    restored = RootCertificate.from_json_dict(json.loads(blob))
    assert restored == cert
    assert json.dumps(restored.to_json_dict(), sort_keys=True) == blob
    assert verify_certificate(restored, phi)
    signs = cert.to_json_dict()["signs"]
    assert set(signs) == {"+", "-"}


def test_lo_set_deterministic_and_correct():
    knot = DoubleTwistKnot(1, -3)
    first = lo_set(knot, 5, y_max_cap=64)
    second = lo_set(knot, 5, y_max_cap=64)
    assert set(first) == {2, 3, 4, 5}
    for n in first:
        assert first[n].status == second[n].status
        assert first[n].certificate == second[n].certificate
    # m <= -3: certified from n = 3 on
    assert not first[2].certified
    assert all(first[n].certified for n in (3, 4, 5))


def test_scan_report_shape():
    report = ScanReport("inconclusive", None, {"y_max_reached": 64})
    assert not report.certified
    knot = DoubleTwistKnot(2, 2)
    phi = riley_for_knot(knot)
    rep = find_root_gt2(phi, 6, witness=witness_plan_for(knot))
    assert rep.certified and rep.trace["grid_step"] == "1/8"


def test_certificate_survives_precision_refinement():
    # a certificate valid at precision P stays valid at every P' > P
    knot = DoubleTwistKnot(1, 3)
    phi = riley_for_knot(knot)
    cert = find_root_gt2(phi, 4, witness=witness_plan_for(knot)).certificate
    for factor in (2, 4):
        finer = replace(cert, precision=cert.precision * factor)
        assert verify_certificate(finer, phi)


def test_alpha_exceeds_one_on_xn_enclosures():
    # alpha(x_n, y) > 1 for y >= 2: interval evaluation of alpha - 1 is
    # positive-definite at sampled y across the whole n-grid
    from rileycert.riley import alpha_dt
    samples = [Dyadic(2), Dyadic(5, -1), Dyadic(7), Dyadic(161, -2), Dyadic(40)]
    for k in range(1, 5):
        alpha_minus_1 = alpha_dt(k) - 1
        for n in range(2, 13):
            xn = xn_enclosure(n, 128)
            for y in samples:
                iv = eval_interval(alpha_minus_1, xn, DyadicInterval.point(y))
                assert iv.sign() == 1, (k, n, y)


def test_witness_sign_consistency():
    # at y_c: (-1)^(m-1) phi(x_n, y_c) < 0 for the double twists, and the
    # K_l alpha is negative-definite (what makes the witness probes work)
    for k in (1, 2):
        for m in (3, 4, 5):
            n_min = 4 if m == 3 else 3
            phi = riley_for_knot(DoubleTwistKnot(k, m))
            for n in (n_min, n_min + 2):
                xn = xn_enclosure(n, 128)
                y_c = solve_lambda_witness(lambda_dt(k), xn,
                                           CosRatio(m - 2, m - 1), 128, n=n)
                sign = eval_interval(phi.poly, xn, y_c).sign()
                assert sign == (-1 if m % 2 == 1 else 1), (k, m, n)
    lam, alpha, _ = kl_named_polys()
    for l in (3, 4):
        n_min = 4 if l == 3 else 3
        for n in (n_min, n_min + 2):
            xn = xn_enclosure(n, 128)
            y_c = solve_lambda_witness(lam, xn, CosRatio(l - 2, l - 1), 128,
                                       n=n, require_c_le_1=True)
            assert eval_interval(alpha, xn, y_c).sign() == -1, (l, n)


def test_witness_plans():
    assert witness_plan_for(DoubleTwistKnot(1, 2)) is None
    plan = witness_plan_for(DoubleTwistKnot(1, 3))
    assert plan.kind == "lambda-preimage" and plan.target == CosRatio(1, 2)
    plan = witness_plan_for(DoubleTwistKnot(2, -4))
    assert plan.target == CosRatio(3, 4)
    assert witness_plan_for(KlKnot(2)).kind == "alpha-sign-point"
    plan = witness_plan_for(KlKnot(5))
    assert plan.target == CosRatio(3, 4) and plan.require_c_le_1
    assert witness_plan_for(TwoBridgeFraction(5, 3)) is None
