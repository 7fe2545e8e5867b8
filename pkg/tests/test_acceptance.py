"""Acceptance gate: seven criteria, one pass/fail line each.

Each test prints ``CRITERION-k <label>: PASS`` when its assertions hold;
a pytest failure in a test marks that criterion failed.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from ballmoduli import (BallConstructionError, beta_point,
                        construct_separating_ball, modulus_convexity, norm,
                        pairing, preset, run_oracle_battery, run_suite,
                        s_point)
from ballmoduli.oracle import exact_s_point


def _report(k, label, ok=True):
    print(f"CRITERION-{k} {label}: {'PASS' if ok else 'FAIL'}")


def test_criterion_1_closed_form_pins():
    """Four closed-form values pinned within bracket width 5e-3, <= 10 s each."""
    l2 = preset("l2-2")
    linf = preset("linf-2d")

    t0 = time.time()
    b = modulus_convexity(l2, 1.0)
    assert time.time() - t0 <= 10.0
    assert b.width <= 5e-3
    assert b.contains(1.0 - math.sqrt(3.0) / 2.0, slack=1e-12)  # 0.13397...

    t0 = time.time()
    b = s_point(l2, (1.0, 0.0), (1.0, 0.0), 1.0)
    assert time.time() - t0 <= 10.0
    assert b.width <= 5e-3
    assert b.contains(math.sqrt(17.0) / 4.0 - 1.0, slack=1e-12)  # 0.03078...

    t0 = time.time()
    b = beta_point(l2, (1.0, 0.0), (1.0, 0.0), 0.5)
    assert time.time() - t0 <= 10.0
    assert b.width <= 5e-3
    assert b.contains(0.125, slack=1e-12)

    t0 = time.time()
    exact = exact_s_point(linf, (1.0, 1.0), (0.5, 0.5), 1.0)
    b = s_point(linf, (1.0, 1.0), (0.5, 0.5), 1.0)
    assert time.time() - t0 <= 10.0
    assert exact == Fraction(1, 4)
    assert b.contains(0.25, slack=1e-12) and b.width <= 5e-3
    _report(1, "closed-form pins")


def test_criterion_2_lemma_battery():
    """>= 200 randomized instances per lemma, zero violations, <= 10 min."""
    t0 = time.time()
    report = run_suite("lemmas", seed=0)
    elapsed = time.time() - t0
    per_lemma = {}
    for c in report.checks:
        per_lemma[c.name] = per_lemma.get(c.name, 0) + 1
    assert len(per_lemma) == 6
    assert all(n >= 200 for n in per_lemma.values())
    assert report.n_fail == 0, [c.to_json() for c in report.checks
                                if c.status == "fail"]
    assert elapsed <= 600.0
    _report(2, f"lemma battery ({len(report.checks)} instances, "
               f"{elapsed:.0f}s)")


def test_criterion_3_quantitative_chain():
    """Dual convexity/denting chain and the beta comparison, zero violations."""
    report = run_suite("chain")
    assert report.n_fail == 0, [c.to_json() for c in report.checks
                                if c.status == "fail"]
    names = {c.name for c in report.checks}
    assert names == {"dual-convexity-dominates-quarter-scale-dstar",
                     "dstar-dominates-twentieth-scale-dual-convexity",
                     "beta-dominates-twice-dual-convexity"}
    spaces = {c.space for c in report.checks}
    assert spaces == {"lp:1.5-2d", "lp:2-2d", "lp:3-2d"}
    _report(3, "quantitative chain")


def test_criterion_4_mip_detection():
    """Exact flat-face zeros classify the cross-polytope as violating the
    intersection property; the disk classifies positive.  <= 1 min."""
    t0 = time.time()
    report = run_suite("mip-detect")
    elapsed = time.time() - t0
    assert report.n_fail == 0
    assert report.flags["l1-2d"] == "MIP: violated"
    assert report.flags["l2-2"] == "MIP: positive"
    assert elapsed <= 60.0
    # deterministic
    again = run_suite("mip-detect")
    assert again.to_json() == report.to_json()
    _report(4, f"MIP detection ({elapsed:.1f}s)")


def test_criterion_5_lp_sum_stability():
    """Sum-stability contracts on the 2-sum of two Euclidean planes, 10^3
    sampled pairs at t in {0.4, 0.8}, <= 5 min."""
    t0 = time.time()
    report = run_suite("lpsum", n_pairs=1000)
    elapsed = time.time() - t0
    assert report.n_fail == 0, [c.to_json() for c in report.checks
                                if c.status == "fail"]
    rows = report.flags["rows"]
    assert {r["t"] for r in rows} == {0.4, 0.8}
    for row in rows:
        assert row["beta_sum_lower"] >= row["bound"]
        assert row["pass"]
    assert elapsed <= 300.0
    _report(5, f"lp-sum stability ({elapsed:.0f}s)")


def test_criterion_6_oracle_engine_coherence():
    """Engine and oracle brackets overlap on all 30 battery instances and
    every available exact value lies inside both brackets."""
    out = run_oracle_battery()
    assert out["n_instances"] == 30
    assert out["n_overlap"] == 30, [r for r in out["records"]
                                    if not r["overlap"]]
    exact_recs = [r for r in out["records"] if "exact" in r]
    assert exact_recs, "the battery must include exact polyhedral instances"
    assert all(r["exact_inside"] for r in exact_recs)
    _report(6, f"oracle/engine coherence (30/30, "
               f"{len(exact_recs)} exact values)")


def test_criterion_7_separating_ball():
    """Euclidean instance returns a verified ball; flat dual ball returns
    the structured failure."""
    space = preset("l2-2")
    C = [(0.5, -0.2), (0.5, 0.2)]
    eps = 0.5
    ball = construct_separating_ball(space, C, (1.0, 0.0), eps, 1.0)
    tol = 1e-6
    center = np.asarray(ball.center.coords)
    for v in C:
        assert norm(space, np.asarray(v) - center) <= ball.radius + tol
    assert pairing((1.0, 0.0), center) - ball.radius >= eps / 2.0 - tol
    assert ball.radius <= ball.K + tol

    with pytest.raises(BallConstructionError) as err:
        construct_separating_ball(preset("l1-2d"), C, (1.0, 0.0), eps, 1.0)
    assert err.value.condition == "no-small-slice-witness"
    _report(7, "separating-ball recipe")
