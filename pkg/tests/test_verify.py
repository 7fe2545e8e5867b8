import json

import pytest

from ballmoduli import (Bracket, Budget, DomainError, list_suites, run_suite)
from ballmoduli.verify import FAIL, INCONCLUSIVE, PASS, compare


class TestCompare:
    def test_certified_pass(self):
        c = compare("n", "s", {}, Bracket.exact(1.0), Bracket.exact(0.5))
        assert c.status == PASS

    def test_pass_within_combined_widths(self):
        lhs = Bracket(lower=0.4, upper=0.6, method="exact", resolution=0.0,
                      lipschitz=0.0)
        rhs = Bracket.exact(0.55)
        assert compare("n", "s", {}, lhs, rhs).status == PASS

    def test_certified_fail_keeps_counterexample(self):
        c = compare("n", "s", {}, Bracket.exact(0.0), Bracket.exact(1.0),
                    {"why": "yes"})
        assert c.status == FAIL
        assert c.counterexample == {"why": "yes"}

    def test_inconclusive_band(self):
        lhs = Bracket.exact(0.895)
        rhs = Bracket(lower=0.9, upper=1.0, method="exact", resolution=0.0,
                      lipschitz=0.0)
        assert compare("n", "s", {}, lhs, rhs).status == INCONCLUSIVE


class TestRegistry:
    def test_known_suites(self):
        assert {"lemmas", "chain", "mip-detect", "lpsum", "ordering",
                "dense-set", "spaces", "beta-slices",
                "delta-q"} <= set(list_suites())

    def test_unknown_suite_raises(self):
        with pytest.raises(DomainError):
            run_suite("nope")


class TestSuiteRuns:
    def test_spaces_suite_passes(self):
        report = run_suite("spaces")
        assert report.ok and report.n_fail == 0

    def test_delta_q_suite_passes(self):
        report = run_suite("delta-q")
        assert report.ok

    def test_mip_detect_classifies(self):
        report = run_suite("mip-detect")
        assert report.ok
        assert report.flags["l1-2d"] == "MIP: violated"
        assert report.flags["l2-2"] == "MIP: positive"

    def test_lpsum_suite_small(self):
        report = run_suite("lpsum", n_pairs=100)
        assert report.ok
        rows = report.flags["rows"]
        assert {r["t"] for r in rows} == {0.4, 0.8}
        for row in rows:
            assert row["beta_sum_lower"] >= row["bound"]

    def test_mini_lemma_battery(self):
        report = run_suite("lemmas", spaces=["l2-2", "linf-2d"],
                           instances_per_lemma=12)
        assert report.ok
        assert len(report.checks) == 6 * 12

    def test_ordering_single_space(self):
        report = run_suite("ordering", spaces=["l2-2"],
                           budget=Budget(resolution=8e-3))
        assert report.ok


class TestReports:
    def test_checks_canonically_sorted(self):
        report = run_suite("spaces")
        keys = [(c.name, c.space, json.dumps(c.params, sort_keys=True))
                for c in report.checks]
        assert keys == sorted(keys)

    def test_deterministic_given_seed(self):
        a = run_suite("spaces", seed=7).to_json()
        b = run_suite("spaces", seed=7).to_json()
        assert a == b

    def test_report_json_shape(self):
        report = run_suite("delta-q")
        data = report.to_json()
        assert set(data) == {"suite", "seed", "config", "flags", "summary",
                             "checks"}
        for check in data["checks"]:
            assert {"name", "space", "params", "status", "lhs",
                    "rhs"} <= set(check)
            assert {"lower", "upper", "method",
                    "resolution"} <= set(check["lhs"])
