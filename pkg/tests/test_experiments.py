"""Preset experiments at reduced scale, report plumbing, determinism."""

import json
import math
import os

from pdml import experiments
from pdml.experiments import (
    choose_oracle_degree,
    render_report,
    run_coefficient_obstruction,
    run_curve_sum_witnesses,
    run_example_power_tower,
    run_frobenius_twist_equality,
    run_split_experiment,
    write_report,
)


class TestReportPlumbing:
    def test_render_strips_runtime(self):
        doc = {"a": 1, "runtimeSeconds": 3.2}
        assert "runtimeSeconds" not in render_report(doc)

    def test_render_is_canonical(self):
        a = render_report({"b": 1, "a": [2, 3]})
        b = render_report({"a": [2, 3], "b": 1})
        assert a == b
        json.loads(a)  # stays valid JSON

    def test_write_report_atomic_replace(self, tmp_path):
        path = str(tmp_path / "r.json")
        write_report(path, {"x": 1})
        write_report(path, {"x": 2})
        assert json.load(open(path)) == {"x": 2}
        assert not os.path.exists(path + ".tmp")


class TestOracleDegree:
    def test_bound_is_met(self):
        for p, D, trials in [(5, 10**6, 2), (11, 10**12, 2), (5, 2**300, 2)]:
            d = choose_oracle_degree(p, D, trials)
            assert experiments._is_prime(d)
            # total false-positive bound (D d / p^d)^trials <= 2^-80
            per = math.log2(D) + math.log2(d) - d * math.log2(p)
            assert trials * per <= -80

    def test_minimality(self):
        d = choose_oracle_degree(5, 10**6, 2)
        smaller = [
            e
            for e in range(2, d)
            if experiments._is_prime(e)
            and 2 * (math.log2(10**6) + math.log2(e) - e * math.log2(5))
            <= -80
        ]
        assert not smaller


class TestPowerTowerPreset:
    def test_small_window(self):
        doc = run_example_power_tower(p=5, N=130)
        assert doc["verdict"] == "pass"
        assert doc["members"] == [1, 5, 25, 125]
        assert doc["worstMemberErrorBoundLog2"] <= -80
        assert doc["mismatchIndices"] == []

    def test_other_prime(self):
        doc = run_example_power_tower(p=3, N=90)
        assert doc["verdict"] == "pass"
        assert doc["members"] == [1, 3, 9, 27, 81]


class TestTwistPreset:
    def test_small_window(self):
        doc = run_frobenius_twist_equality(p=5, N=130)
        assert doc["verdict"] == "pass"
        assert doc["baseMembers"] == doc["twistMembers"] == [1, 5, 25, 125]
        assert doc["disagreeingIndices"] == []


class TestCurveSumPreset:
    def test_small(self):
        doc = run_curve_sum_witnesses(p=11, m_values=(0, 1), n_samples=5)
        assert doc["verdict"] == "pass"
        assert [w["n"] for w in doc["witnesses"]] == [2, 132]
        for w in doc["witnesses"]:
            assert w["closedFormMatches"] and w["targetPointMatches"]
        for r in doc["nonFamilySamples"]:
            assert r["verdict"] == "NotMember" and r["certainty"] == "Certain"


class TestObstructionPreset:
    def test_small_prime(self):
        # p=3, c=1 -> m=16: same pipeline, cheap
        doc = run_coefficient_obstruction(p=3, c=1)
        assert doc["config"]["m"] == 16
        assert doc["lhsMatchesTarget"] and doc["rhsMatchesTarget"]
        assert doc["coefficientsDiffer"]
        assert doc["verdict"] == "pass"


class TestSplitPreset:
    def test_contradiction(self):
        doc = run_split_experiment(p=5, N=60)
        assert doc["verdict"] == "contradiction-exhibited"
        assert doc["returnIndices"] == [0]
        assert doc["degreeGapCertified"]
        assert doc["upperEnvelope"]["passed"]
        assert doc["lowerEnvelope"]["passed"]
        assert not doc["fastCoordinatePreperiodic"]

    def test_preperiodic_start_is_compatible(self):
        # start with fast coordinate 1 (fixed point of squaring):
        # the return set is everything and no contradiction arises
        doc = run_split_experiment(p=5, N=60, fast_start_exp=0)
        assert doc["verdict"] == "compatible"
        assert doc["fastCoordinatePreperiodic"]


class TestDeterminism:
    def test_power_tower_bytes(self):
        a = run_example_power_tower(p=5, N=60, seed=3)
        b = run_example_power_tower(p=5, N=60, seed=3)
        assert render_report(a) == render_report(b)

    def test_seed_changes_moduli(self):
        a = run_example_power_tower(p=5, N=60, seed=0)
        b = run_example_power_tower(p=5, N=60, seed=1)
        assert (
            a["returnSet"]["moduli"] != b["returnSet"]["moduli"]
        )
        assert a["members"] == b["members"]  # verdicts agree regardless

    def test_split_bytes(self):
        a = run_split_experiment(p=5, N=40, seed=2)
        b = run_split_experiment(p=5, N=40, seed=2)
        assert render_report(a) == render_report(b)
