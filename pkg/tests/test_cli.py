"""End-to-end CLI behavior via click's test runner."""

import json

import pytest
from click.testing import CliRunner

from pdml.cli import main
from pdml import setalg


@pytest.fixture
def runner():
    return CliRunner()


class TestSpectralCommands:
    def test_degrees(self, runner):
        r = runner.invoke(main, ["spectral", "degrees", "--matrix", "[[2,0],[0,3]]"])
        assert r.exit_code == 0
        assert "lambda = [1, 3, 6]" in r.output

    def test_lyapunov(self, runner):
        r = runner.invoke(main, ["spectral", "lyapunov", "--matrix", "[[2,0],[0,3]]"])
        assert r.exit_code == 0
        assert "mu = [3, 2]" in r.output

    def test_report(self, runner):
        r = runner.invoke(main, ["spectral", "report", "--matrix", "[[2,0],[0,3]]"])
        assert r.exit_code == 0
        assert "cohomologicallyHyperbolic: True" in r.output

    def test_root_test_agreement(self, runner):
        r = runner.invoke(main, ["spectral", "root-test", "--poly", "-2,0,1"])
        assert r.exit_code == 0
        assert "agreement: True" in r.output

    def test_root_test_no_positive_root_is_usage_error(self, runner):
        r = runner.invoke(main, ["spectral", "root-test", "--poly", "1,0,1"])
        assert r.exit_code == 2


class TestSystemPipeline:
    def test_emit_orbit_return_set(self, runner, tmp_path):
        sys_path = str(tmp_path / "sys.json")
        r = runner.invoke(main, ["system", "powers", "--p", "5", "--out", sys_path])
        assert r.exit_code == 0
        r = runner.invoke(main, ["orbit", "--system", sys_path, "--n", "3"])
        assert r.exit_code == 0
        assert "n=3" in r.output
        r = runner.invoke(main, ["return-set", "--system", sys_path, "--n", "30"])
        assert r.exit_code == 0
        assert "members: 1 5 25" in r.output

    def test_twist_round_trip(self, runner, tmp_path):
        sys_path = str(tmp_path / "sys.json")
        tw_path = str(tmp_path / "tw.json")
        runner.invoke(main, ["system", "powers", "--out", sys_path])
        r = runner.invoke(
            main, ["twist", "--system", sys_path, "--q", "5", "--out", tw_path]
        )
        assert r.exit_code == 0
        r = runner.invoke(main, ["return-set", "--system", tw_path, "--n", "30"])
        assert r.exit_code == 0
        assert "members: 1 5 25" in r.output

    def test_report_out_is_deterministic(self, runner, tmp_path):
        sys_path = str(tmp_path / "sys.json")
        runner.invoke(main, ["system", "powers", "--out", sys_path])
        outs = []
        for name in ("a.json", "b.json"):
            out = str(tmp_path / name)
            r = runner.invoke(
                main,
                ["return-set", "--system", sys_path, "--n", "20",
                 "--seed", "4", "--out", out],
            )
            assert r.exit_code == 0
            outs.append(open(out, "rb").read())
        assert outs[0] == outs[1]


class TestSetCommands:
    @pytest.fixture
    def desc_path(self, tmp_path):
        s = setalg.ExpSumSet.build(5, 0, [[1]])
        d = setalg.SetDescriptor((), (s,), declared_type=1)
        path = str(tmp_path / "d.json")
        json.dump(d.to_json_dict(), open(path, "w"))
        return path

    def test_member(self, runner, desc_path):
        r = runner.invoke(main, ["set", "member", "--desc", desc_path, "--value", "125"])
        assert r.exit_code == 0 and "Member (Certain)" in r.output
        r = runner.invoke(main, ["set", "member", "--desc", desc_path, "--value", "7"])
        assert "NotMember" in r.output

    def test_window(self, runner, desc_path):
        r = runner.invoke(main, ["set", "window", "--desc", desc_path, "--n", "700"])
        assert r.exit_code == 0
        assert "members: 1 5 25 125 625" in r.output

    def test_fit(self, runner):
        r = runner.invoke(
            main,
            ["set", "fit", "--values", "1,5,25,125,625", "--p", "5", "--n", "700"],
        )
        assert r.exit_code == 0
        assert '"q": 5' in r.output

    def test_admissible(self, runner, desc_path):
        r = runner.invoke(main, ["set", "admissible", "--desc", desc_path])
        assert r.exit_code == 0 and "admissible" in r.output

    def test_union_intersect(self, runner, desc_path, tmp_path):
        ap = setalg.SetDescriptor(
            (setalg.ArithProgression(4, 1),), (), declared_type=0
        )
        ap_path = str(tmp_path / "ap.json")
        json.dump(ap.to_json_dict(), open(ap_path, "w"))
        r = runner.invoke(
            main, ["set", "union", "--desc", desc_path, "--desc2", ap_path]
        )
        assert r.exit_code == 0 and '"expSums"' in r.output
        r = runner.invoke(
            main,
            ["set", "intersect", "--desc", desc_path, "--desc2", ap_path,
             "--n", "200"],
        )
        assert r.exit_code == 0 and "members: 1 5 25 125" in r.output


class TestGrowthCommands:
    def test_diff(self, runner):
        r = runner.invoke(
            main, ["growth", "diff", "--values", "0,2,8,24,64", "--a", "2"]
        )
        assert r.exit_code == 0 and r.output.strip() == "0 2 4 8 16"

    def test_classify(self, runner):
        vals = ",".join(str((3 * n * n + 5) * 2**n) for n in range(40))
        r = runner.invoke(
            main, ["growth", "classify", "--values", vals, "--a", "2", "--m", "4"]
        )
        assert r.exit_code == 0
        assert "case i" in r.output and "order: 2" in r.output

    def test_ksm_exit_codes(self, runner):
        slow = ",".join(str(n * n + 1) for n in range(40))
        fast = ",".join(str(2**n) for n in range(40))
        ok = runner.invoke(
            main, ["growth", "ksm", "--values", slow, "--rate", "1", "--eps", "1/2"]
        )
        bad = runner.invoke(
            main, ["growth", "ksm", "--values", fast, "--rate", "1", "--eps", "1/2"]
        )
        assert ok.exit_code == 0 and bad.exit_code == 1


class TestVerifyCommands:
    def test_powers_small(self, runner):
        r = runner.invoke(main, ["verify", "powers", "--n", "130"])
        assert r.exit_code == 0
        assert "verdict: pass" in r.output

    def test_obstruction_small(self, runner):
        r = runner.invoke(main, ["verify", "obstruction", "--p", "3"])
        assert r.exit_code == 0
        assert "verdict: pass" in r.output

    def test_split_small(self, runner):
        r = runner.invoke(main, ["verify", "split", "--n", "60"])
        assert r.exit_code == 0
        assert "contradiction-exhibited" in r.output

    def test_verify_out_writes_report(self, runner, tmp_path):
        out = str(tmp_path / "r.json")
        r = runner.invoke(
            main, ["verify", "powers", "--n", "130", "--out", out]
        )
        assert r.exit_code == 0
        doc = json.load(open(out))
        assert doc["verdict"] == "pass"
        assert "runtimeSeconds" not in doc


class TestHeights:
    def test_height(self, runner):
        r = runner.invoke(
            main, ["height", "--p", "5", "--value", "(t^2+1)/t"]
        )
        assert r.exit_code == 0 and "height: 2" in r.output

    def test_northcott(self, runner):
        r = runner.invoke(main, ["northcott", "--p", "2", "--bound", "1"])
        assert r.exit_code == 0 and "count: 8" in r.output

    def test_usage_error_exit_code(self, runner):
        r = runner.invoke(main, ["northcott", "--p", "2"])
        assert r.exit_code == 2


class TestConjugateCommand:
    def test_valid_and_invalid(self, runner, tmp_path):
        spec = {
            "matrix": [[0, -1], [1, 3]],
            "muPoly": [1, -3, 1],
            "muIndex": 1,
            "conjugateIndex": 0,
            "vector": [["-1", "0"], ["0", "1"]],
            "m": 1,
            "ell": [1, 0],
        }
        path = str(tmp_path / "c.json")
        json.dump(spec, open(path, "w"))
        r = runner.invoke(main, ["spectral", "conjugate", "--spec", path])
        assert r.exit_code == 0 and "verified" in r.output
        spec["ell"] = [0, 0]
        json.dump(spec, open(path, "w"))
        r = runner.invoke(main, ["spectral", "conjugate", "--spec", path])
        assert r.exit_code == 1
