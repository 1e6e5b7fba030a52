import json

import pytest
from click.testing import CliRunner

from teamtl.cli import main
from teamtl.files import dumps_kripke, dumps_team
from teamtl.fixtures import (
    WORKED_QBF_TEXT,
    af_multiplicity_structure,
    ef_counterexample_structure,
    union_closure_team,
    write_fixture_files,
)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def workspace(tmp_path):
    (tmp_path / "team.json").write_text(dumps_team(union_closure_team()))
    (tmp_path / "ef.json").write_text(dumps_kripke(ef_counterexample_structure()))
    (tmp_path / "af.json").write_text(dumps_kripke(af_multiplicity_structure()))
    (tmp_path / "worked.qbf").write_text(WORKED_QBF_TEXT)
    return tmp_path


class TestCheckPath:
    def test_unsat_exit_1(self, runner, workspace):
        result = runner.invoke(main, ["check-path", str(workspace / "team.json"), "F p"])
        assert result.exit_code == 1
        assert "UNSAT" in result.output

    def test_sat_exit_0(self, runner, workspace):
        result = runner.invoke(main, ["check-path", str(workspace / "team.json"), "F TOP"])
        assert result.exit_code == 0
        assert "SAT" in result.output

    def test_parse_error_exit_2(self, runner, workspace):
        result = runner.invoke(main, ["check-path", str(workspace / "team.json"), "F ("])
        assert result.exit_code == 2

    def test_malformed_team_exit_2(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{broken")
        result = runner.invoke(main, ["check-path", str(bad), "p"])
        assert result.exit_code == 2

    def test_oracle_cross_check(self, runner, workspace):
        result = runner.invoke(
            main, ["check-path", str(workspace / "team.json"), "F p", "--oracle"]
        )
        assert result.exit_code == 1
        assert "oracle: UNSAT" in result.output

    def test_explain_prints_witness_tree(self, runner, workspace):
        result = runner.invoke(
            main,
            ["check-path", str(workspace / "team.json"), "p | X p", "--explain"],
        )
        assert result.exit_code == 0
        assert "split:" in result.output

    def test_resource_cap_exit_3(self, runner, tmp_path):
        doc = {
            "traces": [
                {"prefix": [[f"p{i}"]], "loop": [[]]} for i in range(3)
            ]
        }
        team_file = tmp_path / "t.json"
        team_file.write_text(json.dumps(doc))
        result = runner.invoke(
            main,
            ["check-path", str(team_file), "~p0 | ~p1", "--max-team", "2"],
        )
        assert result.exit_code == 3


class TestCheckModel:
    def test_ctl_fixture_verdicts(self, runner, workspace):
        ef = str(workspace / "ef.json")
        r = runner.invoke(main, ["check-model", ef, "EF p", "--mode", "ctl",
                                 "--team", "x1,y1"])
        assert r.exit_code == 1
        r = runner.invoke(main, ["check-model", ef, "EF p", "--mode", "ctl",
                                 "--team", "x1"])
        assert r.exit_code == 0
        af = str(workspace / "af.json")
        r = runner.invoke(main, ["check-model", af, "AF p", "--mode", "ctl",
                                 "--team", "w,w"])
        assert r.exit_code == 1

    def test_ctl_requires_team(self, runner, workspace):
        r = runner.invoke(main, ["check-model", str(workspace / "ef.json"),
                                 "EF p", "--mode", "ctl"])
        assert r.exit_code == 2

    def test_splitfree_mode(self, runner, tmp_path):
        k = tmp_path / "k.json"
        k.write_text(json.dumps({
            "worlds": ["a"], "edges": [["a", "a"]],
            "labels": {"a": ["p"]}, "initial": "a",
        }))
        assert runner.invoke(main, ["check-model", str(k), "G p"]).exit_code == 0
        r = runner.invoke(main, ["check-model", str(k), "p | p"])
        assert r.exit_code == 2  # splitjunction rejected in splitfree mode

    def test_enumerate_mode_rejects_branching_cycles(self, runner, tmp_path):
        k = tmp_path / "k.json"
        k.write_text(json.dumps({
            "worlds": ["a", "b"],
            "edges": [["a", "a"], ["a", "b"], ["b", "b"]],
            "labels": {}, "initial": "a",
        }))
        r = runner.invoke(main, ["check-model", str(k), "F p",
                                 "--mode", "ltl-enumerate"])
        assert r.exit_code == 2
        assert "not finitely enumerable" in r.output


class TestGen:
    def test_qbf_tpc_check(self, runner, workspace, tmp_path):
        out = tmp_path / "out1"
        r = runner.invoke(main, ["gen", "qbf-tpc", str(workspace / "worked.qbf"),
                                 "--out-dir", str(out), "--check"])
        assert r.exit_code == 0
        assert "REDUCTION OK (valid)" in r.output
        assert (out / "team.json").exists() and (out / "formula.txt").exists()

    def test_qbf_ctl_check(self, runner, workspace, tmp_path):
        out = tmp_path / "out2"
        r = runner.invoke(main, ["gen", "qbf-ctl", str(workspace / "worked.qbf"),
                                 "--out-dir", str(out), "--check"])
        assert r.exit_code == 0
        assert "REDUCTION OK (valid)" in r.output
        assert (out / "kripke.json").exists()

    def test_invalid_qbf_reports_invalid(self, runner, tmp_path):
        f = tmp_path / "false.qbf"
        f.write_text("forall x\nx x x\n")
        r = runner.invoke(main, ["gen", "qbf-tpc", str(f),
                                 "--out-dir", str(tmp_path / "o"), "--check"])
        assert r.exit_code == 0
        assert "REDUCTION OK (invalid)" in r.output

    def test_width_2_padding_noted(self, runner, tmp_path):
        f = tmp_path / "w2.qbf"
        f.write_text("exists x\nx -x\n")
        r = runner.invoke(main, ["gen", "qbf-tpc", str(f),
                                 "--out-dir", str(tmp_path / "o")])
        assert r.exit_code == 0
        assert "padded" in r.output

    def test_malformed_qbf_exit_2(self, runner, tmp_path):
        f = tmp_path / "bad.qbf"
        f.write_text("exists x\nx x x\nforall y\n")
        r = runner.invoke(main, ["gen", "qbf-tpc", str(f),
                                 "--out-dir", str(tmp_path / "o")])
        assert r.exit_code == 2

    def test_plsim(self, runner, tmp_path):
        r = runner.invoke(main, ["gen", "plsim", "~p",
                                 "--out-dir", str(tmp_path / "o"), "--check"])
        assert r.exit_code == 0
        assert "REDUCTION OK (satisfiable)" in r.output


class TestSelftest:
    def test_clean_run(self, runner, tmp_path):
        fdir = tmp_path / "fixtures"
        write_fixture_files(fdir)
        r = runner.invoke(main, ["selftest", "--count", "5",
                                 "--fixtures-dir", str(fdir)])
        assert r.exit_code == 0
        assert "0 mismatches" in r.output

    def test_corrupted_fixture_exit_4(self, runner, tmp_path):
        fdir = tmp_path / "fixtures"
        write_fixture_files(fdir)
        (fdir / "worked_qbf.qbf").write_text("exists x\nx x x\n")
        r = runner.invoke(main, ["selftest", "--count", "2",
                                 "--fixtures-dir", str(fdir)])
        assert r.exit_code == 4
