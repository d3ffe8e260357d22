"""End-to-end tests for the htmix command line, run in-process."""

import json

import pytest

from htmix.cli import main
from htmix.streams import DEFAULT_SEED


def run(*argv):
    return main(list(argv))


class TestSample:
    def test_degenerate_stable_writes_ones(self, tmp_path):
        out = tmp_path / "s.csv"
        code = run("sample", "--dist", "stable", "--alpha", "1", "--theta",
                   "one-sided", "--n", "3", "--seed", "42", "--out", str(out))
        assert code == 0
        assert out.read_text() == "index,value\n0,1\n1,1\n2,1\n"

    def test_sidecar_records_resolved_call(self, tmp_path):
        out = tmp_path / "g.csv"
        run("sample", "--dist", "gen-linnik", "--alpha", "1.5", "--nu", "2",
            "--n", "10", "--seed", "5", "--out", str(out))
        meta = json.loads((out.with_suffix(".csv.json")).read_text())
        assert meta == {
            "command": "sample",
            "dist": "gen_linnik",
            "params": {"alpha": 1.5, "nu": 2.0},
            "method": "stable_gamma",
            "n": 10,
            "seed": 5,
            "substream": 0,
        }

    def test_rerun_is_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["sample", "--dist", "mittag-leffler", "--delta", "0.7",
                "--n", "200", "--seed", "11"]
        run(*argv, "--out", str(a))
        run(*argv, "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_stdout_when_no_out(self, capsys):
        assert run("sample", "--dist", "exponential", "--n", "2",
                   "--seed", "1") == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "index,value"
        assert len(lines) == 3

    def test_seed_env_fallback(self, tmp_path, monkeypatch):
        out = tmp_path / "e.csv"
        monkeypatch.setenv("HTM_SEED", "99")
        run("sample", "--dist", "normal", "--n", "5", "--out", str(out))
        meta = json.loads((tmp_path / "e.csv.json").read_text())
        assert meta["seed"] == 99

    def test_default_seed_without_env(self, tmp_path, monkeypatch):
        out = tmp_path / "d.csv"
        monkeypatch.delenv("HTM_SEED", raising=False)
        run("sample", "--dist", "normal", "--n", "5", "--out", str(out))
        meta = json.loads((tmp_path / "d.csv.json").read_text())
        assert meta["seed"] == DEFAULT_SEED

    def test_bad_env_seed_is_domain_error(self, monkeypatch, capsys):
        monkeypatch.setenv("HTM_SEED", "not-a-number")
        assert run("sample", "--dist", "normal", "--n", "5") == 2

    def test_out_of_range_parameter(self, capsys):
        assert run("sample", "--dist", "stable", "--alpha", "2.5",
                   "--theta", "symmetric", "--n", "10") == 2
        assert "htmix:" in capsys.readouterr().err

    def test_extra_parameter_rejected(self, capsys):
        assert run("sample", "--dist", "normal", "--alpha", "1.5",
                   "--n", "10") == 2

    def test_missing_parameter_named_in_message(self, capsys):
        assert run("sample", "--dist", "neg-binom", "--nu", "1.5",
                   "--n", "10") == 2
        assert "needs: p" in capsys.readouterr().err

    def test_shape_parameter_defaults_to_one(self, tmp_path):
        out = tmp_path / "one.csv"
        run("sample", "--dist", "gen-linnik", "--alpha", "1.5", "--n", "5",
            "--seed", "3", "--out", str(out))
        meta = json.loads((tmp_path / "one.csv.json").read_text())
        assert meta["params"] == {"alpha": 1.5}

    def test_unwritable_path_is_io_error(self, tmp_path, capsys):
        target = tmp_path / "no" / "such" / "dir" / "x.csv"
        assert run("sample", "--dist", "normal", "--n", "5",
                   "--out", str(target)) == 3

    def test_method_override(self, tmp_path):
        out = tmp_path / "m.csv"
        run("sample", "--dist", "linnik", "--alpha", "1.2", "--method",
            "laplace-ratio", "--n", "10", "--seed", "3", "--out", str(out))
        meta = json.loads((tmp_path / "m.csv.json").read_text())
        assert meta["method"] == "laplace_ratio"


class TestEval:
    def test_single_point_grid(self, capsys):
        assert run("eval", "--fn", "gamma", "--grid", "1:1:1") == 0
        assert capsys.readouterr().out == "x,value\n1,1\n"

    def test_negative_grid_values(self, capsys):
        assert run("eval", "--fn", "genlinnik-cf", "--alpha", "1.5",
                   "--nu", "2", "--grid", "-0.2:0.2:0.2") == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[1].startswith("-0.2,")
        assert len(lines) == 4

    def test_rerun_is_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["eval", "--fn", "ml-density", "--delta", "0.6",
                "--grid", "0.1:2:0.1"]
        run(*argv, "--out", str(a))
        run(*argv, "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_missing_flag_is_named(self, capsys):
        assert run("eval", "--fn", "ml-density", "--grid", "0:1:0.5") == 2
        assert "--delta" in capsys.readouterr().err

    def test_lambda_flag_spelling(self, capsys):
        assert run("eval", "--fn", "gg-density", "--r", "0.5", "--alpha",
                   "1.0", "--grid", "0.5:1:0.5") == 2
        assert "--lambda" in capsys.readouterr().err

    def test_unsupported_inversion_regime(self, capsys):
        assert run("eval", "--fn", "genlinnik-pdf", "--alpha", "0.5",
                   "--nu", "1", "--grid", "0:1:0.5") == 4
        assert "unsupported regime" in capsys.readouterr().err

    def test_bad_grid_shapes(self, capsys):
        assert run("eval", "--fn", "gamma", "--grid", "1:2") == 2
        assert run("eval", "--fn", "gamma", "--grid", "2:1:0.5") == 2
        assert run("eval", "--fn", "gamma", "--grid", "1:2:0") == 2
        assert run("eval", "--fn", "gamma", "--grid", "a:b:c") == 2


class TestVerify:
    def test_single_identity_json(self, capsys):
        code = run("verify", "--identity", "I04", "--gamma", "1", "--b", "1",
                   "--n", "20000", "--seed", "7")
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["label"] == "I04"
        assert report["verdict"] is True
        assert report["params"] == {"g": 1.0, "b": 1.0}

    def test_single_identity_csv(self, capsys):
        code = run("verify", "--identity", "I08", "--delta", "0.6",
                   "--n", "2000", "--seed", "7", "--format", "csv")
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "metric,value,threshold,pass"
        assert [l.split(",")[0] for l in lines[1:]] == [
            "ks", "lst_lhs", "lst_rhs"
        ]

    def test_unknown_identity(self, capsys):
        assert run("verify", "--identity", "I99", "--n", "100") == 2

    def test_out_of_domain_cites_constraint(self, capsys):
        code = run("verify", "--identity", "I22", "--alpha", "1.5",
                   "--nu", "1.5", "--n", "100")
        assert code == 2
        assert "v in (0,1]" in capsys.readouterr().err.replace(", ", ",")

    def test_wrong_flag_for_identity(self, capsys):
        assert run("verify", "--identity", "I03", "--delta", "0.5",
                   "--n", "100") == 2
        err = capsys.readouterr().err
        assert "--delta" in err

    def test_missing_flag_for_identity(self, capsys):
        assert run("verify", "--identity", "I20", "--alpha", "1.5",
                   "--n", "100") == 2
        assert "--nu" in capsys.readouterr().err

    def test_rerun_is_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        argv = ["verify", "--identity", "I15", "--alpha", "1.0",
                "--n", "5000", "--seed", "7"]
        run(*argv, "--out", str(a))
        run(*argv, "--out", str(b))
        assert a.read_bytes() == b.read_bytes()


class TestLimit:
    def test_lemma14_csv(self, capsys):
        code = run("limit", "--theorem", "lemma14", "--nu", "1",
                   "--p-grid", "0.01,0.001", "--reps", "50000", "--seed", "3")
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "n,ks,threshold,pass"
        assert len(lines) == 3
        assert lines[1].startswith("0.01,")

    def test_json_rerun_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        argv = ["limit", "--theorem", "thm7", "--alpha", "2", "--nu", "1",
                "--n-grid", "50,150", "--reps", "2000", "--seed", "5",
                "--threshold", "0.2", "--format", "json"]
        run(*argv, "--out", str(a))
        run(*argv, "--out", str(b))
        assert a.read_bytes() == b.read_bytes()
        payload = json.loads(a.read_text())
        assert payload["theorem"] == "thm7"
        assert [row["n"] for row in payload["rows"]] == [50, 150]

    def test_control_adds_column(self, capsys):
        code = run("limit", "--theorem", "thm8", "--alpha", "1.5", "--nu", "2",
                   "--n-grid", "100", "--reps", "2000", "--seed", "5",
                   "--control", "fixed-index")
        assert code == 1  # control run does not reach the normal law this fast
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "n,ks,threshold,pass,ks_normal"

    def test_thm6_rejects_control(self, capsys):
        assert run("limit", "--theorem", "thm6", "--alpha", "2", "--nu", "1",
                   "--n-grid", "100", "--reps", "1000",
                   "--control", "fixed-index") == 2

    def test_missing_grid(self, capsys):
        assert run("limit", "--theorem", "thm7", "--alpha", "2",
                   "--nu", "1", "--reps", "1000") == 2
        assert run("limit", "--theorem", "lemma14", "--nu", "1",
                   "--reps", "1000") == 2

    def test_missing_alpha(self, capsys):
        assert run("limit", "--theorem", "thm8", "--nu", "1",
                   "--n-grid", "100", "--reps", "1000") == 2

    def test_bad_grid_list(self, capsys):
        assert run("limit", "--theorem", "thm7", "--alpha", "2", "--nu", "1",
                   "--n-grid", "100,abc", "--reps", "1000") == 2

    def test_failing_run_exits_one(self, capsys):
        code = run("limit", "--theorem", "thm7", "--alpha", "1.5", "--nu", "2",
                   "--n-grid", "20", "--reps", "1000", "--seed", "3",
                   "--threshold", "0.001")
        assert code == 1


class TestList:
    def test_identities_section(self, capsys):
        assert run("list", "--identities") == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "identities:"
        assert len(lines) == 27
        assert lines[1].split()[0] == "I01"
        assert "=d=" in lines[1]

    def test_dists_section(self, capsys):
        assert run("list", "--dists") == 0
        out = capsys.readouterr().out
        assert "gen-mittag-leffler: delta in (0, 1], nu > 0" in out
        assert "[methods:" in out
        assert "stable-gamma" in out

    def test_theorems_section(self, capsys):
        assert run("list", "--theorems") == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines == ["theorems:", "  lemma14", "  thm6", "  thm7", "  thm8"]

    def test_default_prints_everything(self, capsys):
        assert run("list") == 0
        out = capsys.readouterr().out
        assert "distributions:" in out
        assert "identities:" in out
        assert "theorems:" in out


class TestParsing:
    def test_unknown_subcommand_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run("frobnicate")
        assert exc.value.code == 2

    def test_unknown_eval_fn_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run("eval", "--fn", "zeta", "--grid", "1:2:1")
        assert exc.value.code == 2

    def test_leading_dash_grid_parses(self, capsys):
        # A bare "-5:5:1" after --grid must not be read as an option.
        assert run("eval", "--fn", "genlinnik-cf", "--alpha", "2", "--nu", "1",
                   "--grid", "-5:5:1") == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 12
