"""Tests for the engage-rank command line: output and exit codes."""

import json
from unittest.mock import patch

import pandas as pd
import pytest

from src.cli.main import main, read_ranking_file
from src.core.error_handling import EngageRankError

BE_RANKING = "BL\nC-Mgt\nC-Com\nE-Int\nE-Sat\nAge\nGender\n"


def _ahp_lines(text):
    values = {}
    for line in text.strip().splitlines()[1:]:
        key, *rest = line.split(",")
        values[key] = rest
    return values


@pytest.fixture
def ranking_file(tmp_path):
    path = tmp_path / "ranking.txt"
    path.write_text(BE_RANKING)
    return str(path)


class TestAhpCommand:
    def test_be_style_weights(self, ranking_file, capsys):
        assert main(["ahp", ranking_file]) == 0
        values = _ahp_lines(capsys.readouterr().out)
        assert float(values["BL"][0]) == pytest.approx(5.495, abs=1e-3)
        assert float(values["C-Mgt"][0]) == pytest.approx(0.886, abs=1e-3)
        assert float(values["Gender"][0]) == pytest.approx(0.333, abs=1e-3)
        assert float(values["cr"][0]) < 0.1
        assert values["consistent"] == ["true"]

    def test_preset_from_target(self, tmp_path, capsys):
        path = tmp_path / "ranking.txt"
        path.write_text("BL\nB-Act\nB-Int\nGender\nB-Gro\nAge\nE-Int\nE-Sat\n")
        assert main(["--target", "ce", "ahp", str(path)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert [line.split(",")[0] for line in lines[7:9]] == ["Age", "Gender"]

    def test_pairwise_written(self, ranking_file, tmp_path, capsys):
        assert main(["ahp", ranking_file, "--out-dir", str(tmp_path / "out")]) == 0
        frame = pd.read_csv(tmp_path / "out" / "pairwise.csv", index_col="feature", dtype=str)
        assert frame.loc["BL", "Gender"] == "9"

    def test_importance_csv_with_composites(self, tmp_path, capsys):
        path = tmp_path / "importance_be.csv"
        path.write_text("feature,mdi,permutation\nBL,0.5,0.4\nCE,0.2,0.1\nC-Mgt,0.1,0.1\nGender,0.05,0.0\n")
        assert main(["ahp", str(path)]) == 0
        assert "CE," not in capsys.readouterr().out

    def test_inconsistent_preset_exits_3(self, tmp_path, capsys, config_path):
        path = tmp_path / "scores.csv"
        path.write_text("feature,mdi\na,0.6\nb,0.3\nc,0.1\n")
        config = config_path(custom_presets={"steep": {"thresholds": [0.5, 0.2], "scales": {"0-1": 9, "0-2": 9, "1-2": 9}}})
        assert main(["--config", config, "ahp", str(path), "--preset", "steep"]) == 3
        captured = capsys.readouterr()
        assert "consistent,false" in captured.out
        assert "CR = " in captured.err

    def test_unknown_preset_exits_1(self, ranking_file, capsys):
        assert main(["ahp", ranking_file, "--preset", "nope"]) == 1

    def test_missing_ranking_file_exits_2(self, tmp_path, capsys):
        assert main(["ahp", str(tmp_path / "absent.txt")]) == 2


class TestUsageErrors:
    @pytest.mark.parametrize("argv", [
        [],
        ["bogus"],
        ["stats", "--target", "xx"],
        ["--seed", "abc", "stats"],
    ])
    def test_bad_arguments_exit_1(self, argv, capsys):
        assert main(argv) == 1

    def test_train_needs_target(self, config_path, capsys):
        assert main(["--config", config_path(), "train", "--out-dir", "unused"]) == 1
        assert "needs --target" in capsys.readouterr().err

    def test_run_needs_out_dir(self, config_path, capsys):
        assert main(["--config", config_path(), "run"]) == 1

    def test_missing_config_exits_1(self, tmp_path, capsys):
        assert main(["--config", str(tmp_path / "absent.json"), "stats"]) == 1


class TestDataErrors:
    @pytest.mark.parametrize("with_out_dir", [False, True])
    def test_missing_column_exits_2(self, tmp_path, capsys, with_out_dir):
        path = tmp_path / "survey.csv"
        path.write_text("gender,age_band,bl,b_act,b_int,b_gro,c_com,e_int,e_sat\n1,1,1,5,5,5,4,6,6\n")
        argv = ["--input", str(path), "train", "--target", "ce"]
        if with_out_dir:
            argv += ["--out-dir", str(tmp_path / "out")]
        assert main(argv) == 2
        assert "c_mgt" in capsys.readouterr().err
        assert not (tmp_path / "out").exists()

    def test_missing_input_exits_2(self, tmp_path, capsys):
        assert main(["--input", str(tmp_path / "absent.csv"), "stats"]) == 2

    def test_error_detail_dumped_for_debugging(self, tmp_path):
        with patch("src.cli.main.logger") as mock_logger:
            assert main(["--input", str(tmp_path / "absent.csv"), "stats"]) == 2
        title, detail = mock_logger.debug_data.call_args.args
        assert title == "Error detail"
        assert detail["error"]["code"] == "stage_failed"
        assert detail["error"]["exit_code"] == 2
        assert "absent.csv" in detail["error"]["message"]
        assert mock_logger.debug_data.call_args.kwargs["command"] == "stats"


class TestCommands:
    def test_synth_to_stdout(self, capsys):
        assert main(["synth", "--rows", "5", "--seed", "1"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 6
        assert lines[0].startswith("gender,age_band,bl")

    def test_synth_then_stats(self, tmp_path, capsys):
        csv_path = tmp_path / "survey.csv"
        assert main(["synth", "--rows", "40", "--output", str(csv_path)]) == 0
        assert main(["--input", str(csv_path), "stats", "--out-dir", str(tmp_path / "out")]) == 0
        out = capsys.readouterr().out
        assert out.startswith("column,mean,std,skewness,kurtosis")
        assert (tmp_path / "out" / "stats.csv").exists()

    def test_train_writes_curve_and_model(self, config_path, tmp_path, capsys):
        out_dir = tmp_path / "out"
        assert main(["--config", config_path(), "train", "--target", "be", "--out-dir", str(out_dir)]) == 0
        assert capsys.readouterr().out.startswith("stage,train_mse,test_mse")
        assert len(pd.read_csv(out_dir / "deviance_be.csv")) == 30
        model = json.loads((out_dir / "model_be.json").read_text())
        assert len(model["trees"]) == 30

    def test_train_without_out_dir_prints_curve(self, config_path, tmp_path, monkeypatch, capsys):
        monkeypatch.chdir(tmp_path)
        assert main(["--config", config_path(), "train", "--target", "ce"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "stage,train_mse,test_mse"
        assert len(lines) == 31
        assert lines[-1].startswith("30,")
        assert not list(tmp_path.glob("deviance_*.csv"))

    def test_importance_prints_ranking(self, config_path, capsys):
        assert main(["--config", config_path(), "importance", "--target", "EE"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("feature,mdi,permutation")
        assert lines[1].startswith("BL,")

    def test_run_writes_report(self, config_path, tmp_path, capsys):
        out_dir = tmp_path / "out"
        assert main(["--config", config_path(), "run", "--out-dir", str(out_dir)]) == 0
        assert (out_dir / "report.json").exists()
        assert capsys.readouterr().out.startswith("target,weight,BL")

    def test_seed_flag_overrides_config(self, config_path, tmp_path):
        assert main(["--config", config_path(), "--seed", "9", "run", "--out-dir", str(tmp_path / "a")]) == 0
        report = json.loads((tmp_path / "a" / "report.json").read_text())
        assert report["provenance"]["seed"] == 9


class TestReadRankingFile:
    def test_plain_lines(self, ranking_file):
        assert read_ranking_file(ranking_file).features[0] == "BL"

    def test_csv_with_scores(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("feature,mdi\nBL,0.7\nAge,0.3\n")
        ranking = read_ranking_file(str(path))
        assert ranking["Age"].mdi == 0.3

    def test_non_numeric_scores(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("feature,mdi\nBL,high\n")
        with pytest.raises(EngageRankError):
            read_ranking_file(str(path))

    def test_empty_file(self, tmp_path):
        path = tmp_path / "r.txt"
        path.write_text("\n\n")
        with pytest.raises(EngageRankError):
            read_ranking_file(str(path))
