"""Command line entry point: exit codes and error reporting."""

import json
from pathlib import Path

import pytest

from src.main import build_parser, main


def write_config(tmp_path: Path, **extra: str) -> Path:
    values = {
        "gen.seed": "4",
        "gen.train": "8",
        "gen.val": "4",
        "gen.test_ordinary": "4",
        "gen.test_2hop_ta": "6",
        "gen.test_2hop_qh": "4",
        "run.data_dir": str(tmp_path / "data"),
        "run.model_dir": str(tmp_path / "models"),
        "run.report_dir": str(tmp_path / "reports"),
        **extra,
    }
    path = tmp_path / "run.cfg"
    path.write_text("".join(f"{k}={v}\n" for k, v in values.items()))
    return path


def test_gen_verify_eval(tmp_path, capsys):
    config = str(write_config(tmp_path))
    assert main(["gen", "--config", config]) == 0
    assert "train=8" in capsys.readouterr().out
    assert main(["verify", "--config", config]) == 0
    assert "verified 26 records" in capsys.readouterr().out
    assert main(["eval", "--config", config, "--split", "val", "--mode", "oracle"]) == 0
    assert "overall" in capsys.readouterr().out
    report = json.loads((tmp_path / "reports" / "eval_val_oracle.json").read_text())
    assert report["overall"]["accuracy"] == 1.0


def test_bad_config_value(tmp_path, capsys):
    config = str(write_config(tmp_path, **{"train.optimizer": "rmsprop"}))
    assert main(["gen", "--config", config]) == 2
    assert capsys.readouterr().err.startswith("error[invalid-value]")


def test_unknown_config_key(tmp_path, capsys):
    config = str(write_config(tmp_path, **{"gen.colour": "red"}))
    assert main(["gen", "--config", config]) == 2
    assert "error[unknown-key]" in capsys.readouterr().err


def test_missing_config(tmp_path, capsys):
    assert main(["gen", "--config", str(tmp_path / "absent.cfg")]) == 2
    assert "error[missing-config]" in capsys.readouterr().err


def test_missing_dataset(tmp_path, capsys):
    config = str(write_config(tmp_path))
    assert main(["train-stage1", "--config", config]) == 3
    assert "error[missing-artifact]" in capsys.readouterr().err


def test_missing_models(tmp_path, capsys):
    config = str(write_config(tmp_path))
    main(["gen", "--config", config])
    assert main(["eval", "--config", config, "--split", "val"]) == 3


def test_parser_rejects_unknown_split():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["eval", "--split", "holdout"])


def test_sweep_values_parse():
    args = build_parser().parse_args(
        ["sweep", "--axis", "vector_length", "--values", "25", "50"]
    )
    assert args.values == [25, 50]
