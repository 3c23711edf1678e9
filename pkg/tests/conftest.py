"""Shared fixtures: a small hand-built scene and tiny run configurations."""

from pathlib import Path

import pytest

from src.core.config import HarnessConfig, parse_config
from src.scene import canonicalize, make_object


@pytest.fixture
def table_scene():
    """Four objects: a red metal cube carrying a small blue sphere, plus two
    rubber cylinders to its left and right."""
    return canonicalize(
        [
            make_object("cube", "big", "metal", "red", (0.0, 0.0, 0.0)),
            make_object("sphere", "small", "rubber", "blue", (0.0, 0.0, 1.0)),
            make_object("cylinder", "small", "rubber", "green", (-2.0, 1.0, 0.0)),
            make_object("cylinder", "big", "rubber", "green", (2.0, -1.0, 0.0)),
        ]
    )


def tiny_config(tmp_path: Path, **overrides: str) -> HarnessConfig:
    values = {
        "gen.seed": "11",
        "gen.train": "24",
        "gen.val": "8",
        "gen.test_ordinary": "8",
        "gen.test_2hop_ta": "6",
        "gen.test_2hop_qh": "6",
        "train.epochs": "1",
        "train.stage2_epochs": "1",
        "train.batch_size": "8",
        "train.action_dim": "6",
        "train.hidden_dim": "12",
        "train.embed_dim": "4",
        "train.lstm_hidden": "6",
        "train.stage1_pairs": "24",
        "train.eval_subset": "8",
        "run.data_dir": str(tmp_path / "data"),
        "run.model_dir": str(tmp_path / "models"),
        "run.report_dir": str(tmp_path / "reports"),
    }
    values.update(overrides)
    return parse_config(values)


@pytest.fixture
def tiny_cfg(tmp_path: Path) -> HarnessConfig:
    return tiny_config(tmp_path)
