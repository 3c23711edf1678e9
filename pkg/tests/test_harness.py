"""Command bodies end to end on a tiny configuration."""

import csv
import json

import pytest

from src.core.errors import ConfigError, DataError
from src.harness import (
    default_values,
    run_ablation,
    run_eval,
    run_export_vectors,
    run_gen,
    run_sweep,
    run_train_stage1,
    run_train_stage2,
    run_verify,
)
from src.harness import runs
from src.harness.runs import STAGE2_ONLY_DIR
from src.worldgen import SPLITS


@pytest.fixture
def generated(tiny_cfg):
    run_gen(tiny_cfg)
    return tiny_cfg


@pytest.fixture
def trained(generated):
    run_train_stage1(generated)
    run_train_stage2(generated)
    return generated


class TestData:
    def test_gen_writes_splits(self, tiny_cfg):
        splits = run_gen(tiny_cfg)
        assert set(splits) == set(SPLITS)
        assert (tiny_cfg.run.data_dir / "meta.json").exists()

    def test_verify(self, generated):
        assert run_verify(generated).checked == 24 + 8 + 8 + 6 + 6

    def test_verify_failure(self, generated):
        path = generated.run.data_dir / "train.jsonl"
        rows = [json.loads(line) for line in path.read_text().splitlines()]
        rows[0]["answer"] = "purple" if rows[0]["answer"] != "purple" else "cyan"
        path.write_text("".join(json.dumps(r) + "\n" for r in rows))
        with pytest.raises(DataError, match="verify-failed"):
            run_verify(generated)

    def test_missing_data(self, tiny_cfg):
        with pytest.raises(DataError, match="missing-artifact"):
            run_train_stage1(tiny_cfg)


class TestEval:
    def test_oracle_eval(self, generated):
        report = run_eval(generated, "test_2hop_ta", "oracle")
        assert report.overall.accuracy == 1.0
        stem = generated.run.report_dir / "eval_test_2hop_ta_oracle"
        data = json.loads(stem.with_suffix(".json").read_text())
        assert data["config"] == generated.fingerprint()
        assert data["overall"]["total"] == 6
        assert stem.with_suffix(".txt").read_text().startswith("split")
        lines = stem.with_suffix(".predictions.jsonl").read_text().splitlines()
        assert len(lines) == 6

    def test_failed_eval_leaves_no_reports(self, generated, monkeypatch):
        def disk_full(path, rows):
            raise OSError("no space left on device")

        monkeypatch.setattr(runs, "write_jsonl", disk_full)
        with pytest.raises(OSError):
            run_eval(generated, "val", "oracle")
        assert not list(generated.run.report_dir.glob("eval_val_oracle*"))

    def test_unknown_split(self, generated):
        with pytest.raises(DataError, match="unknown-split"):
            run_eval(generated, "holdout", "oracle")

    def test_learned_eval(self, trained):
        report = run_eval(trained, "test_ordinary", "learned")
        assert report.overall.total == 8
        assert 0.0 <= report.overall.accuracy <= 1.0
        assert (trained.run.report_dir / "eval_test_ordinary_learned.json").exists()

    def test_learned_eval_needs_models(self, generated):
        with pytest.raises(DataError, match="missing-artifact"):
            run_eval(generated, "val", "learned")

    def test_checkpoints_written(self, trained):
        for name in ("stage1.arlw", "stage1.json", "stage2.arlw", "stage2.json"):
            assert (trained.run.model_dir / name).exists()
        meta = json.loads((trained.run.model_dir / "stage2.json").read_text())
        assert meta["config"] == trained.fingerprint()

    def test_stage2_only(self, generated):
        run_train_stage2(generated, no_stage1=True)
        out = generated.run.model_dir / STAGE2_ONLY_DIR
        assert (out / "stage1.arlw").exists()
        report = run_eval(generated, "val", "learned", model_dir=out)
        assert report.overall.total == 8

    def test_export_vectors(self, trained):
        path = run_export_vectors(trained)
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 8
        assert list(rows[0])[:3] == ["id", "action_type", "text"]
        assert len(rows[0]) == 3 + 6


class TestExperiments:
    def test_default_values(self):
        assert default_values("vector_length") == (25, 50, 75, 100, 125, 150, 175, 200)
        assert default_values("data_size") == (500, 1000, 2000)
        with pytest.raises(ConfigError, match="unknown-axis"):
            default_values("depth")

    def test_sweep_vector_length(self, generated):
        path = run_sweep(generated, "vector_length", [3, 4])
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert [r["axis_value"] for r in rows] == ["3", "4"]
        assert all(0.0 <= float(r["scene_acc"]) <= 1.0 for r in rows)

    def test_sweep_data_size(self, generated):
        path = run_sweep(generated, "data_size", [12])
        assert path.name == "sweep_data_size.csv"

    def test_ablation(self, generated):
        rows = run_ablation(generated)
        assert [r["variant"] for r in rows] == ["stage(1+2)", "stage(2 only)"]
        data = json.loads((generated.run.report_dir / "ablation.json").read_text())
        assert data["split"] == "test_ordinary"
        assert data["decoder_trainable"] is False
        table = (generated.run.report_dir / "ablation.txt").read_text()
        assert "stage(2 only)" in table
