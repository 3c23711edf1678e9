"""Command bodies: each reads its inputs from the configured directories and
writes its outputs atomically, so reruns with identical inputs are idempotent."""

from pathlib import Path

import numpy as np

from ..arl import (
    action_vectors,
    balanced_pairs,
    init_stage1,
    load_stage1,
    save_stage1,
    save_stage2,
    train_stage1,
    train_stage2,
)
from ..arl.models import Stage1Model, Stage2Model
from ..core.artifacts import (
    artifact_group,
    write_csv,
    write_json,
    write_jsonl,
    write_text,
)
from ..core.config import HarnessConfig
from ..core.errors import DataError
from ..core.logging import get_logger
from ..qa import MetricsReport, PipelineBundle, evaluate
from ..worldgen import DatasetSplits, gen_dataset, load_split, load_vocabulary, verify
from ..worldgen.dataset import SPLITS, VerifyReport

log = get_logger("harness")

STAGE2_ONLY_DIR = "stage2_only"


def run_gen(cfg: HarnessConfig) -> DatasetSplits:
    log.info(f"Generating dataset into {cfg.run.data_dir} with seed {cfg.gen.seed}")
    return gen_dataset(cfg.gen, cfg.run.data_dir)


def run_verify(cfg: HarnessConfig) -> VerifyReport:
    report = verify(cfg.run.data_dir)
    if not report.ok:
        raise DataError(
            "verify-failed",
            f"{len(report.failures)} inconsistent records, "
            f"first: {report.failures[0]}",
        )
    return report


def stage1_data(cfg: HarnessConfig):
    train = load_split(cfg.run.data_dir, "train")
    val = load_split(cfg.run.data_dir, "val")[: cfg.train.eval_subset]
    rng = np.random.default_rng([cfg.train.seed, 3])
    pairs = balanced_pairs(train, cfg.train.stage1_pairs, rng)
    return pairs, [(r.scene_pre, r.scene_post) for r in val]


def run_train_stage1(cfg: HarnessConfig) -> Stage1Model:
    pairs, val_pairs = stage1_data(cfg)
    m1, history = train_stage1(pairs, cfg.train, val_pairs)
    save_stage1(m1, cfg.run.model_dir, cfg.fingerprint(), history.to_dict())
    return m1


def run_train_stage2(cfg: HarnessConfig, no_stage1: bool = False) -> Stage2Model:
    """Train the text encoder; ``no_stage1`` swaps in a randomly initialized decoder."""
    vocab = load_vocabulary(cfg.run.data_dir)
    train = load_split(cfg.run.data_dir, "train")
    val = load_split(cfg.run.data_dir, "val")[: cfg.train.eval_subset]
    model_dir = Path(cfg.run.model_dir)
    if no_stage1:
        m1 = init_stage1(cfg.train, seed=cfg.train.seed + 1)
        model_dir = model_dir / STAGE2_ONLY_DIR
        train_decoder = cfg.train.ablation_decoder_trainable
    else:
        m1 = load_stage1(model_dir)
        train_decoder = False
    before = m1.decoder.digest()
    m2, history = train_stage2(
        train, m1, cfg.train, vocab, val, train_decoder=train_decoder
    )
    if not train_decoder and m1.decoder.digest() != before:
        raise RuntimeError("decoder weights changed during stage-2 training")
    if no_stage1:
        save_stage1(m1, model_dir, cfg.fingerprint())
    save_stage2(m2, m1, vocab, model_dir, cfg.fingerprint(), history.to_dict())
    return m2


def report_paths(cfg: HarnessConfig, name: str) -> tuple[Path, Path, Path]:
    base = Path(cfg.run.report_dir)
    return (
        base / f"{name}.json",
        base / f"{name}.txt",
        base / f"{name}.predictions.jsonl",
    )


def run_eval(
    cfg: HarnessConfig, split: str, mode: str, model_dir: Path | None = None
) -> MetricsReport:
    if split not in SPLITS:
        raise DataError("unknown-split", f"{split!r} is not one of {', '.join(SPLITS)}")
    records = load_split(cfg.run.data_dir, split)
    bundle = None
    if mode == "learned":
        vocab = load_vocabulary(cfg.run.data_dir)
        bundle = PipelineBundle.load(
            model_dir or cfg.run.model_dir, vocab, cfg.run.question_mode
        )
    report, predictions = evaluate(records, split, mode, bundle, cfg.run.question_mode)
    json_path, table_path, pred_path = report_paths(cfg, f"eval_{split}_{mode}")
    payload = report.to_dict()
    payload["config"] = cfg.fingerprint()
    with artifact_group(json_path, table_path, pred_path):
        write_json(json_path, payload)
        write_text(table_path, report.render_table())
        write_jsonl(pred_path, predictions)
    log.info(f"Wrote {json_path}, {table_path} and {pred_path}")
    return report


def run_export_vectors(cfg: HarnessConfig, out: Path | None = None) -> Path:
    vocab = load_vocabulary(cfg.run.data_dir)
    bundle = PipelineBundle.load(cfg.run.model_dir, vocab, cfg.run.question_mode)
    records = load_split(cfg.run.data_dir, "val")
    vectors = action_vectors([r.action_text for r in records], bundle.stage2, vocab)
    columns = [f"v{i}" for i in range(vectors.shape[1])]
    rows = [
        {
            "id": r.id,
            "action_type": r.action_cell(),
            "text": r.action_text,
            **dict(zip(columns, map(float, v))),
        }
        for r, v in zip(records, vectors)
    ]
    path = out or Path(cfg.run.report_dir) / "action_vectors.csv"
    write_csv(path, ["id", "action_type", "text", *columns], rows)
    log.info(f"Exported {len(rows)} action vectors to {path}")
    return path
