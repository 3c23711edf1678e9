"""Two-stage versus text-only training of the action representation."""

from pathlib import Path
from typing import Sequence

import numpy as np

from ..arl import (
    balanced_pairs,
    evaluate_scenes,
    init_stage1,
    train_stage1,
    train_stage2,
)
from ..arl.models import Stage1Model
from ..core.artifacts import write_json, write_text
from ..core.config import HarnessConfig
from ..core.logging import get_logger
from ..qa import PipelineBundle, qa_accuracy
from ..tensorize import Vocabulary
from ..worldgen import load_split, load_vocabulary
from ..worldgen.dataset import SampleRecord

log = get_logger("harness.ablation")

FULL = "stage(1+2)"
TEXT_ONLY = "stage(2 only)"
TEST_SPLIT = "test_ordinary"


def _score(
    name: str,
    m1: Stage1Model,
    cfg: HarnessConfig,
    train: Sequence[SampleRecord],
    test: Sequence[SampleRecord],
    vocab: Vocabulary,
    train_decoder: bool,
) -> dict:
    m2, _ = train_stage2(train, m1, cfg.train, vocab, train_decoder=train_decoder)
    bundle = PipelineBundle(m1, m2, vocab, cfg.run.question_mode)
    row = {
        "variant": name,
        "scene_acc": evaluate_scenes(test, m1, m2, vocab),
        "qa_acc": qa_accuracy(test, bundle),
    }
    log.info(
        f"Ablation {name}: scene_acc={row['scene_acc']:.3f} qa_acc={row['qa_acc']:.3f}"
    )
    return row


def ablation(
    cfg: HarnessConfig,
    train: Sequence[SampleRecord],
    test: Sequence[SampleRecord],
    vocab: Vocabulary,
) -> list[dict]:
    rng = np.random.default_rng([cfg.train.seed, 3])
    m1, _ = train_stage1(balanced_pairs(train, cfg.train.stage1_pairs, rng), cfg.train)
    full = _score(FULL, m1, cfg, train, test, vocab, train_decoder=False)
    # untrained decoder, seeded apart from the stage-1 initialization
    random_m1 = init_stage1(cfg.train, seed=cfg.train.seed + 1)
    trainable = cfg.train.ablation_decoder_trainable
    text_only = _score(TEXT_ONLY, random_m1, cfg, train, test, vocab, trainable)
    return [full, text_only]


def render_rows(rows: Sequence[dict]) -> str:
    lines = [f"  {'variant':<16} {'scene':>6} {'qa':>6}"]
    for row in rows:
        scene, qa = 100.0 * row["scene_acc"], 100.0 * row["qa_acc"]
        lines.append(f"  {row['variant']:<16} {scene:6.1f} {qa:6.1f}")
    return "\n".join(lines) + "\n"


def run_ablation(cfg: HarnessConfig) -> list[dict]:
    train = load_split(cfg.run.data_dir, "train")
    test = load_split(cfg.run.data_dir, TEST_SPLIT)[: cfg.train.eval_subset]
    rows = ablation(cfg, train, test, load_vocabulary(cfg.run.data_dir))
    base = Path(cfg.run.report_dir)
    write_json(
        base / "ablation.json",
        {
            "split": TEST_SPLIT,
            "decoder_trainable": cfg.train.ablation_decoder_trainable,
            "rows": rows,
            "config": cfg.fingerprint(),
        },
    )
    write_text(base / "ablation.txt", render_rows(rows))
    return rows
