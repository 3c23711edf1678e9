"""Hyperparameter sweeps: one full stage-1 plus stage-2 retrain per axis value."""

from pathlib import Path
from typing import Literal, Sequence

import numpy as np

from ..arl import balanced_pairs, evaluate_scenes, train_stage1, train_stage2
from ..core.artifacts import write_csv
from ..core.config import HarnessConfig
from ..core.errors import ConfigError
from ..core.logging import get_logger
from ..qa import PipelineBundle, qa_accuracy
from ..tensorize import Vocabulary
from ..worldgen import load_split, load_vocabulary
from ..worldgen.dataset import SampleRecord

log = get_logger("harness.sweep")

Axis = Literal["vector_length", "data_size"]
AXES = ("vector_length", "data_size")
VECTOR_LENGTHS = tuple(range(25, 201, 25))
DATA_SIZES = (500, 1000, 2000)
COLUMNS = ["axis_value", "scene_acc", "qa_acc"]


def default_values(axis: str) -> tuple[int, ...]:
    if axis == "vector_length":
        return VECTOR_LENGTHS
    if axis == "data_size":
        return DATA_SIZES
    raise ConfigError(
        "unknown-axis", f"sweep axis must be one of {', '.join(AXES)}, got {axis!r}"
    )


def train_and_score(
    cfg: HarnessConfig,
    train: Sequence[SampleRecord],
    held_out: Sequence[SampleRecord],
    vocab: Vocabulary,
) -> dict[str, float]:
    """Retrain both stages from scratch under ``cfg`` and score the held-out records."""
    rng = np.random.default_rng([cfg.train.seed, 3])
    pairs = balanced_pairs(train, cfg.train.stage1_pairs, rng)
    val_pairs = [(r.scene_pre, r.scene_post) for r in held_out]
    m1, _ = train_stage1(pairs, cfg.train, val_pairs)
    m2, _ = train_stage2(train, m1, cfg.train, vocab, held_out)
    bundle = PipelineBundle(m1, m2, vocab, cfg.run.question_mode)
    return {
        "scene_acc": evaluate_scenes(held_out, m1, m2, vocab),
        "qa_acc": qa_accuracy(held_out, bundle),
    }


def sweep(
    axis: Axis,
    values: Sequence[int],
    cfg: HarnessConfig,
    train: Sequence[SampleRecord],
    held_out: Sequence[SampleRecord],
    vocab: Vocabulary,
) -> list[dict]:
    default_values(axis)
    rows = []
    for value in values:
        if axis == "vector_length":
            run_cfg = cfg.with_train(action_dim=value)
            subset = train
        else:
            run_cfg = cfg.with_train(stage1_pairs=value)
            subset = train[:value]
        log.info(f"Sweep {axis}={value}: {len(subset)} training records")
        scores = train_and_score(run_cfg, subset, held_out, vocab)
        rows.append({"axis_value": value, **scores})
        log.info(
            f"Sweep {axis}={value}: scene_acc={scores['scene_acc']:.3f} "
            f"qa_acc={scores['qa_acc']:.3f}"
        )
    return rows


def run_sweep(
    cfg: HarnessConfig, axis: Axis, values: Sequence[int] | None = None
) -> Path:
    values = tuple(values) if values else default_values(axis)
    train = load_split(cfg.run.data_dir, "train")
    held_out = load_split(cfg.run.data_dir, "val")[: cfg.train.eval_subset]
    rows = sweep(axis, values, cfg, train, held_out, load_vocabulary(cfg.run.data_dir))
    path = Path(cfg.run.report_dir) / f"sweep_{axis}.csv"
    write_csv(path, COLUMNS, rows)
    log.info(f"Wrote {path}")
    return path
