"""Stage-1 and stage-2 training loops with early stopping."""

from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from ..core.config import TrainConfig
from ..core.errors import DataError
from ..core.logging import get_logger
from ..dsl.ast import ACTION_TYPES
from ..micrograd import Params, Tape, gradients, make_optimizer
from ..scene.model import Scene
from ..scene.spatial import scene_equal
from ..tensorize import Vocabulary, encode_scenes, tokenize_batch
from ..worldgen.actions import gen_identity
from ..worldgen.dataset import SampleRecord
from .losses import scene_loss
from .models import Stage1Model, Stage2Model, init_stage1, init_stage2
from .predict import predict_scenes, reconstruct_scenes

log = get_logger("arl.train")

SCENE_TOLERANCE = 0.5

Pair = tuple[Scene, Scene]


@dataclass
class EpochStats:
    epoch: int
    loss: float
    train_acc: float
    val_acc: float | None = None


@dataclass
class History:
    epochs: list[EpochStats] = field(default_factory=list)
    best_epoch: int | None = None
    stopped_early: bool = False

    def losses(self) -> list[float]:
        return [e.loss for e in self.epochs]

    def to_dict(self) -> dict:
        return {
            "epochs": [asdict(e) for e in self.epochs],
            "best_epoch": self.best_epoch,
            "stopped_early": self.stopped_early,
        }


class EarlyStopper:
    """Tracks the best epoch by accuracy and keeps a snapshot of its weights."""

    def __init__(self, patience: int, params: Params) -> None:
        self.patience = patience
        self.params = params
        self.best = -1.0
        self.best_epoch: int | None = None
        self.snapshot: Params | None = None

    def update(self, epoch: int, metric: float) -> bool:
        if metric > self.best:
            self.best, self.best_epoch = metric, epoch
            self.snapshot = self.params.copy()
            return False
        return epoch - self.best_epoch >= self.patience

    def restore(self) -> None:
        if self.snapshot is not None:
            self.params.assign(self.snapshot)


def scene_accuracy(
    predicted: Sequence[Scene], targets: Sequence[Scene], tol: float = SCENE_TOLERANCE
) -> float:
    if not targets:
        return 0.0
    hits = sum(scene_equal(p, t, tol) for p, t in zip(predicted, targets))
    return hits / len(targets)


def _cell_key(cell: str) -> tuple:
    rank = ACTION_TYPES.index(cell) if cell in ACTION_TYPES else len(ACTION_TYPES)
    return (rank, cell)


def balanced_pairs(
    records: Sequence[SampleRecord], n: int, rng: np.random.Generator
) -> list[Pair]:
    """Up to ``n`` (before, after) pairs, round-robin over action types."""
    groups: dict[str, list[SampleRecord]] = {}
    for r in records:
        groups.setdefault(r.action_cell(), []).append(r)
    queues = []
    for cell in sorted(groups, key=_cell_key):
        members = groups[cell]
        queues.append([members[int(i)] for i in rng.permutation(len(members))])
    chosen: list[Pair] = []
    depth = 0
    while len(chosen) < n and any(depth < len(q) for q in queues):
        for q in queues:
            if depth < len(q) and len(chosen) < n:
                chosen.append((q[depth].scene_pre, q[depth].scene_post))
        depth += 1
    return chosen


def _identity_count(n: int, fraction: float) -> int:
    return int(round(fraction * n))


def _batches(n: int, batch_size: int, rng: np.random.Generator) -> list[np.ndarray]:
    order = rng.permutation(n)
    return [order[i : i + batch_size] for i in range(0, n, batch_size)]


def _stop_metric(stats: EpochStats) -> float:
    return stats.val_acc if stats.val_acc is not None else stats.train_acc


def _log_epoch(stage: int, stats: EpochStats) -> None:
    log.info(
        f"Stage {stage} epoch {stats.epoch}: loss={stats.loss:.4f} "
        f"train_acc={stats.train_acc:.3f} val_acc={stats.val_acc}"
    )


def train_stage1(
    pairs: Sequence[Pair], cfg: TrainConfig, val_pairs: Sequence[Pair] | None = None
) -> tuple[Stage1Model, History]:
    if not pairs:
        raise DataError(
            "empty-dataset", "stage-1 training needs at least one scene pair"
        )
    rng = np.random.default_rng([cfg.seed, 11])
    pairs = list(pairs)
    extra = _identity_count(len(pairs), cfg.identity_fraction)
    for i in rng.choice(len(pairs), size=extra):
        pairs.append((pairs[int(i)][0], pairs[int(i)][0]))
    model = init_stage1(cfg)
    before = encode_scenes([p[0] for p in pairs])
    after = encode_scenes([p[1] for p in pairs])
    optimizer = make_optimizer(cfg.optimizer, cfg.learning_rate)
    stopper = EarlyStopper(cfg.patience, model.params)
    history = History()
    seen = pairs[: cfg.eval_subset]
    log.info(
        f"Stage 1: {len(pairs)} pairs, L={cfg.action_dim}, "
        f"{model.params.count()} weights"
    )
    for epoch in range(cfg.epochs):
        total = 0.0
        for idx in _batches(len(pairs), cfg.batch_size, rng):
            tape = Tape()
            action = model.encode(tape, before[idx], after[idx])
            pred = model.decode(tape, before[idx], action)
            error = scene_loss(tape, pred, after[idx], cfg.coord_weight)
            loss = tape.scale(error, 1.0 / len(idx))
            tape.backward(loss)
            optimizer.step(model.params, gradients(tape, model.params))
            total += loss.item() * len(idx)
            log.debug(f"stage1 epoch {epoch} batch loss {loss.item():.5f}")
        stats = EpochStats(
            epoch=epoch,
            loss=total / len(pairs),
            train_acc=scene_accuracy(
                reconstruct_scenes(seen, model), [p[1] for p in seen]
            ),
        )
        if val_pairs:
            stats.val_acc = scene_accuracy(
                reconstruct_scenes(list(val_pairs), model), [p[1] for p in val_pairs]
            )
        history.epochs.append(stats)
        _log_epoch(1, stats)
        if stopper.update(epoch, _stop_metric(stats)):
            log.warning(
                f"Stage 1 stopped early at epoch {epoch}, "
                f"best epoch {stopper.best_epoch}"
            )
            history.stopped_early = True
            break
    stopper.restore()
    history.best_epoch = stopper.best_epoch
    return model, history


def stage2_samples(
    records: Sequence[SampleRecord], fraction: float, rng: np.random.Generator
) -> tuple[list[Scene], list[str], list[Scene]]:
    before = [r.scene_pre for r in records]
    texts = [r.action_text for r in records]
    after = [r.scene_post for r in records]
    for i in rng.choice(len(records), size=_identity_count(len(records), fraction)):
        text, _ = gen_identity(rng)
        before.append(records[int(i)].scene_pre)
        texts.append(text)
        after.append(records[int(i)].scene_pre)
    return before, texts, after


def train_stage2(
    records: Sequence[SampleRecord],
    stage1: Stage1Model,
    cfg: TrainConfig,
    vocab: Vocabulary,
    val_records: Sequence[SampleRecord] | None = None,
    train_decoder: bool = False,
) -> tuple[Stage2Model, History]:
    """Fit the text encoder through the decoder, which stays frozen unless asked."""
    if not records:
        raise DataError("empty-dataset", "stage-2 training needs at least one record")
    rng = np.random.default_rng([cfg.seed, 22])
    scenes, texts, targets = stage2_samples(records, cfg.identity_fraction, rng)
    ids = tokenize_batch(texts, vocab)
    before = encode_scenes(scenes)
    after = encode_scenes(targets)
    model = init_stage2(cfg, len(vocab))
    stage1.params.set_trainable("decoder.", train_decoder)
    trainable = model.params.merged(stage1.decoder) if train_decoder else model.params
    aux_target = None
    if cfg.aux_weight > 0:
        aux_target = stage1.encode(Tape(recording=False), before, after).value
    optimizer = make_optimizer(cfg.optimizer, cfg.learning_rate)
    stopper = EarlyStopper(cfg.patience, trainable)
    history = History()
    n_seen = min(cfg.eval_subset, len(records))
    log.info(
        f"Stage 2: {len(texts)} samples, vocabulary {len(vocab)}, "
        f"decoder trainable={train_decoder}"
    )
    for epoch in range(cfg.stage2_epochs):
        total = 0.0
        for idx in _batches(len(texts), cfg.batch_size, rng):
            tape = Tape()
            action = model.forward(tape, ids[idx])
            pred = stage1.decode(tape, before[idx], action)
            terms = [scene_loss(tape, pred, after[idx], cfg.coord_weight)]
            if aux_target is not None:
                pull = tape.squared_error(action, aux_target[idx])
                terms.append(tape.scale(pull, cfg.aux_weight))
            summed = tape.sum(terms) if len(terms) > 1 else terms[0]
            loss = tape.scale(summed, 1.0 / len(idx))
            tape.backward(loss)
            optimizer.step(trainable, gradients(tape, trainable))
            total += loss.item() * len(idx)
        seen = predict_scenes(scenes[:n_seen], texts[:n_seen], stage1, model, vocab)
        stats = EpochStats(
            epoch=epoch,
            loss=total / len(texts),
            train_acc=scene_accuracy(seen, targets[:n_seen]),
        )
        if val_records:
            stats.val_acc = evaluate_scenes(val_records, stage1, model, vocab)
        history.epochs.append(stats)
        _log_epoch(2, stats)
        if stopper.update(epoch, _stop_metric(stats)):
            log.warning(
                f"Stage 2 stopped early at epoch {epoch}, "
                f"best epoch {stopper.best_epoch}"
            )
            history.stopped_early = True
            break
    stopper.restore()
    history.best_epoch = stopper.best_epoch
    return model, history


def evaluate_scenes(
    records: Sequence[SampleRecord], m1: Stage1Model, m2: Stage2Model, vocab: Vocabulary
) -> float:
    """Held-out scene-reconstruction accuracy of the learned path."""
    predicted = predict_scenes(
        [r.scene_pre for r in records], [r.action_text for r in records], m1, m2, vocab
    )
    return scene_accuracy(predicted, [r.scene_post for r in records])
