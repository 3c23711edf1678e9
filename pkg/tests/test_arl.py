"""Two-stage action learner on tiny configurations."""

import numpy as np
import pytest

from src.arl import (
    EarlyStopper,
    balanced_pairs,
    init_stage1,
    init_stage2,
    load_stage1,
    load_stage2,
    predict_scenes,
    save_stage1,
    save_stage2,
    scene_accuracy,
    train_stage1,
    train_stage2,
)
from src.arl.predict import action_vectors
from src.core.config import GenConfig, TrainConfig
from src.core.errors import DataError, ModelMismatchError
from src.micrograd import Params
from src.scene import validate_scene
from src.tensorize import SCENE_DIM, Vocabulary
from src.worldgen import gen_split, generator_vocabulary

TINY = TrainConfig(
    seed=3,
    epochs=2,
    stage2_epochs=2,
    batch_size=4,
    action_dim=5,
    hidden_dim=10,
    embed_dim=4,
    lstm_hidden=6,
    stage1_pairs=8,
    eval_subset=4,
    patience=5,
)


@pytest.fixture(scope="module")
def records():
    return gen_split(GenConfig(seed=2, train=8), "train")


@pytest.fixture(scope="module")
def vocab():
    return generator_vocabulary()


@pytest.fixture(scope="module")
def stage1(records):
    model, _ = train_stage1([(r.scene_pre, r.scene_post) for r in records], TINY)
    return model


class TestModels:
    def test_stage1_shapes(self):
        m1 = init_stage1(TINY)
        assert m1.params["encoder.l0.w"].shape == (2 * SCENE_DIM, 10)
        assert m1.params["encoder.l2.w"].shape == (10, 5)
        assert m1.params["decoder.l0.w"].shape == (SCENE_DIM + 5, 10)
        assert m1.params["decoder.l2.w"].shape == (10, SCENE_DIM)

    def test_stage2_shapes(self):
        m2 = init_stage2(TINY, 30)
        assert m2.params["nl2act.embed"].shape == (30, 4)
        assert m2.params["nl2act.lstm.w"].shape == (4 + 6, 24)
        assert m2.params["nl2act.proj.w"].shape == (6, 5)

    def test_seeded_init(self):
        assert init_stage1(TINY).params.digest() == init_stage1(TINY).params.digest()
        other = init_stage1(TINY, seed=4)
        assert init_stage1(TINY).params.digest() != other.params.digest()

    def test_padding_does_not_change_vectors(self, vocab):
        m2 = init_stage2(TINY, len(vocab))
        a = action_vectors(["remove the cube"], m2, vocab)
        b = action_vectors(["remove the cube", "do nothing"], m2, vocab)
        np.testing.assert_allclose(a[0], b[0])
        assert a.shape == (1, 5)


class TestTraining:
    def test_balanced_pairs_round_robin(self, records):
        pairs = balanced_pairs(records, 4, np.random.default_rng(0))
        assert len(pairs) == 4
        cells = {r.action_cell() for r in records for p in pairs if r.scene_pre is p[0]}
        assert cells == {"add", "remove", "change", "move"}

    def test_stage1_history(self, records):
        pairs = [(r.scene_pre, r.scene_post) for r in records]
        model, history = train_stage1(pairs, TINY)
        assert len(history.epochs) == 2
        assert all(np.isfinite(history.losses()))
        assert history.best_epoch in (0, 1)
        assert model.action_dim == 5

    def test_stage1_deterministic(self, records):
        pairs = [(r.scene_pre, r.scene_post) for r in records]
        a, _ = train_stage1(pairs, TINY)
        b, _ = train_stage1(pairs, TINY)
        assert a.params.digest() == b.params.digest()

    def test_zero_epochs_keeps_initialization(self, records, stage1, vocab):
        idle = TINY.model_copy(update={"epochs": 0, "stage2_epochs": 0})
        pairs = [(r.scene_pre, r.scene_post) for r in records]
        m1, history = train_stage1(pairs, idle)
        assert m1.params.digest() == init_stage1(idle).params.digest()
        assert history.epochs == []
        m2, _ = train_stage2(records, stage1, idle, vocab)
        assert m2.params.digest() == init_stage2(idle, len(vocab)).params.digest()

    def test_empty(self, records, stage1, vocab):
        with pytest.raises(DataError, match="empty-dataset"):
            train_stage1([], TINY)
        with pytest.raises(DataError, match="empty-dataset"):
            train_stage2([], stage1, TINY, vocab)

    def test_stage2_keeps_decoder_frozen(self, records, stage1, vocab):
        before = stage1.decoder.digest()
        m2, history = train_stage2(
            records, stage1, TINY, vocab, val_records=records[:2]
        )
        assert stage1.decoder.digest() == before
        assert history.epochs[0].val_acc is not None
        predicted = predict_scenes(
            [r.scene_pre for r in records],
            [r.action_text for r in records],
            stage1,
            m2,
            vocab,
        )
        assert all(validate_scene(s).ok for s in predicted)
        assert 0.0 <= scene_accuracy(predicted, [r.scene_post for r in records]) <= 1.0

    def test_stage2_can_train_decoder(self, records, vocab):
        m1 = init_stage1(TINY)
        before = m1.decoder.digest()
        train_stage2(records, m1, TINY, vocab, train_decoder=True)
        assert m1.decoder.digest() != before

    def test_aux_loss(self, records, stage1, vocab):
        cfg = TINY.model_copy(update={"aux_weight": 0.5})
        m2, history = train_stage2(records, stage1, cfg, vocab)
        assert all(np.isfinite(history.losses()))


class TestEarlyStopper:
    def test_restores_best_snapshot(self):
        params = Params()
        params.add("w", np.zeros((1, 1)))
        stopper = EarlyStopper(2, params)
        assert not stopper.update(0, 0.5)
        params["w"].value[0, 0] = 9.0
        assert not stopper.update(1, 0.4)
        assert stopper.update(2, 0.3)
        stopper.restore()
        assert params["w"].value[0, 0] == 0.0
        assert stopper.best_epoch == 0


class TestCheckpoints:
    def test_roundtrip(self, tmp_path, records, stage1, vocab):
        m2, history = train_stage2(records, stage1, TINY, vocab)
        save_stage1(stage1, tmp_path, "fp")
        save_stage2(m2, stage1, vocab, tmp_path, "fp", history.to_dict())
        m1 = load_stage1(tmp_path)
        loaded = load_stage2(tmp_path, m1, vocab)
        assert m1.params.digest() == stage1.params.digest()
        assert loaded.params.digest() == m2.params.digest()

    def test_vocab_hash_mismatch(self, tmp_path, stage1, vocab):
        save_stage1(stage1, tmp_path, "fp")
        save_stage2(init_stage2(TINY, len(vocab)), stage1, vocab, tmp_path, "fp")
        other = Vocabulary.build(["remove", "the", "cube"])
        with pytest.raises(ModelMismatchError, match="vocab-hash"):
            load_stage2(tmp_path, stage1, other)

    def test_action_dim_mismatch(self, tmp_path, stage1, vocab):
        save_stage2(init_stage2(TINY, len(vocab)), stage1, vocab, tmp_path, "fp")
        wider = init_stage1(TINY.model_copy(update={"action_dim": 7}))
        with pytest.raises(ModelMismatchError, match="action-dim"):
            load_stage2(tmp_path, wider, vocab)

    def test_decoder_changed(self, tmp_path, stage1, vocab):
        save_stage2(init_stage2(TINY, len(vocab)), stage1, vocab, tmp_path, "fp")
        with pytest.raises(ModelMismatchError, match="decoder-changed"):
            load_stage2(tmp_path, init_stage1(TINY, seed=99), vocab)

    def test_missing_checkpoint(self, tmp_path):
        with pytest.raises(DataError):
            load_stage1(tmp_path)
