"""Stage-1 action encoder / effect decoder and the stage-2 text encoder."""

from dataclasses import dataclass

import numpy as np

from ..core.config import TrainConfig
from ..micrograd import (
    Params,
    Tape,
    Tensor,
    dense,
    embedding,
    init_dense,
    init_embedding,
    init_lstm,
    init_mlp,
    lstm,
    mlp,
)
from ..tensorize.scene_codec import SCENE_DIM

MLP_DEPTH = 3  # two tanh hidden layers and a linear output


@dataclass
class Stage1Model:
    params: Params
    action_dim: int
    hidden_dim: int

    def encode(self, tape: Tape, before: np.ndarray, after: np.ndarray) -> Tensor:
        pair = [np.atleast_2d(before), np.atleast_2d(after)]
        x = Tensor(np.concatenate(pair, axis=1))
        return mlp(tape, self.params, "encoder", x, MLP_DEPTH)

    def decode(self, tape: Tape, before: np.ndarray, action: Tensor) -> Tensor:
        """Raw outputs: presence and attribute logits, linear coordinates."""
        x = tape.concat([Tensor(np.atleast_2d(before)), action])
        return mlp(tape, self.params, "decoder", x, MLP_DEPTH)

    @property
    def decoder(self) -> Params:
        return self.params.subset("decoder.")

    @property
    def encoder(self) -> Params:
        return self.params.subset("encoder.")


def init_stage1(cfg: TrainConfig, seed: int | None = None) -> Stage1Model:
    rng = np.random.default_rng([cfg.seed if seed is None else seed, 1])
    params = Params()
    h, L = cfg.hidden_dim, cfg.action_dim
    init_mlp(params, "encoder", [2 * SCENE_DIM, h, h, L], rng)
    init_mlp(params, "decoder", [SCENE_DIM + L, h, h, SCENE_DIM], rng)
    return Stage1Model(params, L, h)


@dataclass
class Stage2Model:
    params: Params
    vocab_size: int
    embed_dim: int
    lstm_hidden: int
    action_dim: int

    def forward(self, tape: Tape, ids: np.ndarray) -> Tensor:
        """Token ids (B, T) to action vectors (B, L) from the final LSTM cell state."""
        ids = np.atleast_2d(ids)
        steps = [
            embedding(tape, self.params, "nl2act.embed", ids[:, t])
            for t in range(ids.shape[1])
        ]
        masks = [(ids[:, t] > 0).astype(np.float64) for t in range(ids.shape[1])]
        _, cell = lstm(tape, self.params, "nl2act.lstm", steps, masks)
        return dense(tape, self.params, "nl2act.proj", cell)


def init_stage2(
    cfg: TrainConfig, vocab_size: int, seed: int | None = None
) -> Stage2Model:
    rng = np.random.default_rng([cfg.seed if seed is None else seed, 2])
    params = Params()
    init_embedding(params, "nl2act.embed", vocab_size, cfg.embed_dim, rng)
    init_lstm(params, "nl2act.lstm", cfg.embed_dim, cfg.lstm_hidden, rng)
    init_dense(params, "nl2act.proj", cfg.lstm_hidden, cfg.action_dim, rng)
    return Stage2Model(
        params, vocab_size, cfg.embed_dim, cfg.lstm_hidden, cfg.action_dim
    )
