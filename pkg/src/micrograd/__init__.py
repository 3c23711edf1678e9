"""Minimal reverse-mode autodiff with the layers the action learner needs."""

from .gradcheck import grad_check, gradients
from .layers import (
    dense,
    embedding,
    glorot,
    init_dense,
    init_embedding,
    init_lstm,
    init_mlp,
    lstm,
    lstm_cell,
    mlp,
)
from .optim import SGD, Adam, Optimizer, make_optimizer, step
from .params import Params
from .tensor import Tape, Tensor

__all__ = [
    "SGD",
    "Adam",
    "Optimizer",
    "Params",
    "Tape",
    "Tensor",
    "dense",
    "embedding",
    "glorot",
    "grad_check",
    "gradients",
    "init_dense",
    "init_embedding",
    "init_lstm",
    "init_mlp",
    "lstm",
    "lstm_cell",
    "make_optimizer",
    "mlp",
    "step",
]
