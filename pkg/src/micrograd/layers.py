"""Dense, embedding and LSTM layers assembled from tape primitives.

Layers are plain functions over a :class:`Params` store; a layer's tensors
live under ``<prefix>.<part>`` names.
"""

import numpy as np

from .params import Params
from .tensor import Tape, Tensor

EMBEDDING_SCALE = 0.1
FORGET_BIAS = 1.0


def glorot(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    a = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-a, a, size=(fan_in, fan_out))


def init_dense(
    params: Params, prefix: str, n_in: int, n_out: int, rng: np.random.Generator
) -> None:
    params.add(f"{prefix}.w", glorot(rng, n_in, n_out))
    params.add(f"{prefix}.b", np.zeros((1, n_out)))


def dense(tape: Tape, params: Params, prefix: str, x: Tensor) -> Tensor:
    return tape.add(tape.matmul(x, params[f"{prefix}.w"]), params[f"{prefix}.b"])


def init_mlp(
    params: Params, prefix: str, widths: list[int], rng: np.random.Generator
) -> None:
    for i, (n_in, n_out) in enumerate(zip(widths[:-1], widths[1:])):
        init_dense(params, f"{prefix}.l{i}", n_in, n_out, rng)


def mlp(tape: Tape, params: Params, prefix: str, x: Tensor, depth: int) -> Tensor:
    """``depth`` dense layers, tanh between them, linear output."""
    for i in range(depth):
        x = dense(tape, params, f"{prefix}.l{i}", x)
        if i < depth - 1:
            x = tape.tanh(x)
    return x


def init_embedding(
    params: Params, name: str, vocab_size: int, dim: int, rng: np.random.Generator
) -> None:
    table = rng.uniform(-EMBEDDING_SCALE, EMBEDDING_SCALE, size=(vocab_size, dim))
    params.add(name, table)


def embedding(tape: Tape, params: Params, name: str, ids: np.ndarray) -> Tensor:
    return tape.take(params[name], ids)


def init_lstm(
    params: Params, prefix: str, n_in: int, hidden: int, rng: np.random.Generator
) -> None:
    # gate order in the fused matrices: input, forget, candidate, output
    params.add(f"{prefix}.w", glorot(rng, n_in + hidden, 4 * hidden))
    b = np.zeros((1, 4 * hidden))
    b[0, hidden : 2 * hidden] = FORGET_BIAS
    params.add(f"{prefix}.b", b)


def lstm_cell(
    tape: Tape,
    params: Params,
    prefix: str,
    x: Tensor,
    h: Tensor,
    c: Tensor,
    mask: np.ndarray | None = None,
) -> tuple[Tensor, Tensor]:
    """One step; rows with mask 0 carry their previous state through unchanged."""
    hidden = h.shape[1]
    z = dense(tape, params, prefix, tape.concat([x, h]))
    i = tape.sigmoid(tape.slice(z, 0, hidden))
    f = tape.sigmoid(tape.slice(z, hidden, 2 * hidden))
    g = tape.tanh(tape.slice(z, 2 * hidden, 3 * hidden))
    o = tape.sigmoid(tape.slice(z, 3 * hidden, 4 * hidden))
    c_new = tape.add(tape.mul(f, c), tape.mul(i, g))
    h_new = tape.mul(o, tape.tanh(c_new))
    if mask is not None:
        c_new = tape.mix(mask, c_new, c)
        h_new = tape.mix(mask, h_new, h)
    return h_new, c_new


def lstm(
    tape: Tape,
    params: Params,
    prefix: str,
    steps: list[Tensor],
    masks: list[np.ndarray],
) -> tuple[Tensor, Tensor]:
    """Run the cell over a sequence and return the final (hidden, cell) state."""
    batch = steps[0].shape[0]
    hidden = params[f"{prefix}.b"].shape[1] // 4
    h = Tensor(np.zeros((batch, hidden)))
    c = Tensor(np.zeros((batch, hidden)))
    for x, m in zip(steps, masks):
        if not m.any():
            break
        h, c = lstm_cell(tape, params, prefix, x, h, c, None if m.all() else m)
    return h, c
