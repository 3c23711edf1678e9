"""Factorized scene likelihood.

Per slot: binary cross-entropy on presence, and for slots present in the
target a categorical cross-entropy per attribute group plus a weighted
squared error on coordinates. Absent target slots only pay the presence term.
"""

import numpy as np

from ..micrograd import Tape, Tensor
from ..scene.model import N_MAX
from ..tensorize.scene_codec import COORDS, GROUPS, PRESENCE, SLOT_DIM

_SLOTS = np.arange(N_MAX) * SLOT_DIM
PRESENCE_COLS = _SLOTS + PRESENCE
GROUP_COLS = {
    k: (_SLOTS[:, None] + np.arange(s.start, s.stop)).reshape(-1)
    for k, s in GROUPS.items()
}
COORD_COLS = (_SLOTS[:, None] + np.arange(COORDS.start, COORDS.stop)).reshape(-1)


def scene_loss(
    tape: Tape, pred: Tensor, target: np.ndarray, coord_weight: float = 1.0
) -> Tensor:
    """Summed over slots and batch rows."""
    target = np.atleast_2d(target)
    batch = target.shape[0]
    present = target[:, PRESENCE_COLS]  # (B, N)
    terms = [tape.sigmoid_cross_entropy(tape.take_cols(pred, PRESENCE_COLS), present)]
    weights = present.reshape(-1)
    for cols in GROUP_COLS.values():
        k = cols.size // N_MAX
        logits = tape.reshape(tape.take_cols(pred, cols), batch * N_MAX, k)
        onehot = target[:, cols].reshape(batch * N_MAX, k)
        terms.append(tape.softmax_cross_entropy(logits, onehot, weights))
    coord_w = np.repeat(present, COORDS.stop - COORDS.start, axis=1)
    coords = tape.take_cols(pred, COORD_COLS)
    coord = tape.squared_error(coords, target[:, COORD_COLS], coord_w)
    terms.append(tape.scale(coord, coord_weight))
    return tape.sum(terms)


def presence_probabilities(raw: np.ndarray) -> np.ndarray:
    """Decoder outputs with presence logits squashed to probabilities."""
    out = np.array(raw, dtype=np.float64)
    x = out[:, PRESENCE_COLS]
    out[:, PRESENCE_COLS] = 0.5 * (1.0 + np.tanh(0.5 * x))
    return out
