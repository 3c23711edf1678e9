"""Test-time composition: text -> action vector -> frozen decoder -> scene."""

import numpy as np

from ..micrograd import Tape, Tensor
from ..scene.model import Scene
from ..tensorize import Vocabulary, decode_scene, encode_scenes, tokenize_batch
from .losses import presence_probabilities
from .models import Stage1Model, Stage2Model

BATCH = 256


def action_vectors(texts: list[str], m2: Stage2Model, vocab: Vocabulary) -> np.ndarray:
    ids = tokenize_batch(texts, vocab)
    out = [
        m2.forward(Tape(recording=False), ids[i : i + BATCH]).value
        for i in range(0, len(ids), BATCH)
    ]
    return np.concatenate(out) if out else np.zeros((0, m2.action_dim))


def decode_batch(
    m1: Stage1Model, before: np.ndarray, actions: np.ndarray
) -> list[Scene]:
    raw = m1.decode(Tape(recording=False), before, Tensor(actions)).value
    return [decode_scene(row) for row in presence_probabilities(raw)]


def predict_scenes(
    scenes: list[Scene],
    texts: list[str],
    m1: Stage1Model,
    m2: Stage2Model,
    vocab: Vocabulary,
) -> list[Scene]:
    out: list[Scene] = []
    for i in range(0, len(scenes), BATCH):
        chunk = scenes[i : i + BATCH]
        vectors = action_vectors(texts[i : i + BATCH], m2, vocab)
        out.extend(decode_batch(m1, encode_scenes(chunk), vectors))
    return out


def predict_scene(
    s: Scene, text: str, m1: Stage1Model, m2: Stage2Model, vocab: Vocabulary
) -> Scene:
    return predict_scenes([s], [text], m1, m2, vocab)[0]


def reconstruct_scenes(
    pairs: list[tuple[Scene, Scene]], m1: Stage1Model
) -> list[Scene]:
    """Stage-1 round trip: encode the observed change, decode it back."""
    out: list[Scene] = []
    for i in range(0, len(pairs), BATCH):
        chunk = pairs[i : i + BATCH]
        before = encode_scenes([p[0] for p in chunk])
        after = encode_scenes([p[1] for p in chunk])
        actions = m1.encode(Tape(recording=False), before, after).value
        out.extend(decode_batch(m1, before, actions))
    return out
