"""27-class answer codec."""

import numpy as np

from ..core.errors import DataError
from ..scene.model import ANSWERS

ANSWER_INDEX = {a: i for i, a in enumerate(ANSWERS)}


def answer_index(answer: str) -> int:
    try:
        return ANSWER_INDEX[answer]
    except KeyError:
        raise DataError(
            "unknown-answer", f"{answer!r} is not in the answer vocabulary"
        ) from None


def encode_answer(answer: str) -> np.ndarray:
    v = np.zeros(len(ANSWERS))
    v[answer_index(answer)] = 1.0
    return v


def decode_answer(v: np.ndarray) -> str:
    return ANSWERS[int(np.argmax(v))]
