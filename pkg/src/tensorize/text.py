"""Closed word vocabulary and fixed-length token sequences."""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from ..core.artifacts import atomic_write, read_json, sha256_bytes
from ..core.errors import DataError, TokenizationError

PAD = "<pad>"
MAX_TOKENS = 24


@dataclass(frozen=True)
class Vocabulary:
    """Index = token id; id 0 is padding. Frozen once built."""

    words: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.words or self.words[0] != PAD:
            raise DataError("bad-vocab", f"vocabulary must start with {PAD!r}")
        if len(set(self.words)) != len(self.words):
            raise DataError("bad-vocab", "vocabulary has duplicate words")
        object.__setattr__(self, "index", {w: i for i, w in enumerate(self.words)})

    @classmethod
    def build(cls, words: Iterable[str]) -> "Vocabulary":
        return cls((PAD, *sorted(set(words) - {PAD})))

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.index

    def to_json(self) -> str:
        return json.dumps(list(self.words), separators=(",", ":"))

    def digest(self) -> str:
        return sha256_bytes(self.to_json().encode("ascii"))

    def save(self, path: Path) -> None:
        with atomic_write(path) as fh:
            fh.write(self.to_json())
            fh.write("\n")

    @classmethod
    def load(cls, path: Path) -> "Vocabulary":
        raw = read_json(path)
        if not isinstance(raw, list) or not all(isinstance(w, str) for w in raw):
            raise DataError(
                "corrupt-artifact", f"{path}: vocabulary must be a JSON array of words"
            )
        return cls(tuple(raw))


def split_words(text: str) -> list[str]:
    return text.lower().split()


def tokenize(text: str, vocab: Vocabulary) -> np.ndarray:
    words = split_words(text)
    if len(words) > MAX_TOKENS:
        raise TokenizationError(
            "sequence-too-long",
            f"{len(words)} words exceed the limit of {MAX_TOKENS}",
        )
    ids = np.zeros(MAX_TOKENS, dtype=np.int64)
    for i, w in enumerate(words):
        if w not in vocab.index:
            raise TokenizationError("oov-token", f"{w!r} is not in the vocabulary")
        ids[i] = vocab.index[w]
    return ids


def tokenize_batch(texts: Iterable[str], vocab: Vocabulary) -> np.ndarray:
    rows = [tokenize(t, vocab) for t in texts]
    return np.stack(rows) if rows else np.zeros((0, MAX_TOKENS), dtype=np.int64)


def detokenize(ids: np.ndarray, vocab: Vocabulary) -> str:
    return " ".join(vocab.words[int(i)] for i in ids if int(i) != 0)
