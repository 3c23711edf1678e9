"""Codecs between symbolic scenes, texts and answers and numeric arrays."""

from .answers import ANSWER_INDEX, answer_index, decode_answer, encode_answer
from .scene_codec import SCENE_DIM, SLOT_DIM, decode_scene, encode_scene, encode_scenes
from .text import MAX_TOKENS, PAD, Vocabulary, detokenize, tokenize, tokenize_batch

__all__ = [
    "ANSWER_INDEX",
    "MAX_TOKENS",
    "PAD",
    "SCENE_DIM",
    "SLOT_DIM",
    "Vocabulary",
    "answer_index",
    "decode_answer",
    "decode_scene",
    "detokenize",
    "encode_answer",
    "encode_scene",
    "encode_scenes",
    "tokenize",
    "tokenize_batch",
]
