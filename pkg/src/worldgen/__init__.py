"""Seeded synthetic data: scenes, templated action texts and questions."""

from .actions import gen_action, gen_identity
from .dataset import (
    HOPS,
    SPLITS,
    DatasetSplits,
    SampleRecord,
    VerifyReport,
    gen_dataset,
    gen_sample,
    gen_split,
    generator_vocabulary,
    load_meta,
    load_split,
    load_vocabulary,
    verify,
)
from .questions import AnswerGuard, gen_question
from .scenes import gen_scene

__all__ = [
    "HOPS",
    "SPLITS",
    "AnswerGuard",
    "DatasetSplits",
    "SampleRecord",
    "VerifyReport",
    "gen_action",
    "gen_dataset",
    "gen_identity",
    "gen_question",
    "gen_sample",
    "gen_scene",
    "gen_split",
    "generator_vocabulary",
    "load_meta",
    "load_split",
    "load_vocabulary",
    "verify",
]
