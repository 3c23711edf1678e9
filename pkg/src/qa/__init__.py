"""Hypothetical question answering over learned and oracle scene updates."""

from .frontend import match_question, parse_action, parse_question
from .metrics import Cell, MetricsReport, evaluate, oracle_answer, qa_accuracy
from .pipeline import (
    PipelineBundle,
    answer,
    answer_oracle,
    answer_text_oracle,
    fallback_answer,
    read_question,
)

__all__ = [
    "Cell",
    "MetricsReport",
    "PipelineBundle",
    "answer",
    "answer_oracle",
    "answer_text_oracle",
    "evaluate",
    "fallback_answer",
    "match_question",
    "oracle_answer",
    "parse_action",
    "parse_question",
    "qa_accuracy",
    "read_question",
]
