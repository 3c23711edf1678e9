"""Learned and oracle answering paths."""

from dataclasses import dataclass
from pathlib import Path
from typing import Literal

from ..arl.checkpoint import load_stage1, load_stage2
from ..arl.models import Stage1Model, Stage2Model
from ..arl.predict import predict_scene
from ..core.errors import ExecutionError, ModelMismatchError
from ..core.logging import get_logger
from ..dsl.ast import Kind, Node
from ..dsl.executor import exec_action, exec_question
from ..dsl.parser import parse_program
from ..scene.model import ATTRIBUTES, Scene
from ..tensorize import Vocabulary
from .frontend import parse_action, parse_question

log = get_logger("qa.pipeline")

QuestionMode = Literal["oracle-program", "template-parse"]


@dataclass(frozen=True)
class PipelineBundle:
    stage1: Stage1Model
    stage2: Stage2Model
    vocab: Vocabulary
    question_mode: QuestionMode = "template-parse"

    def __post_init__(self) -> None:
        if self.stage1.action_dim != self.stage2.action_dim:
            raise ModelMismatchError(
                "action-dim",
                f"decoder takes L={self.stage1.action_dim}, "
                f"text encoder emits L={self.stage2.action_dim}",
            )
        if self.stage2.vocab_size != len(self.vocab):
            raise ModelMismatchError(
                "vocab-size", "text encoder and vocabulary sizes differ"
            )

    @classmethod
    def load(
        cls,
        model_dir: Path,
        vocab: Vocabulary,
        question_mode: QuestionMode = "template-parse",
        stage: str = "stage2",
    ) -> "PipelineBundle":
        m1 = load_stage1(model_dir)
        m2 = load_stage2(model_dir, m1, vocab, stage)
        log.info(
            f"Loaded bundle from {model_dir} "
            f"(L={m1.action_dim}, question mode {question_mode})"
        )
        return cls(m1, m2, vocab, question_mode)


def _program(p: Node | str, expect: str) -> Node:
    return p if isinstance(p, Node) else parse_program(p, expect=expect)


def fallback_answer(question: Node) -> str:
    """Answer used when a question has no unique referent in a predicted scene."""
    if question.kind is Kind.INT:
        return "0"
    if question.kind is Kind.BOOL:
        return "no"
    return list(ATTRIBUTES[question.op.removeprefix("query_")])[0].value


def answer_on(question: Node, s: Scene) -> str:
    try:
        return exec_question(question, s)
    except ExecutionError:
        return fallback_answer(question)


def read_question(question: str, question_mode: QuestionMode) -> Node:
    """Question program under the selected front-end: program text or templated text."""
    if question_mode == "oracle-program":
        return parse_program(question, expect="question")
    return parse_question(question)


def answer(s: Scene, action_text: str, question: str, b: PipelineBundle) -> str:
    """Learned path: predict the post-action scene, then execute the question on it.

    ``question`` is read by the bundle's front-end, so it is a program in
    ``oracle-program`` mode and templated text otherwise.
    """
    program = read_question(question, b.question_mode)
    predicted = predict_scene(s, action_text, b.stage1, b.stage2, b.vocab)
    return answer_on(program, predicted)


def answer_oracle(
    s: Scene, action_program: Node | str, question_program: Node | str
) -> str:
    post = exec_action(_program(action_program, "action"), s)
    return exec_question(_program(question_program, "question"), post)


def answer_text_oracle(
    s: Scene, action_text: str, question_text: str
) -> tuple[str, Node, Node]:
    """Oracle path driven by texts through the template front-end."""
    action = parse_action(action_text)
    question = parse_question(question_text)
    return answer_oracle(s, action, question), action, question
