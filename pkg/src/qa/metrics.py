"""Split scoring: accuracy by action type and reasoning type."""

from dataclasses import dataclass, field
from typing import Literal, Sequence

from ..arl.predict import predict_scenes
from ..core.errors import UnparseableTextError
from ..core.logging import get_logger
from ..dsl.ast import ACTION_TYPES, Node
from ..dsl.executor import exec_action, exec_question
from ..dsl.parser import parse_program
from ..scene.io import scene_to_dict
from ..scene.model import Scene
from ..scene.spatial import scene_equal
from ..worldgen.dataset import SampleRecord
from .frontend import parse_action, parse_question
from .pipeline import PipelineBundle, QuestionMode, answer_on, read_question

log = get_logger("qa.metrics")

Mode = Literal["learned", "oracle"]
SCENE_TOLERANCE = 0.5
REASONING_ORDER = (
    "count",
    "exist",
    "compare_integer",
    "compare_attribute",
    "query_attribute",
    "and",
    "or",
    "not",
)


@dataclass
class Cell:
    correct: int = 0
    total: int = 0

    def add(self, ok: bool) -> None:
        self.correct += int(ok)
        self.total += 1

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else 0.0

    def to_dict(self) -> dict:
        return {"correct": self.correct, "total": self.total, "accuracy": self.accuracy}


def _reasoning_order(key: str) -> int:
    return (REASONING_ORDER + (key,)).index(key)


def _cell_order(key: str) -> tuple:
    parts = key.split("+")
    ranks = [
        ACTION_TYPES.index(p) if p in ACTION_TYPES else len(ACTION_TYPES) for p in parts
    ]
    return (len(parts), ranks, key)


@dataclass
class MetricsReport:
    split: str
    mode: str
    overall: Cell = field(default_factory=Cell)
    by_action: dict[str, Cell] = field(default_factory=dict)
    by_reasoning: dict[str, Cell] = field(default_factory=dict)
    scene: Cell = field(default_factory=Cell)
    coupling_exceptions: int = 0
    unparseable: int = 0

    def record(self, action_cell: str, reasoning: str, ok: bool) -> None:
        self.overall.add(ok)
        self.by_action.setdefault(action_cell, Cell()).add(ok)
        self.by_reasoning.setdefault(reasoning, Cell()).add(ok)

    def to_dict(self) -> dict:
        return {
            "split": self.split,
            "mode": self.mode,
            "overall": self.overall.to_dict(),
            "by_action": {
                k: self.by_action[k].to_dict()
                for k in sorted(self.by_action, key=_cell_order)
            },
            "by_reasoning": {
                k: self.by_reasoning[k].to_dict()
                for k in sorted(self.by_reasoning, key=_reasoning_order)
            },
            "scene": self.scene.to_dict(),
            "coupling_exceptions": self.coupling_exceptions,
            "unparseable": self.unparseable,
        }

    def render_table(self) -> str:
        """Plain-text table of :meth:`to_dict`, printed to one decimal."""
        data = self.to_dict()
        lines = [f"split {data['split']}  mode {data['mode']}", ""]

        def row(label: str, cell: dict) -> str:
            pct = 100.0 * cell["accuracy"]
            return f"  {label:<20} {pct:6.1f}  ({cell['correct']}/{cell['total']})"

        lines.append(row("overall", data["overall"]))
        lines.append(row("scene", data["scene"]))
        lines.append("")
        lines.append("by action type")
        lines.extend(row(k, c) for k, c in data["by_action"].items())
        lines.append("")
        lines.append("by reasoning type")
        lines.extend(row(k, c) for k, c in data["by_reasoning"].items())
        return "\n".join(lines) + "\n"


def _question_program(r: SampleRecord, question_mode: QuestionMode) -> Node:
    if question_mode == "oracle-program" and r.question_program is not None:
        return read_question(r.question_program, question_mode)
    return read_question(r.question_text, "template-parse")


def _truth_scene(r: SampleRecord) -> Scene:
    if r.scene_post is not None:
        return r.scene_post
    return exec_action(parse_action(r.action_text), r.scene_pre)


def oracle_answer(r: SampleRecord) -> tuple[str, Scene]:
    """Ground-truth path; blind records are read through the text front-end."""
    if r.blind:
        post = exec_action(parse_action(r.action_text), r.scene_pre)
        return exec_question(parse_question(r.question_text), post), post
    post = exec_action(parse_program(r.action_program, expect="action"), r.scene_pre)
    question = parse_program(r.question_program, expect="question")
    return exec_question(question, post), post


def evaluate(
    records: Sequence[SampleRecord],
    split: str,
    mode: Mode,
    bundle: PipelineBundle | None = None,
    question_mode: QuestionMode | None = None,
) -> tuple[MetricsReport, list[dict]]:
    """Score a split. The question front-end defaults to the bundle's."""
    report = MetricsReport(split=split, mode=mode)
    predictions: list[dict] = []
    if mode == "learned":
        if bundle is None:
            raise ValueError("learned evaluation needs a model bundle")
        question_mode = question_mode or bundle.question_mode
        predicted = predict_scenes(
            [r.scene_pre for r in records],
            [r.action_text for r in records],
            bundle.stage1,
            bundle.stage2,
            bundle.vocab,
        )
    for i, r in enumerate(records):
        if mode == "oracle":
            got, scene_pred = oracle_answer(r)
            report.scene.add(True)
        else:
            scene_pred = predicted[i]
            truth = _truth_scene(r)
            scene_ok = scene_equal(scene_pred, truth, SCENE_TOLERANCE)
            report.scene.add(scene_ok)
            try:
                question = _question_program(r, question_mode)
                got = answer_on(question, scene_pred)
            except UnparseableTextError:
                report.unparseable += 1
                got = None
            if scene_ok and got != r.answer:
                report.coupling_exceptions += 1
        report.record(r.action_cell(), r.reasoning_type, got == r.answer)
        predictions.append(
            {"id": r.id, "answer": got, "scene_pred": scene_to_dict(scene_pred)}
        )
    log.info(
        f"Evaluated {len(records)} {split} records in {mode} mode: "
        f"accuracy {100.0 * report.overall.accuracy:.1f}, "
        f"scene {100.0 * report.scene.accuracy:.1f}"
    )
    return report, predictions


def qa_accuracy(records: Sequence[SampleRecord], bundle: PipelineBundle) -> float:
    report, _ = evaluate(records, "subset", "learned", bundle)
    return report.overall.accuracy
