"""Dataset assembly: per-split sampling, JSONL emission, metadata and self-check."""

import hashlib
import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Any

import numpy as np

from ..core.artifacts import read_json, read_jsonl, write_json, write_jsonl
from ..core.config import GenConfig
from ..core.errors import DataError, EngineError, GenerationError
from ..core.logging import get_logger
from ..dsl.ast import ACTION_TYPES, action_types
from ..dsl.executor import exec_action, exec_question
from ..dsl.parser import parse_program
from ..dsl.printer import render_program
from ..dsl.reference import reference_answer
from ..scene.io import scene_from_dict, scene_to_dict
from ..scene.model import Scene
from ..scene.spatial import scene_equal
from ..tensorize.text import Vocabulary
from .actions import gen_action
from .questions import AnswerGuard, gen_question
from .scenes import gen_scene
from .templates import template_words

log = get_logger("worldgen.dataset")

SPLITS = ("train", "val", "test_ordinary", "test_2hop_ta", "test_2hop_qh")
# (action hops, question hops)
HOPS: dict[str, tuple[int, int]] = {
    "train": (1, 1),
    "val": (1, 1),
    "test_ordinary": (1, 1),
    "test_2hop_ta": (2, 1),
    "test_2hop_qh": (1, 2),
}
ORACLE_FIELDS = ("action_program", "question_program", "scene_post")
LOGICAL = ("and", "or", "not")
MAX_RECORD_ATTEMPTS = 100

DatasetSplits = dict[str, list["SampleRecord"]]


@dataclass(frozen=True)
class SampleRecord:
    id: str
    scene_pre: Scene
    action_text: str
    action_program: str | None
    question_text: str
    question_program: str | None
    answer: str
    scene_post: Scene | None
    split: str
    action_types: tuple[str, ...]
    reasoning_type: str

    @property
    def blind(self) -> bool:
        return self.action_program is None

    def action_cell(self) -> str:
        """Report cell: the action type, or ``a+b`` for chained actions."""
        if len(self.action_types) == 1:
            return self.action_types[0]
        return "+".join(sorted(self.action_types, key=ACTION_TYPES.index))

    def to_dict(self, blind: bool = False) -> dict[str, Any]:
        raw = {
            "id": self.id,
            "scene_pre": scene_to_dict(self.scene_pre),
            "action_text": self.action_text,
            "action_program": self.action_program,
            "question_text": self.question_text,
            "question_program": self.question_program,
            "answer": self.answer,
            "scene_post": (
                None if self.scene_post is None else scene_to_dict(self.scene_post)
            ),
            "split": self.split,
            "action_types": list(self.action_types),
            "reasoning_type": self.reasoning_type,
        }
        if blind:
            for key in ORACLE_FIELDS:
                raw.pop(key)
        return raw

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "SampleRecord":
        try:
            post = raw.get("scene_post")
            return cls(
                id=raw["id"],
                scene_pre=scene_from_dict(raw["scene_pre"]),
                action_text=raw["action_text"],
                action_program=raw.get("action_program"),
                question_text=raw["question_text"],
                question_program=raw.get("question_program"),
                answer=raw["answer"],
                scene_post=None if post is None else scene_from_dict(post),
                split=raw["split"],
                action_types=tuple(raw["action_types"]),
                reasoning_type=raw["reasoning_type"],
            )
        except KeyError as e:
            raise DataError("corrupt-artifact", f"record is missing field {e}") from e


def generator_vocabulary() -> Vocabulary:
    return Vocabulary.build(template_words())


def _quota(
    rng: np.random.Generator, n: int, action_hops: int, balance: bool
) -> list[tuple[str, ...] | None]:
    if not balance:
        return [None] * n
    if action_hops == 1:
        cells = [(t,) for t in ACTION_TYPES]
    else:
        cells = list(combinations(ACTION_TYPES, 2))
    plan = [cells[i % len(cells)] for i in range(n)]
    return [plan[int(i)] for i in rng.permutation(n)]


def _record(
    rng: np.random.Generator,
    split: str,
    index: int,
    types: tuple[str, ...] | None,
    guard: AnswerGuard,
    spatial: bool,
) -> SampleRecord:
    action_hops, question_hops = HOPS[split]
    if types is not None and action_hops == 2 and rng.random() < 0.5:
        types = types[::-1]
    for _ in range(MAX_RECORD_ATTEMPTS):
        try:
            scene = gen_scene(rng)
            action_text, action = gen_action(rng, scene, action_hops, types)
            post = exec_action(action, scene)
            question_text, question, answer, reasoning = gen_question(
                rng, post, question_hops, guard=guard, spatial=spatial
            )
        except GenerationError as e:
            log.debug(f"Resampling {split}[{index}]: {e.code}")
            continue
        return SampleRecord(
            id=f"{split}-{index:06d}",
            scene_pre=scene,
            action_text=action_text,
            action_program=render_program(action),
            question_text=question_text,
            question_program=render_program(question),
            answer=answer,
            scene_post=post,
            split=split,
            action_types=tuple(action_types(action)),
            reasoning_type=reasoning,
        )
    raise GenerationError(
        "no-referent", f"{split}[{index}] failed after {MAX_RECORD_ATTEMPTS} attempts"
    )


def gen_split(cfg: GenConfig, split: str) -> list[SampleRecord]:
    """Records of one split; each record draws from its own seeded substream."""
    split_idx = SPLITS.index(split)
    n = cfg.split_sizes()[split]
    plan = _quota(
        np.random.default_rng([cfg.seed, split_idx]), n, HOPS[split][0], cfg.balance
    )
    # the guard makes acceptance order-dependent, so records are drawn in id order
    guard = AnswerGuard()
    return [
        _record(
            np.random.default_rng([cfg.seed, split_idx, i]),
            split,
            i,
            plan[i],
            guard,
            cfg.spatial_questions,
        )
        for i in range(n)
    ]


def gen_sample(
    seed: int, action_hops: int = 1, question_hops: int = 1, spatial: bool = False
) -> SampleRecord:
    """One standalone record, labelled with the split its hop counts belong to."""
    by_hops = {(1, 1): "train", (2, 1): "test_2hop_ta", (1, 2): "test_2hop_qh"}
    split = by_hops.get((action_hops, question_hops))
    if split is None:
        raise GenerationError(
            "bad-hops", "either the action or the question may have two hops, not both"
        )
    rng = np.random.default_rng([seed])
    return _record(rng, split, 0, None, AnswerGuard(), spatial)


def uniqueness_ratio(splits: DatasetSplits) -> float:
    pairs = [
        (r.action_text, r.question_text)
        for records in splits.values()
        for r in records
    ]
    return len(set(pairs)) / len(pairs) if pairs else 1.0


def _gen_fingerprint(cfg: GenConfig) -> str:
    canon = json.dumps(cfg.model_dump(mode="json"), sort_keys=True)
    return hashlib.sha256(canon.encode("ascii")).hexdigest()


def gen_dataset(cfg: GenConfig, out_dir: Path) -> DatasetSplits:
    out_dir = Path(out_dir)
    vocab = generator_vocabulary()
    splits: DatasetSplits = {}
    for split in SPLITS:
        records = gen_split(cfg, split)
        blind = cfg.blind_tests and split.startswith("test_")
        path = out_dir / f"{split}.jsonl"
        try:
            write_jsonl(path, (r.to_dict(blind=blind) for r in records))
        except OSError as e:
            raise DataError("write-failed", f"{path}: {e}") from e
        log.info(f"Wrote {len(records)} {split} records to {path}")
        splits[split] = records
    vocab.save(out_dir / "vocab.json")
    meta = {
        "gen_fingerprint": _gen_fingerprint(cfg),
        "seed": cfg.seed,
        "counts": {s: len(r) for s, r in splits.items()},
        "blind_tests": cfg.blind_tests,
        "uniqueness_ratio": uniqueness_ratio(splits),
        "vocab_hash": vocab.digest(),
        "vocab_size": len(vocab),
    }
    write_json(out_dir / "meta.json", meta)
    log.info(
        f"Dataset uniqueness ratio {meta['uniqueness_ratio']:.3f}, "
        f"vocabulary of {len(vocab)} words"
    )
    return splits


def load_split(data_dir: Path, split: str) -> list[SampleRecord]:
    if split not in SPLITS:
        raise DataError("unknown-split", f"{split!r} is not one of {', '.join(SPLITS)}")
    rows = read_jsonl(Path(data_dir) / f"{split}.jsonl")
    return [SampleRecord.from_dict(raw) for raw in rows]


def load_vocabulary(data_dir: Path) -> Vocabulary:
    return Vocabulary.load(Path(data_dir) / "vocab.json")


def load_meta(data_dir: Path) -> dict:
    return read_json(Path(data_dir) / "meta.json")


@dataclass
class VerifyReport:
    checked: int = 0
    skipped_blind: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_record(r: SampleRecord) -> list[str]:
    """Oracle-consistency problems of one record (empty when sound)."""
    problems = []
    try:
        action = parse_program(r.action_program, expect="action")
        question = parse_program(r.question_program, expect="question")
        post = exec_action(action, r.scene_pre)
        if not scene_equal(post, r.scene_post, 1e-9):
            problems.append("action program does not reproduce scene_post")
        if exec_question(question, r.scene_post) != r.answer:
            problems.append("question program does not reproduce the answer")
        if reference_answer(question, r.scene_post) != r.answer:
            problems.append("reference evaluator disagrees with the answer")
        if tuple(action_types(action)) != r.action_types:
            problems.append("action_types do not match the program")
    except EngineError as e:
        problems.append(f"{e.code}: {e.message}")
    expected_hops = HOPS.get(r.split, (1, 1))[0]
    if len(r.action_types) != expected_hops:
        problems.append(
            f"expected {expected_hops} action types, found {len(r.action_types)}"
        )
    if r.split == "test_2hop_qh" and r.reasoning_type not in LOGICAL:
        problems.append(f"2-hop question uses {r.reasoning_type}")
    return problems


def verify(data_dir: Path) -> VerifyReport:
    report = VerifyReport()
    for split in SPLITS:
        path = Path(data_dir) / f"{split}.jsonl"
        if not path.exists():
            continue
        for r in load_split(data_dir, split):
            if r.blind:
                report.skipped_blind += 1
                continue
            report.checked += 1
            report.failures.extend(f"{r.id}: {p}" for p in verify_record(r))
    log.info(
        f"Verified {report.checked} records, {len(report.failures)} failures, "
        f"{report.skipped_blind} blind"
    )
    return report
