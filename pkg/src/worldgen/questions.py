"""Question sampling with an answer-distribution guard."""

from collections import Counter

import numpy as np

from ..core.errors import ExecutionError, GenerationError
from ..core.logging import get_logger
from ..dsl.ast import Node
from ..dsl.executor import exec_question
from ..scene.model import ATTRIBUTES, Relation, Scene
from .actions import referable
from .lexicon import pick
from .scenes import random_attributes
from .templates import MAX_WORDS, QUESTION_TEMPLATES, REASONING_OF, build_question, fill

log = get_logger("worldgen.questions")

ONE_HOP = ("count", "exist", "compare_integer", "compare_attribute", "query_attribute")
TWO_HOP = ("and", "or", "not")
MAX_TRIES = 50


class AnswerGuard:
    """Running answer histogram for one split.

    After a warm-up, an answer is rejected while its count would exceed
    ``factor`` times the uniform share over the answers seen so far.
    """

    def __init__(self, factor: float = 5.0, warmup: int = 20) -> None:
        self.factor = factor
        self.warmup = warmup
        self.counts: Counter[str] = Counter()
        self.total = 0

    def admits(self, answer: str) -> bool:
        if self.total < self.warmup:
            return True
        used = len(self.counts) + (answer not in self.counts)
        return self.counts[answer] + 1 <= self.factor * (self.total + 1) / used

    def record(self, answer: str) -> None:
        self.counts[answer] += 1
        self.total += 1


def _np_attrs(rng, s: Scene, max_attrs: int = 3, exclude: tuple[str, ...] = ()) -> dict:
    """Noun-phrase attributes, usually describing some object in the scene."""
    kinds = [k for k in ATTRIBUTES if k not in exclude]
    n = int(rng.integers(0, min(max_attrs, len(kinds)) + 1))
    chosen = [kinds[int(i)] for i in rng.permutation(len(kinds))[:n]]
    if len(s) and rng.random() < 0.75:
        source = s.objects[int(rng.integers(len(s)))]
        return {k: source.attr(k) for k in chosen}
    values = random_attributes(rng)
    return {k: values[k] for k in chosen}


def _predicate(rng, s: Scene, avoid: tuple[str, ...] = ()):
    kind = pick(rng, [k for k in ATTRIBUTES if k not in avoid])
    if len(s) and rng.random() < 0.75:
        return kind, s.objects[int(rng.integers(len(s)))].attr(kind)
    return kind, random_attributes(rng)[kind]


def _draft(reasoning: str, rng, s: Scene, spatial: bool) -> tuple[str, dict] | None:
    if reasoning in ("count", "exist"):
        if spatial and len(s) >= 2 and rng.random() < 0.3:
            found = referable(rng, s)
            if found is None:
                return None
            return f"{reasoning}_relate", {
                "npl": _np_attrs(rng, s, 2),
                "np": found[1],
                "rel": pick(rng, list(Relation)),
            }
        if reasoning == "exist" and rng.random() < 0.5:
            return "exist", {"np": _np_attrs(rng, s)}
        return reasoning, {"npl": _np_attrs(rng, s)}
    if reasoning == "compare_integer":
        a, b = _np_attrs(rng, s, 2), _np_attrs(rng, s, 2)
        if a == b:
            return None
        key = pick(rng, ("greater_than", "less_than", "equal_integer"))
        return key, {"npl": a, "npl2": b}
    if reasoning == "query_attribute":
        attr = pick(rng, list(ATTRIBUTES))
        found = referable(rng, s, exclude=(attr,))
        if found is None:
            return None
        options = ["query_attribute"]
        if attr in ("material", "size"):
            options.append(f"query_{attr}")
        kind = pick(rng, options)
        return kind, {"np": found[1], "attrname": attr}
    if reasoning == "compare_attribute":
        attr = pick(rng, list(ATTRIBUTES))
        first = referable(rng, s, exclude=(attr,))
        if first is None:
            return None
        second = referable(rng, s, skip={first[0]}, exclude=(attr,))
        if second is None:
            return None
        return "compare_attribute", {"np": first[1], "np2": second[1], "attrname": attr}
    root = pick(rng, ("count", "exist"))
    if reasoning in ("and", "or"):
        p1 = _predicate(rng, s)
        p2 = _predicate(rng, s, avoid=(p1[0],) if reasoning == "and" else ())
        if p1 == p2:
            return None
        return f"{root}_{reasoning}", {"p1": p1, "p2": p2}
    if reasoning == "not":
        attrs = _np_attrs(rng, s, 2)
        p1 = _predicate(rng, s, avoid=tuple(attrs))
        return f"{root}_not", {"npl": attrs, "p1": p1}
    raise ValueError(f"unknown reasoning type {reasoning}")


def gen_question(
    rng: np.random.Generator,
    s_post: Scene,
    hops: int = 1,
    guard: AnswerGuard | None = None,
    spatial: bool = False,
    reasoning: str | None = None,
) -> tuple[str, Node, str, str]:
    """Sample (text, program, answer, reasoning type) over the post-action scene."""
    if hops not in (1, 2):
        raise ValueError("hops must be 1 or 2")
    pool = ONE_HOP if hops == 1 else TWO_HOP
    last = None
    for attempt in range(MAX_TRIES):
        kind = reasoning or pick(rng, pool)
        draft = _draft(kind, rng, s_post, spatial)
        if draft is None:
            continue
        key, bindings = draft
        program = build_question(key, bindings)
        try:
            answer = exec_question(program, s_post)
        except ExecutionError as e:
            log.debug(f"Rejected {key} question: {e.code}")
            continue
        text = fill(pick(rng, QUESTION_TEMPLATES[key]), bindings, rng)
        if len(text.split()) > MAX_WORDS:
            continue
        last = (text, program, answer, REASONING_OF[key])
        if guard is None or guard.admits(answer):
            break
        log.debug(f"Answer guard rejected {answer!r} on attempt {attempt}")
    else:
        if last is None:
            raise GenerationError(
                "degenerate-question", f"no {reasoning or 'question'} fits this scene"
            )
        log.warning(
            f"Answer guard forced to accept {last[2]!r} after {MAX_TRIES} tries"
        )
    if guard is not None:
        guard.record(last[2])
    return last
