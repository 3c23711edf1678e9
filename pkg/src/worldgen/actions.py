"""Action sampling: referring expressions, placements and 2-hop chaining."""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..core.errors import ExecutionError, GenerationError
from ..core.logging import get_logger
from ..dsl.ast import ACTION_TYPES, Node, chain_attributes
from ..dsl.executor import exec_action
from ..scene.model import ATTRIBUTES, N_MAX, Relation, Scene
from .lexicon import pick
from .scenes import random_attributes
from .templates import (
    ACTION_TEMPLATES,
    IT,
    MAX_WORDS,
    Place,
    build_action,
    fill,
    focus_of,
)

log = get_logger("worldgen.actions")

MAX_ATTEMPTS = 30
PRONOUN_PROBABILITY = 0.5
PLANAR = (Relation.LEFT, Relation.RIGHT, Relation.FRONT, Relation.BEHIND)
# all attribute subsets, smallest first
_SUBSETS = tuple(
    c for r in range(len(ATTRIBUTES) + 1) for c in combinations(ATTRIBUTES, r)
)


@dataclass(frozen=True)
class Draft:
    kind: str
    bindings: dict
    program: Node


def matching(s: Scene, attrs: dict) -> list[int]:
    return [
        i
        for i, o in enumerate(s.objects)
        if all(o.attr(k) == v for k, v in attrs.items())
    ]


def refexp(
    rng: np.random.Generator, s: Scene, index: int, exclude: tuple[str, ...] = ()
) -> dict | None:
    """A random attribute subset that picks out exactly object ``index``."""
    obj = s.objects[index]
    unique = []
    for subset in _SUBSETS:
        if any(k in exclude for k in subset):
            continue
        attrs = {k: obj.attr(k) for k in subset}
        if matching(s, attrs) == [index]:
            unique.append(attrs)
    return pick(rng, unique) if unique else None


def referable(
    rng: np.random.Generator,
    s: Scene,
    skip: set[int] = frozenset(),
    exclude: tuple[str, ...] = (),
) -> tuple[int, dict] | None:
    for i in rng.permutation(len(s)):
        i = int(i)
        if i in skip:
            continue
        attrs = refexp(rng, s, i, exclude)
        if attrs is not None:
            return i, attrs
    return None


def _target(rng, s: Scene, it: Node | None) -> tuple[object, int] | None:
    if it is not None:
        hits = matching(s, chain_attributes(it))
        return (IT, hits[0]) if len(hits) == 1 else None
    found = referable(rng, s)
    return None if found is None else (found[1], found[0])


def _place(rng, s: Scene, skip: set[int], ground_ok: bool) -> Place | None:
    ops = ["relative", "on"] + (["ground"] if ground_ok else [])
    op = pick(rng, ops)
    if op == "ground":
        return Place("ground")
    found = referable(rng, s, skip)
    if found is None:
        return None
    return Place(op, pick(rng, PLANAR) if op == "relative" else None, found[1])


def _draft(kind: str, rng, s: Scene, it: Node | None) -> Draft | None:
    if kind == "add":
        if len(s) >= N_MAX:
            return None
        place = _place(rng, s, set(), ground_ok=True)
        if place is None:
            return None
        b = {"new": random_attributes(rng), "place": place}
        return Draft("add", b, build_action("add", b))
    target = _target(rng, s, it)
    if target is None:
        return None
    binding, index = target
    if kind == "remove":
        b = {"target": binding}
        return Draft("remove", b, build_action("remove", b, it))
    if kind == "change":
        attr = pick(rng, list(ATTRIBUTES))
        current = s.objects[index].attr(attr)
        value = pick(rng, [v for v in ATTRIBUTES[attr] if v != current])
        b = {"target": binding, attr: value}
        return Draft(f"change_{attr}", b, build_action(f"change_{attr}", b, it))
    if kind == "move":
        place = _place(rng, s, {index}, ground_ok=s.objects[index].z > 0)
        if place is None:
            return None
        b = {"target": binding, "place": place}
        return Draft("move", b, build_action("move", b, it))
    raise ValueError(f"unknown action type {kind}")


def _patterns(d: Draft) -> tuple:
    patterns = ACTION_TEMPLATES[d.kind]
    if d.kind == "add" and d.bindings["place"].op != "ground":
        patterns = tuple(p for p in patterns if "{place}" in p)
    return patterns


def _sample_one(kind: str, rng, s: Scene, it: Node | None = None) -> tuple[str, Node]:
    for _ in range(MAX_ATTEMPTS):
        d = _draft(kind, rng, s, it)
        if d is None:
            break
        try:
            exec_action(d.program, s)
        except ExecutionError as e:
            log.debug(f"Rejected {kind} draft: {e.code}")
            continue
        return fill(pick(rng, _patterns(d)), d.bindings, rng), d.program
    raise GenerationError(
        "no-referent", f"scene with {len(s)} objects cannot support a {kind} action"
    )


def gen_action(
    rng: np.random.Generator,
    s: Scene,
    hops: int = 1,
    types: tuple[str, ...] | None = None,
) -> tuple[str, Node]:
    """Sample an action text and its program; 2-hop actions chain two distinct types."""
    if hops not in (1, 2):
        raise ValueError("hops must be 1 or 2")
    if types is None:
        order = rng.permutation(len(ACTION_TYPES))[:hops]
        types = tuple(ACTION_TYPES[int(i)] for i in order)
    if len(types) != hops or len(set(types)) != hops:
        raise ValueError(f"need {hops} distinct action types, got {types}")
    for _ in range(MAX_ATTEMPTS):
        text, first = _sample_one(types[0], rng, s)
        if hops == 1:
            if len(text.split()) <= MAX_WORDS:
                return text, first
            continue
        mid = exec_action(first, s)
        focus = focus_of(first)
        it = None
        if (
            focus is not None
            and types[1] != "add"
            and len(matching(mid, chain_attributes(focus))) == 1
            and rng.random() < PRONOUN_PROBABILITY
        ):
            it = focus
        try:
            second_text, second = _sample_one(types[1], rng, mid, it)
        except GenerationError:
            continue
        text = f"{text} then {second_text}"
        if len(text.split()) <= MAX_WORDS:
            return text, Node("seq", (first, second))
    raise GenerationError(
        "no-referent", f"could not chain {' then '.join(types)} on this scene"
    )


def gen_identity(rng: np.random.Generator) -> tuple[str, Node]:
    return fill(pick(rng, ACTION_TEMPLATES["noop"]), {}, rng), Node("noop")
