"""Template bank shared by the generator and the text front-end.

A template is a word pattern with ``{slot}`` placeholders. The generator fills
slots from chosen bindings; the front-end matches a text against every
pattern and rebuilds the same bindings, so one table drives both directions
and generated text always parses back to the program it was made from.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable

import numpy as np

from ..dsl.ast import Node, chain_attributes, filter_chain
from ..scene.model import Relation
from .lexicon import (
    ADJECTIVES,
    ATTRIBUTE_NAMES,
    GROUND_PHRASES,
    PLURAL,
    PREDICATES,
    RELATION_PHRASES,
    SINGULAR,
    parse_np,
    pick,
    realize_np,
    realize_value,
)

MAX_WORDS = 24


class _It:
    def __repr__(self) -> str:
        return "IT"


IT = _It()


@dataclass(frozen=True)
class Place:
    op: str  # relative | on | ground
    rel: Relation | None = None
    anchor: dict | None = None


def _p(text: str) -> tuple[str, ...]:
    return tuple(text.split())


ACTION_TEMPLATES: dict[str, tuple[tuple[str, ...], ...]] = {
    "add": tuple(
        map(
            _p,
            (
                "add a {new} {place}",
                "put a {new} {place}",
                "place a {new} {place}",
                "insert a {new} {place}",
                "add a {new}",
                "insert a {new} into the scene",
            ),
        )
    ),
    "remove": tuple(
        map(
            _p,
            (
                "remove {target}",
                "take away {target}",
                "delete {target}",
                "get rid of {target}",
                "eliminate {target}",
                "throw away {target}",
            ),
        )
    ),
    "change_color": tuple(
        map(
            _p,
            (
                "paint {target} {color}",
                "color {target} {color}",
                "change the color of {target} to {color}",
                "make {target} {color}",
            ),
        )
    ),
    "change_material": tuple(
        map(
            _p,
            (
                "make {target} {material}",
                "change the material of {target} to {material}",
                "turn {target} {material}",
            ),
        )
    ),
    "change_size": tuple(
        map(
            _p,
            (
                "make {target} {size}",
                "change the size of {target} to {size}",
                "resize {target} to {size}",
            ),
        )
    ),
    "change_shape": tuple(
        map(
            _p,
            (
                "change the shape of {target} to a {shape}",
                "turn {target} into a {shape}",
                "reshape {target} into a {shape}",
            ),
        )
    ),
    "move": tuple(
        map(
            _p,
            (
                "move {target} {place}",
                "shift {target} {place}",
                "put {target} {place}",
                "place {target} {place}",
                "slide {target} {place}",
                "relocate {target} {place}",
            ),
        )
    ),
    "noop": tuple(
        map(
            _p,
            (
                "do nothing",
                "leave the scene unchanged",
                "keep everything as it is",
            ),
        )
    ),
}

QUESTION_TEMPLATES: dict[str, tuple[tuple[str, ...], ...]] = {
    "count": tuple(
        map(
            _p,
            (
                "how many {npl} are there",
                "what number of {npl} are there",
                "how many {npl} are in the scene",
                "count the {npl}",
            ),
        )
    ),
    "exist": tuple(
        map(
            _p,
            (
                "are there any {npl}",
                "is there a {np}",
                "does a {np} exist",
                "are any {npl} present",
            ),
        )
    ),
    "query_attribute": tuple(
        map(
            _p,
            (
                "what {attrname} is the {np}",
                "what is the {attrname} of the {np}",
            ),
        )
    ),
    "query_material": (_p("what is the {np} made of"),),
    "query_size": (_p("how big is the {np}"),),
    "compare_attribute": tuple(
        map(
            _p,
            (
                "does the {np} have the same {attrname} as the {np2}",
                "is the {np} the same {attrname} as the {np2}",
                "do the {np} and the {np2} have the same {attrname}",
                "are the {np} and the {np2} the same {attrname}",
            ),
        )
    ),
    "greater_than": tuple(
        map(
            _p,
            (
                "are there more {npl} than {npl2}",
                "is the number of {npl} greater than the number of {npl2}",
            ),
        )
    ),
    "less_than": tuple(
        map(
            _p,
            (
                "are there fewer {npl} than {npl2}",
                "is the number of {npl} less than the number of {npl2}",
            ),
        )
    ),
    "equal_integer": tuple(
        map(
            _p,
            (
                "are there as many {npl} as {npl2}",
                "is the number of {npl} equal to the number of {npl2}",
            ),
        )
    ),
    "count_relate": (_p("how many {npl} are {rel} the {np}"),),
    "exist_relate": (_p("are there any {npl} {rel} the {np}"),),
    "count_or": (_p("how many objects|things are either {p1} or {p2}"),),
    "exist_or": (_p("are there any objects|things that are either {p1} or {p2}"),),
    "count_and": (_p("how many objects|things are both {p1} and {p2}"),),
    "exist_and": (_p("are there any objects|things that are both {p1} and {p2}"),),
    "count_not": (_p("how many {npl} are not {p1}"),),
    "exist_not": (_p("are there any {npl} that are not {p1}"),),
}

REASONING_OF: dict[str, str] = {
    "count": "count",
    "count_relate": "count",
    "exist": "exist",
    "exist_relate": "exist",
    "query_attribute": "query_attribute",
    "query_material": "query_attribute",
    "query_size": "query_attribute",
    "compare_attribute": "compare_attribute",
    "greater_than": "compare_integer",
    "less_than": "compare_integer",
    "equal_integer": "compare_integer",
    "count_or": "or",
    "exist_or": "or",
    "count_and": "and",
    "exist_and": "and",
    "count_not": "not",
    "exist_not": "not",
}

# ---------------------------------------------------------------------------
# slot parsing
# ---------------------------------------------------------------------------


def _parse_place(words: list[str]) -> Place | None:
    if tuple(words) in GROUND_PHRASES:
        return Place("ground")
    for rel, phrases in RELATION_PHRASES.items():
        for phrase in phrases:
            n = len(phrase)
            if tuple(words[:n]) == phrase and words[n : n + 1] == ["the"]:
                anchor = parse_np(words[n + 1 :])
                if anchor is not None:
                    if rel is Relation.ON:
                        return Place("on", None, anchor)
                    return Place("relative", rel, anchor)
    return None


def _parse_rel(words: list[str]) -> Relation | None:
    for rel, phrases in RELATION_PHRASES.items():
        if tuple(words) in phrases:
            return rel
    return None


def _single(table: dict, kind: str | None = None):
    def parse(words: list[str]):
        if len(words) != 1 or words[0] not in table:
            return None
        hit = table[words[0]]
        if kind is not None and hit[0] != kind:
            return None
        return hit[1] if kind is not None else hit

    return parse


def _parse_target(words: list[str]):
    if words == ["it"]:
        return IT
    if words[:1] == ["the"]:
        return parse_np(words[1:])
    return None


def _parse_new(words: list[str]):
    attrs = parse_np(words)
    return attrs if attrs is not None and len(attrs) == 4 else None


def _parse_shape(words: list[str]):
    if len(words) == 1 and SINGULAR.get(words[0]) is not None:
        return SINGULAR[words[0]]
    return None


def _parse_attrname(words: list[str]):
    return words[0] if len(words) == 1 and words[0] in ATTRIBUTE_NAMES else None


SLOT_PARSERS: dict[str, Callable[[list[str]], Any]] = {
    "target": _parse_target,
    "new": _parse_new,
    "np": parse_np,
    "np2": parse_np,
    "npl": lambda w: parse_np(w, plural=True),
    "npl2": lambda w: parse_np(w, plural=True),
    "p1": _single(PREDICATES),
    "p2": _single(PREDICATES),
    "color": _single(ADJECTIVES, "color"),
    "material": _single(ADJECTIVES, "material"),
    "size": _single(ADJECTIVES, "size"),
    "shape": _parse_shape,
    "attrname": _parse_attrname,
    "rel": _parse_rel,
    "place": _parse_place,
}


def match(pattern: tuple[str, ...], words: list[str]) -> dict | None:
    """Backtracking match of a pattern against a word list."""

    def go(pi: int, wi: int, bound: dict) -> dict | None:
        if pi == len(pattern):
            return bound if wi == len(words) else None
        tok = pattern[pi]
        if tok.startswith("{"):
            name = tok[1:-1]
            parser = SLOT_PARSERS[name]
            rest = len(pattern) - pi - 1
            for end in range(wi + 1, len(words) - rest + 1):
                value = parser(words[wi:end])
                if value is None:
                    continue
                found = go(pi + 1, end, {**bound, name: value})
                if found is not None:
                    return found
            return None
        if wi >= len(words):
            return None
        options = tok.split("|")
        if tok == "a":
            options = ["a", "an"]
        if words[wi] not in options:
            return None
        return go(pi + 1, wi + 1, bound)

    return go(0, 0, {})


# ---------------------------------------------------------------------------
# slot realization
# ---------------------------------------------------------------------------


def _realize_place(place: Place, rng: np.random.Generator) -> list[str]:
    if place.op == "ground":
        return list(pick(rng, GROUND_PHRASES))
    rel = Relation.ON if place.op == "on" else place.rel
    return [*pick(rng, RELATION_PHRASES[rel]), "the", *realize_np(place.anchor, rng)]


def realize_slot(name: str, value: Any, rng: np.random.Generator) -> list[str]:
    if name == "target":
        return ["it"] if value is IT else ["the", *realize_np(value, rng)]
    if name in ("new", "np", "np2"):
        return realize_np(value, rng)
    if name in ("npl", "npl2"):
        return realize_np(value, rng, plural=True)
    if name in ("p1", "p2"):
        kind, v = value
        return [realize_value(v, rng)]
    if name in ("color", "material", "size", "shape"):
        return [realize_value(value, rng)]
    if name == "attrname":
        return [value]
    if name == "rel":
        return list(pick(rng, RELATION_PHRASES[value]))
    if name == "place":
        return _realize_place(value, rng)
    raise KeyError(name)


def fill(pattern: tuple[str, ...], bindings: dict, rng: np.random.Generator) -> str:
    words: list[str] = []
    for tok in pattern:
        if tok.startswith("{"):
            words.extend(realize_slot(tok[1:-1], bindings[tok[1:-1]], rng))
        else:
            words.append(pick(rng, tok.split("|")))
    for i, w in enumerate(words[:-1]):
        if w == "a" and words[i + 1][0] in "aeiou":
            words[i] = "an"
    return " ".join(words)


def template_words() -> set[str]:
    """Every word any template can produce."""
    words = {"it", "then", "an", "the"}
    for bank in (ACTION_TEMPLATES, QUESTION_TEMPLATES):
        for patterns in bank.values():
            for pattern in patterns:
                for tok in pattern:
                    if not tok.startswith("{"):
                        words.update(tok.split("|"))
    words.update(ADJECTIVES)
    words.update(w for w in SINGULAR)
    words.update(w for w in PLURAL)
    words.update(ATTRIBUTE_NAMES)
    for phrases in (*RELATION_PHRASES.values(), GROUND_PHRASES):
        for phrase in phrases:
            words.update(phrase)
    return words


# ---------------------------------------------------------------------------
# bindings -> programs
# ---------------------------------------------------------------------------


def place_node(place: Place) -> Node:
    if place.op == "ground":
        return Node("ground")
    if place.op == "on":
        return Node("on", (filter_chain(place.anchor),))
    return Node("relative", (place.rel, filter_chain(place.anchor)))


def _target(value, focus: Node | None) -> Node:
    if value is IT:
        if focus is None:
            raise LookupError("pronoun without an antecedent")
        return focus
    return filter_chain(value)


def build_action(kind: str, b: dict, focus: Node | None = None) -> Node:
    if kind == "noop":
        return Node("noop")
    if kind == "add":
        new = b["new"]
        attrs = Node(
            "attrs", (new["size"], new["color"], new["material"], new["shape"])
        )
        return Node("add_object", (attrs, place_node(b.get("place", Place("ground")))))
    target = _target(b["target"], focus)
    if kind == "remove":
        return Node("remove", (target,))
    if kind == "move":
        return Node("move", (target, place_node(b["place"])))
    attr = kind.removeprefix("change_")
    return Node(kind, (target, b[attr]))


def focus_of(action: Node) -> Node | None:
    """Filter chain that refers to the acted-on object after ``action`` ran."""
    op = action.op
    if op == "add_object":
        size, color, material, shape = action.args[0].args
        return filter_chain(
            {"shape": shape, "size": size, "material": material, "color": color}
        )
    if op == "move":
        return action.args[0]
    if op.startswith("change_"):
        attrs = chain_attributes(action.args[0])
        if attrs is None:
            return None
        kind = op.removeprefix("change_")
        if kind in attrs:
            attrs[kind] = action.args[1]
        return filter_chain(attrs)
    return None


def _pred(p: tuple[str, Enum]) -> Node:
    kind, value = p
    return Node(f"filter_{kind}", (Node("scene"), value))


def build_question(kind: str, b: dict) -> Node:
    if kind == "count":
        return Node("count", (filter_chain(b["npl"]),))
    if kind == "exist":
        return Node("exist", (filter_chain(b["npl"] if "npl" in b else b["np"]),))
    if kind == "query_attribute":
        target = Node("unique", (filter_chain(b["np"]),))
        return Node(f"query_{b['attrname']}", (target,))
    if kind in ("query_material", "query_size"):
        return Node(kind, (Node("unique", (filter_chain(b["np"]),)),))
    if kind == "compare_attribute":
        a = Node("unique", (filter_chain(b["np"]),))
        c = Node("unique", (filter_chain(b["np2"]),))
        return Node(f"equal_{b['attrname']}", (a, c))
    if kind in ("greater_than", "less_than", "equal_integer"):
        left = Node("count", (filter_chain(b["npl"]),))
        right = Node("count", (filter_chain(b["npl2"]),))
        return Node(kind, (left, right))
    root = "count" if kind.startswith("count") else "exist"
    if kind.endswith("_relate"):
        base = Node("relate", (Node("unique", (filter_chain(b["np"]),)), b["rel"]))
        return Node(root, (filter_chain(b["npl"], base),))
    if kind.endswith("_or") or kind.endswith("_and"):
        op = "or" if kind.endswith("_or") else "and"
        return Node(root, (Node(op, (_pred(b["p1"]), _pred(b["p2"]))),))
    if kind.endswith("_not"):
        negated = Node("not", (_pred(b["p1"]),))
        attrs = b["npl"]
        inner = negated if not attrs else Node("and", (filter_chain(attrs), negated))
        return Node(root, (inner,))
    raise KeyError(kind)

