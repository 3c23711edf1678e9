"""Text front-end: invert the template bank back into programs."""

import re

from ..core.errors import UnparseableTextError
from ..dsl.ast import Node
from ..worldgen.templates import (
    ACTION_TEMPLATES,
    IT,
    QUESTION_TEMPLATES,
    REASONING_OF,
    build_action,
    build_question,
    focus_of,
    match,
)

_PUNCT = re.compile(r"[?.,!;:]")


def normalize(text: str) -> list[str]:
    return _PUNCT.sub(" ", text.lower()).split()


def match_question(text: str) -> tuple[str, Node]:
    """Return (reasoning type, program) for a question in the template family."""
    words = normalize(text)
    for key, patterns in QUESTION_TEMPLATES.items():
        for pattern in patterns:
            bindings = match(pattern, words)
            if bindings is not None:
                return REASONING_OF[key], build_question(key, bindings)
    raise UnparseableTextError(
        "unparseable-question", f"no question template matches {text!r}"
    )


def parse_question(text: str) -> Node:
    return match_question(text)[1]


def _single_action(words: list[str], focus: Node | None) -> Node | None:
    for key, patterns in ACTION_TEMPLATES.items():
        for pattern in patterns:
            bindings = match(pattern, words)
            if bindings is None:
                continue
            if bindings.get("target") is IT and focus is None:
                continue
            return build_action(key, bindings, focus)
    return None


def parse_action(text: str) -> Node:
    """One action, or two joined by ``then`` with ``it`` naming the first object."""
    words = normalize(text)
    single = _single_action(words, None)
    if single is not None:
        return single
    for i, word in enumerate(words):
        if word != "then":
            continue
        first = _single_action(words[:i], None)
        if first is None:
            continue
        second = _single_action(words[i + 1 :], focus_of(first))
        if second is not None:
            return Node("seq", (first, second))
    raise UnparseableTextError(
        "unparseable-action", f"no action template matches {text!r}"
    )
