"""Closed word lists: attribute synonyms, nouns and relation phrases.

The first spelling listed for each value is its plain name; the rest are
synonyms the generator substitutes (sphere~ball, shiny~metallic, ...).
"""

from enum import Enum

import numpy as np

from ..scene.model import Color, Material, Relation, Shape, Size

SYNONYMS: dict[Enum, tuple[str, ...]] = {
    Size.SMALL: ("small", "tiny"),
    Size.BIG: ("big", "large"),
    Material.METAL: ("metal", "shiny", "metallic"),
    Material.RUBBER: ("rubber", "matte"),
    **{c: (c.value,) for c in Color},
}

NOUNS: dict[Shape | None, tuple[str, ...]] = {
    Shape.CUBE: ("cube", "block"),
    Shape.SPHERE: ("sphere", "ball"),
    Shape.CYLINDER: ("cylinder",),
    None: ("object", "thing"),
}

PLURALS: dict[Shape | None, tuple[str, ...]] = {
    Shape.CUBE: ("cubes", "blocks"),
    Shape.SPHERE: ("spheres", "balls"),
    Shape.CYLINDER: ("cylinders",),
    None: ("objects", "things"),
}

# relation phrases used for placements and relate(); "on" is stacking
RELATION_PHRASES: dict[Relation, tuple[tuple[str, ...], ...]] = {
    Relation.LEFT: (("to", "the", "left", "of"), ("left", "of")),
    Relation.RIGHT: (("to", "the", "right", "of"), ("right", "of")),
    Relation.FRONT: (("in", "front", "of"),),
    Relation.BEHIND: (("behind",),),
    Relation.ON: (("on",), ("on", "top", "of")),
}

GROUND_PHRASES: tuple[tuple[str, ...], ...] = (
    ("onto", "the", "ground"),
    ("down", "to", "the", "floor"),
)

ATTRIBUTE_NAMES = ("color", "shape", "size", "material")

# word -> (attribute kind, value)
ADJECTIVES: dict[str, tuple[str, Enum]] = {}
for _value, _words in SYNONYMS.items():
    _kind = {Size: "size", Material: "material", Color: "color"}[type(_value)]
    for _w in _words:
        ADJECTIVES[_w] = (_kind, _value)

SINGULAR: dict[str, Shape | None] = {w: s for s, ws in NOUNS.items() for w in ws}
PLURAL: dict[str, Shape | None] = {w: s for s, ws in PLURALS.items() for w in ws}

# single-word predicates as in "either red or cylinder"
PREDICATES: dict[str, tuple[str, Enum]] = {
    **ADJECTIVES,
    **{w: ("shape", s) for w, s in SINGULAR.items() if s is not None},
}

# adjective order inside a noun phrase: "big red metal cube"
NP_ORDER = ("size", "color", "material")


def pick(rng: np.random.Generator, options):
    return options[int(rng.integers(len(options)))]


def realize_np(
    attrs: dict, rng: np.random.Generator, plural: bool = False
) -> list[str]:
    words = [pick(rng, SYNONYMS[attrs[k]]) for k in NP_ORDER if k in attrs]
    nouns = PLURALS if plural else NOUNS
    words.append(pick(rng, nouns[attrs.get("shape")]))
    return words


def parse_np(words: list[str], plural: bool = False) -> dict | None:
    """Inverse of :func:`realize_np`; None unless ``words`` is exactly one NP."""
    if not words:
        return None
    nouns = PLURAL if plural else SINGULAR
    if words[-1] not in nouns:
        return None
    attrs: dict = {}
    rank = 0
    for w in words[:-1]:
        hit = ADJECTIVES.get(w)
        if hit is None:
            return None
        kind, value = hit
        if kind not in NP_ORDER[rank:]:
            return None
        rank = NP_ORDER.index(kind) + 1
        attrs[kind] = value
    shape = nouns[words[-1]]
    if shape is not None:
        attrs["shape"] = shape
    return attrs


def realize_value(value: Enum, rng: np.random.Generator) -> str:
    if isinstance(value, Shape):
        return pick(rng, NOUNS[value])
    return pick(rng, SYNONYMS[value])
