"""Typed AST for the functional-program language.

A program is a tree of :class:`Node` values. Each function name has a fixed
signature in :data:`SIGNATURES`; literal arguments are stored already
converted (enum members, :class:`~src.scene.model.Relation` or ``float``).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Union

from ..scene.model import Color, Material, Relation, Shape, Size


class Kind(str, Enum):
    SET = "set"
    OBJECT = "object"
    INT = "int"
    BOOL = "bool"
    ATTR = "attribute"
    ACTION = "action"
    PLACEMENT = "placement"
    ATTRS = "attrs"
    SHAPE = "shape"
    SIZE = "size"
    MATERIAL = "material"
    COLOR = "color"
    RELATION = "relation"
    NUMBER = "number"


LITERAL_KINDS: dict[Kind, type] = {
    Kind.SHAPE: Shape,
    Kind.SIZE: Size,
    Kind.MATERIAL: Material,
    Kind.COLOR: Color,
    Kind.RELATION: Relation,
    Kind.NUMBER: float,
}

QUESTION_KINDS = frozenset({Kind.INT, Kind.BOOL, Kind.ATTR})

Literal = Union[Shape, Size, Material, Color, Relation, float]


@dataclass(frozen=True)
class Node:
    op: str
    args: tuple["Node | Literal", ...] = ()

    @property
    def kind(self) -> Kind:
        return SIGNATURES[self.op][1]

    def children(self) -> tuple["Node", ...]:
        return tuple(a for a in self.args if isinstance(a, Node))

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children())


Signature = tuple[tuple[Kind, ...], Kind]

_ATTR_KIND = {
    "shape": Kind.SHAPE,
    "size": Kind.SIZE,
    "material": Kind.MATERIAL,
    "color": Kind.COLOR,
}

SIGNATURES: dict[str, Signature] = {
    "scene": ((), Kind.SET),
    "unique": ((Kind.SET,), Kind.OBJECT),
    "relate": ((Kind.OBJECT, Kind.RELATION), Kind.SET),
    "count": ((Kind.SET,), Kind.INT),
    "exist": ((Kind.SET,), Kind.BOOL),
    "equal_integer": ((Kind.INT, Kind.INT), Kind.BOOL),
    "greater_than": ((Kind.INT, Kind.INT), Kind.BOOL),
    "less_than": ((Kind.INT, Kind.INT), Kind.BOOL),
    "and": ((Kind.SET, Kind.SET), Kind.SET),
    "or": ((Kind.SET, Kind.SET), Kind.SET),
    "not": ((Kind.SET,), Kind.SET),
    "attrs": ((Kind.SIZE, Kind.COLOR, Kind.MATERIAL, Kind.SHAPE), Kind.ATTRS),
    "absolute": ((Kind.NUMBER, Kind.NUMBER), Kind.PLACEMENT),
    "relative": ((Kind.RELATION, Kind.SET), Kind.PLACEMENT),
    "on": ((Kind.SET,), Kind.PLACEMENT),
    "ground": ((), Kind.PLACEMENT),
    "add_object": ((Kind.ATTRS, Kind.PLACEMENT), Kind.ACTION),
    "remove": ((Kind.SET,), Kind.ACTION),
    "move": ((Kind.SET, Kind.PLACEMENT), Kind.ACTION),
    "seq": ((Kind.ACTION, Kind.ACTION), Kind.ACTION),
    "noop": ((), Kind.ACTION),
}
for _attr, _lit in _ATTR_KIND.items():
    SIGNATURES[f"filter_{_attr}"] = ((Kind.SET, _lit), Kind.SET)
    SIGNATURES[f"query_{_attr}"] = ((Kind.OBJECT,), Kind.ATTR)
    SIGNATURES[f"equal_{_attr}"] = ((Kind.OBJECT, Kind.OBJECT), Kind.BOOL)
    SIGNATURES[f"change_{_attr}"] = ((Kind.SET, _lit), Kind.ACTION)

ACTION_TYPES = ("add", "remove", "change", "move")

# filter nesting order, innermost first, as in
# filter_color(filter_material(scene(),metal),red)
FILTER_ORDER = ("shape", "material", "color", "size")


def scene_() -> Node:
    return Node("scene")


def filter_chain(attrs: dict[str, Enum], base: Node | None = None) -> Node:
    node = base or scene_()
    for kind in FILTER_ORDER:
        if kind in attrs:
            node = Node(f"filter_{kind}", (node, attrs[kind]))
    return node


def chain_attributes(node: Node) -> dict[str, Enum] | None:
    """Inverse of :func:`filter_chain` for pure filter chains over scene()."""
    attrs: dict[str, Enum] = {}
    while node.op.startswith("filter_"):
        attrs[node.op.removeprefix("filter_")] = node.args[1]
        node = node.args[0]
    return attrs if node.op == "scene" else None


def action_type(node: Node) -> str | None:
    if node.op == "add_object":
        return "add"
    if node.op in ("remove", "move"):
        return node.op
    if node.op.startswith("change_"):
        return "change"
    return None


def action_types(node: Node) -> list[str]:
    if node.op == "seq":
        return action_types(node.args[0]) + action_types(node.args[1])
    kind = action_type(node)
    return [kind] if kind else []
