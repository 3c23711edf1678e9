"""Symbolic executor: denotational semantics of question and action programs.

Object sets are sorted tuples of indices into the scene's object list, so
every evaluation is deterministic and touches each object at most once per
node.
"""

import math
from dataclasses import replace
from enum import Enum
from typing import Sequence

from ..core.errors import ExecutionError
from ..scene.layout import (
    first_free_cell,
    fits_height,
    in_bounds,
    is_free,
    landing_z,
    nearest_free_cell,
    settle,
)
from ..scene.model import N_MAX, Relation, Scene, SceneObject, canonicalize
from ..scene.spatial import relation_holds
from .ast import Kind, Node

MAX_COUNT = 9
RELATIVE_OFFSET = 1.0

IndexSet = tuple[int, ...]


class _Evaluator:
    """Evaluates set/object/int/bool/attribute nodes against a fixed object list."""

    def __init__(self, objects: Sequence[SceneObject]) -> None:
        self.objects = objects

    def set(self, node: Node) -> IndexSet:
        op = node.op
        if op == "scene":
            return tuple(range(len(self.objects)))
        if op.startswith("filter_"):
            kind = op.removeprefix("filter_")
            base = self.set(node.args[0])
            value = node.args[1]
            return tuple(i for i in base if self.objects[i].attr(kind) == value)
        if op == "relate":
            anchor = self.object(node.args[0])
            rel = node.args[1]
            ref = self.objects[anchor]
            return tuple(
                i
                for i, o in enumerate(self.objects)
                if i != anchor and relation_holds(o, ref, rel)
            )
        if op == "and":
            right = set(self.set(node.args[1]))
            return tuple(i for i in self.set(node.args[0]) if i in right)
        if op == "or":
            either = set(self.set(node.args[0])) | set(self.set(node.args[1]))
            return tuple(sorted(either))
        if op == "not":
            inner = set(self.set(node.args[0]))
            return tuple(i for i in range(len(self.objects)) if i not in inner)
        raise ExecutionError("bad-node", f"{op} is not set-valued")

    def object(self, node: Node) -> int:
        if node.op != "unique":
            raise ExecutionError("bad-node", f"{node.op} is not object-valued")
        members = self.set(node.args[0])
        if len(members) != 1:
            raise ExecutionError(
                "non-unique", f"unique() received {len(members)} objects"
            )
        return members[0]

    def integer(self, node: Node) -> int:
        if node.op != "count":
            raise ExecutionError("bad-node", f"{node.op} is not integer-valued")
        return len(self.set(node.args[0]))

    def value(self, node: Node) -> int | bool | Enum:
        op = node.op
        if op == "count":
            return self.integer(node)
        if op == "exist":
            return len(self.set(node.args[0])) > 0
        if op.startswith("query_"):
            obj = self.objects[self.object(node.args[0])]
            return obj.attr(op.removeprefix("query_"))
        if op == "equal_integer":
            return self.integer(node.args[0]) == self.integer(node.args[1])
        if op == "greater_than":
            return self.integer(node.args[0]) > self.integer(node.args[1])
        if op == "less_than":
            return self.integer(node.args[0]) < self.integer(node.args[1])
        if op.startswith("equal_"):
            kind = op.removeprefix("equal_")
            a = self.objects[self.object(node.args[0])]
            b = self.objects[self.object(node.args[1])]
            return a.attr(kind) == b.attr(kind)
        raise ExecutionError("bad-node", f"{op} is not a question node")


def _to_answer(value: int | bool | Enum) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, int):
        return str(min(value, MAX_COUNT))
    return value.value


def exec_question(p: Node, s: Scene) -> str:
    if p.kind not in (Kind.INT, Kind.BOOL, Kind.ATTR):
        raise ExecutionError("not-a-question", f"{p.op} is not a question root")
    return _to_answer(_Evaluator(s.objects).value(p))


def _anchor(ev: _Evaluator, set_node: Node) -> int:
    members = ev.set(set_node)
    if len(members) != 1:
        raise ExecutionError(
            "non-unique-anchor", f"placement anchor matched {len(members)} objects"
        )
    return members[0]


def _anchor_object(
    ev: _Evaluator, objects: list[SceneObject], placement: Node
) -> SceneObject | None:
    if placement.op not in ("on", "relative"):
        return None
    return objects[_anchor(ev, placement.args[-1])]


class _Placer:
    """Resolves a placement node to concrete coordinates for one object at a time."""

    def __init__(self, node: Node, anchor: SceneObject | None) -> None:
        self.node = node
        self.anchor = anchor

    def place(
        self, obj: SceneObject, others: list[SceneObject], lifted: bool
    ) -> SceneObject:
        op = self.node.op
        if op == "on":
            anchor = self._current_anchor(others)
            z = landing_z(anchor, others)
            if not fits_height(z):
                raise ExecutionError(
                    "stack-too-high", f"stack at {anchor.x},{anchor.y} is full"
                )
            return obj.moved(anchor.x, anchor.y, z)
        if op == "absolute":
            x, y = float(self.node.args[0]), float(self.node.args[1])
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ExecutionError(
                    "invalid-placement",
                    f"absolute({x}, {y}) is not a point on the table",
                )
            x = min(max(x, -3.0), 3.0)
            y = min(max(y, -3.0), 3.0)
            if is_free(x, y, others):
                return obj.moved(x, y, 0.0)
            return self._cell(obj, nearest_free_cell(x, y, others))
        if op == "relative":
            anchor = self._current_anchor(others)
            rel: Relation = self.node.args[0]
            dx, dy = {
                Relation.LEFT: (-RELATIVE_OFFSET, 0.0),
                Relation.RIGHT: (RELATIVE_OFFSET, 0.0),
                Relation.FRONT: (0.0, -RELATIVE_OFFSET),
                Relation.BEHIND: (0.0, RELATIVE_OFFSET),
            }[rel]
            # coordinates stay on the 0.01 lattice the generator draws from
            x, y = round(anchor.x + dx, 2), round(anchor.y + dy, 2)

            def satisfies(cx: float, cy: float) -> bool:
                candidate = obj.moved(cx, cy, 0.0)
                return relation_holds(candidate, anchor, rel)

            if in_bounds(x, y) and is_free(x, y, others) and satisfies(x, y):
                return obj.moved(x, y, 0.0)
            return self._cell(obj, nearest_free_cell(x, y, others, satisfies))
        # ground()
        if lifted and in_bounds(obj.x, obj.y) and is_free(obj.x, obj.y, others):
            return obj.moved(obj.x, obj.y, 0.0)
        if lifted:
            return self._cell(obj, nearest_free_cell(obj.x, obj.y, others))
        return self._cell(obj, first_free_cell(others))

    def _current_anchor(self, others: list[SceneObject]) -> SceneObject:
        # anchors are tracked by identity; lifting targets may have settled them
        for o in others:
            if o.id == self.anchor.id:
                return o
        raise ExecutionError(
            "invalid-placement", "placement anchor is one of the moved objects"
        )

    @staticmethod
    def _cell(obj: SceneObject, cell: tuple[float, float] | None) -> SceneObject:
        if cell is None:
            raise ExecutionError(
                "no-free-cell", f"no free cell left for the {obj.describe()}"
            )
        return obj.moved(cell[0], cell[1], 0.0)


def _tagged(objects: Sequence[SceneObject]) -> list[SceneObject]:
    # ids double as stable identities while one action runs
    return [replace(o, id=i) for i, o in enumerate(objects)]


def _apply(p: Node, objects: list[SceneObject]) -> list[SceneObject]:
    op = p.op
    if op == "noop":
        return objects
    if op == "seq":
        first = canonicalize(_apply(p.args[0], objects)).objects
        return _apply(p.args[1], list(first))
    ev = _Evaluator(objects)
    if op == "remove":
        gone = set(ev.set(p.args[0]))
        return settle([o for i, o in enumerate(objects) if i not in gone])
    if op.startswith("change_"):
        kind = op.removeprefix("change_")
        hit = set(ev.set(p.args[0]))
        value = p.args[1]
        return [
            o.with_attr(kind, value) if i in hit else o for i, o in enumerate(objects)
        ]
    if op == "add_object":
        if len(objects) >= N_MAX:
            raise ExecutionError("capacity", f"scene already holds {N_MAX} objects")
        size, color, material, shape = p.args[0].args
        placement = p.args[1]
        anchor = _anchor_object(ev, objects, placement)
        new = SceneObject(
            shape, size, material, color, (0.0, 0.0, 0.0), id=len(objects)
        )
        return objects + [_Placer(placement, anchor).place(new, objects, lifted=False)]
    if op == "move":
        targets = ev.set(p.args[0])
        if not targets:
            return objects
        placement = p.args[1]
        anchor = _anchor_object(ev, objects, placement)
        chosen = set(targets)
        rest = settle([o for i, o in enumerate(objects) if i not in chosen])
        placer = _Placer(placement, anchor)
        for i in targets:
            rest.append(placer.place(objects[i], rest, lifted=True))
        return rest
    raise ExecutionError("not-an-action", f"{op} is not an action")


def exec_action(p: Node, s: Scene) -> Scene:
    if p.kind is not Kind.ACTION:
        raise ExecutionError("not-an-action", f"{p.op} is not an action root")
    return canonicalize(_apply(p, _tagged(s.objects)))
