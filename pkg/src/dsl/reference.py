"""Brute-force reference evaluator for question programs.

Works on the plain JSON form of a scene and materializes every intermediate
object set as a frozenset of positions in the list, recomputing each filter
from scratch. It shares no code with the executor and is used to cross-check
it on generated data.
"""

from ..scene.io import scene_to_dict
from ..scene.model import TAU, Scene
from .ast import Node


def _holds(a: dict, b: dict, rel: str) -> bool:
    (ax, ay, az), (bx, by, bz) = a["pos"], b["pos"]
    return {
        "left": ax < bx - TAU,
        "right": ax > bx + TAU,
        "front": ay < by - TAU,
        "behind": ay > by + TAU,
        "on": abs(ax - bx) <= TAU and abs(ay - by) <= TAU and az > bz,
    }[rel]


def reference_answer(p: Node, s: Scene) -> str:
    objs = scene_to_dict(s)["objects"]
    everything = frozenset(range(len(objs)))

    def ev(node: Node):
        op, args = node.op, node.args
        if op == "scene":
            return everything
        if op.startswith("filter_"):
            attr = op[len("filter_") :]
            return frozenset(i for i in ev(args[0]) if objs[i][attr] == args[1].value)
        if op == "unique":
            members = ev(args[0])
            if len(members) != 1:
                raise ValueError("non-unique")
            return next(iter(members))
        if op == "relate":
            anchor = ev(args[0])
            return frozenset(
                i
                for i in everything
                if i != anchor and _holds(objs[i], objs[anchor], args[1].value)
            )
        if op == "and":
            return ev(args[0]) & ev(args[1])
        if op == "or":
            return ev(args[0]) | ev(args[1])
        if op == "not":
            return everything - ev(args[0])
        if op == "count":
            return len(ev(args[0]))
        if op == "exist":
            return "yes" if ev(args[0]) else "no"
        if op.startswith("query_"):
            return objs[ev(args[0])][op[len("query_") :]]
        if op == "equal_integer":
            return "yes" if ev(args[0]) == ev(args[1]) else "no"
        if op == "greater_than":
            return "yes" if ev(args[0]) > ev(args[1]) else "no"
        if op == "less_than":
            return "yes" if ev(args[0]) < ev(args[1]) else "no"
        if op.startswith("equal_"):
            attr = op[len("equal_") :]
            return "yes" if objs[ev(args[0])][attr] == objs[ev(args[1])][attr] else "no"
        raise ValueError(f"unsupported node {op}")

    result = ev(p)
    return str(min(result, 9)) if isinstance(result, int) else result
