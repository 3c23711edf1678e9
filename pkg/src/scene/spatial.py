"""Spatial predicates, scene validation and order-insensitive equality."""

import math
from dataclasses import dataclass, field

from ..core.errors import ExecutionError
from .model import (
    ATTRIBUTES,
    COORD_LIMIT,
    MIN_DISTANCE,
    N_MAX,
    TAU,
    Z_LIMIT,
    Relation,
    Scene,
    SceneObject,
)


def relation_holds(a: SceneObject, b: SceneObject, rel: Relation) -> bool:
    dx = a.x - b.x
    dy = a.y - b.y
    if rel is Relation.LEFT:
        return a.x < b.x - TAU
    if rel is Relation.RIGHT:
        return a.x > b.x + TAU
    if rel is Relation.FRONT:
        return a.y < b.y - TAU
    if rel is Relation.BEHIND:
        return a.y > b.y + TAU
    return abs(dx) <= TAU and abs(dy) <= TAU and a.z > b.z


def _lookup(s: Scene, oid: int) -> SceneObject:
    for obj in s.objects:
        if obj.id == oid:
            return obj
    raise ExecutionError("no-such-object", f"scene has no object with id {oid}")


def spatial_relation(s: Scene, a: int, b: int, rel: Relation | str) -> bool:
    rel = Relation(rel)
    obj_a = _lookup(s, a)
    obj_b = _lookup(s, b)
    if a == b:
        raise ExecutionError(
            "no-such-object", f"relation needs two distinct objects, got {a} twice"
        )
    return relation_holds(obj_a, obj_b, rel)


def xy_distance(a: SceneObject, b: SceneObject) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def stacked(a: SceneObject, b: SceneObject) -> bool:
    """True when one of the two objects is on the other."""
    return relation_holds(a, b, Relation.ON) or relation_holds(b, a, Relation.ON)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def validate_scene(s: Scene) -> ValidationReport:
    found: list[Violation] = []
    objs = s.objects
    if len(objs) > N_MAX:
        found.append(
            Violation("capacity", f"{len(objs)} objects exceed the limit of {N_MAX}")
        )
    if [o.id for o in objs] != list(range(len(objs))):
        found.append(Violation("ids", "object ids are not 0..n-1 in list order"))
    for o in objs:
        if not all(math.isfinite(c) for c in o.pos):
            found.append(
                Violation("bounds", f"object {o.id} has a non-finite coordinate")
            )
            continue
        if abs(o.x) > COORD_LIMIT or abs(o.y) > COORD_LIMIT or o.z < 0 or o.z > Z_LIMIT:
            found.append(
                Violation("bounds", f"object {o.id} at {o.pos} is outside the table")
            )
        if o.z > 0 and not any(
            relation_holds(o, other, Relation.ON) for other in objs if other is not o
        ):
            found.append(Violation("unsupported", f"object {o.id} floats at z={o.z}"))
    for i, a in enumerate(objs):
        for b in objs[i + 1 :]:
            if xy_distance(a, b) < MIN_DISTANCE and not stacked(a, b):
                gap = xy_distance(a, b)
                found.append(
                    Violation(
                        "min-distance", f"objects {a.id} and {b.id} are {gap:.3f} apart"
                    )
                )
    return ValidationReport(tuple(found))


def _compatible(a: SceneObject, b: SceneObject, tol: float) -> bool:
    if any(a.attr(k) != b.attr(k) for k in ATTRIBUTES):
        return False
    return all(abs(p - q) <= tol for p, q in zip(a.pos, b.pos))


def scene_equal(a: Scene, b: Scene, coord_tol: float = 0.0) -> bool:
    """Bipartite matching of objects on exact attributes and per-axis tolerance."""
    if coord_tol < 0:
        raise ValueError("coord_tol must be non-negative")
    if len(a) != len(b):
        return False
    edges = [
        [j for j, ob in enumerate(b.objects) if _compatible(oa, ob, coord_tol)]
        for oa in a.objects
    ]
    match_b: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for j in edges[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in match_b or augment(match_b[j], seen):
                match_b[j] = i
                return True
        return False

    return all(augment(i, set()) for i in range(len(a)))
