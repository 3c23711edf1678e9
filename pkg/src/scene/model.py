"""Closed-world scene graph: attribute taxonomy, objects and scenes.

Enum declaration order is part of the on-disk contract: it fixes the one-hot
layout of scene vectors and the tie-break order when decoding.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable

N_MAX = 10
COORD_LIMIT = 3.0
Z_LIMIT = 3.0
TAU = 0.25
MIN_DISTANCE = 0.5
STACK_HEIGHT = 1.0
GRID_STEP = 0.5


class Shape(str, Enum):
    CUBE = "cube"
    SPHERE = "sphere"
    CYLINDER = "cylinder"


class Size(str, Enum):
    SMALL = "small"
    BIG = "big"


class Material(str, Enum):
    METAL = "metal"
    RUBBER = "rubber"


class Color(str, Enum):
    RED = "red"
    GREEN = "green"
    GRAY = "gray"
    BLUE = "blue"
    BROWN = "brown"
    YELLOW = "yellow"
    PURPLE = "purple"
    CYAN = "cyan"


class Relation(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    FRONT = "front"
    BEHIND = "behind"
    ON = "on"


# attribute name -> enum, in the order attributes appear in a scene vector slot
ATTRIBUTES: dict[str, type[Enum]] = {
    "shape": Shape,
    "size": Size,
    "material": Material,
    "color": Color,
}

ANSWERS: tuple[str, ...] = (
    *(str(i) for i in range(10)),
    "yes",
    "no",
    "cylinder",
    "sphere",
    "cube",
    "small",
    "big",
    "metal",
    "rubber",
    "red",
    "green",
    "gray",
    "blue",
    "brown",
    "yellow",
    "purple",
    "cyan",
)


def enum_index(value: Enum) -> int:
    return list(type(value)).index(value)


def attribute_value(kind: str, raw: str) -> Enum:
    return ATTRIBUTES[kind](raw)


@dataclass(frozen=True)
class SceneObject:
    shape: Shape
    size: Size
    material: Material
    color: Color
    pos: tuple[float, float, float]
    id: int = 0

    @property
    def x(self) -> float:
        return self.pos[0]

    @property
    def y(self) -> float:
        return self.pos[1]

    @property
    def z(self) -> float:
        return self.pos[2]

    def attr(self, kind: str) -> Enum:
        return getattr(self, kind)

    def with_attr(self, kind: str, value: Enum) -> "SceneObject":
        return replace(self, **{kind: value})

    def moved(self, x: float, y: float, z: float) -> "SceneObject":
        return replace(self, pos=(float(x), float(y), float(z)))

    def sort_key(self) -> tuple:
        return (
            self.x,
            self.y,
            self.z,
            enum_index(self.shape),
            enum_index(self.size),
            enum_index(self.material),
            enum_index(self.color),
        )

    def same_attributes(self, other: "SceneObject") -> bool:
        return all(self.attr(k) == other.attr(k) for k in ATTRIBUTES)

    def describe(self) -> str:
        return (
            f"{self.size.value} {self.color.value} "
            f"{self.material.value} {self.shape.value}"
        )


@dataclass(frozen=True)
class Scene:
    objects: tuple[SceneObject, ...] = ()

    def __len__(self) -> int:
        return len(self.objects)

    def __iter__(self):
        return iter(self.objects)

    def __getitem__(self, idx: int) -> SceneObject:
        return self.objects[idx]


def canonicalize(objects: Iterable[SceneObject]) -> Scene:
    """Sort objects by the canonical key and re-index ids 0..n-1."""
    ordered = sorted(objects, key=SceneObject.sort_key)
    return Scene(tuple(replace(o, id=i) for i, o in enumerate(ordered)))


def make_object(
    shape: str, size: str, material: str, color: str, pos=(0.0, 0.0, 0.0)
) -> SceneObject:
    x, y, z = pos
    return SceneObject(
        shape=Shape(shape),
        size=Size(size),
        material=Material(material),
        color=Color(color),
        pos=(float(x), float(y), float(z)),
    )
