"""Table geometry: the placement grid, free-cell search and gravity.

Grid cells are 0.5 apart over [-3, 3] on both axes. Reading order runs row by
row from the back of the table (y = +3) to the front, left to right.
"""

import math
from typing import Callable, Sequence

from .model import (
    COORD_LIMIT,
    GRID_STEP,
    MIN_DISTANCE,
    STACK_HEIGHT,
    TAU,
    Z_LIMIT,
    SceneObject,
)


def _grid() -> tuple[tuple[float, float], ...]:
    steps = int(round(2 * COORD_LIMIT / GRID_STEP))
    ys = [COORD_LIMIT - i * GRID_STEP for i in range(steps + 1)]
    xs = [-COORD_LIMIT + i * GRID_STEP for i in range(steps + 1)]
    return tuple((x, y) for y in ys for x in xs)


GRID: tuple[tuple[float, float], ...] = _grid()


def in_bounds(x: float, y: float) -> bool:
    return -COORD_LIMIT <= x <= COORD_LIMIT and -COORD_LIMIT <= y <= COORD_LIMIT


def is_free(x: float, y: float, others: Sequence[SceneObject]) -> bool:
    return all(math.hypot(x - o.x, y - o.y) >= MIN_DISTANCE for o in others)


def nearest_free_cell(
    x: float,
    y: float,
    others: Sequence[SceneObject],
    accept: Callable[[float, float], bool] = lambda cx, cy: True,
) -> tuple[float, float] | None:
    """Closest free grid cell to (x, y); ties break in reading order."""
    best = None
    best_d = math.inf
    for cx, cy in GRID:
        if not accept(cx, cy) or not is_free(cx, cy, others):
            continue
        d = math.hypot(cx - x, cy - y)
        if d < best_d - 1e-12:
            best, best_d = (cx, cy), d
    return best


def first_free_cell(others: Sequence[SceneObject]) -> tuple[float, float] | None:
    for cx, cy in GRID:
        if is_free(cx, cy, others):
            return cx, cy
    return None


def column(x: float, y: float, objects: Sequence[SceneObject]) -> list[SceneObject]:
    return [o for o in objects if abs(o.x - x) <= TAU and abs(o.y - y) <= TAU]


def stack_top_z(x: float, y: float, objects: Sequence[SceneObject]) -> float | None:
    col = column(x, y, objects)
    return max(o.z for o in col) if col else None


def landing_z(anchor: SceneObject, objects: Sequence[SceneObject]) -> float:
    top = stack_top_z(anchor.x, anchor.y, objects)
    return (anchor.z if top is None else max(top, anchor.z)) + STACK_HEIGHT


def fits_height(z: float) -> bool:
    return z <= Z_LIMIT + 1e-9


def settle(objects: Sequence[SceneObject]) -> list[SceneObject]:
    """Drop every object onto the highest support below it, keeping list order."""
    order = sorted(range(len(objects)), key=lambda i: (objects[i].z, i))
    placed: dict[int, SceneObject] = {}
    for i in order:
        o = objects[i]
        below = [
            p
            for p in placed.values()
            if abs(p.x - o.x) <= TAU and abs(p.y - o.y) <= TAU
        ]
        z = max(p.z for p in below) + STACK_HEIGHT if below else 0.0
        placed[i] = o if z == o.z else o.moved(o.x, o.y, z)
    return [placed[i] for i in range(len(objects))]
