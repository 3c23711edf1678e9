"""Fixed-width scene vectors.

Each of the N_MAX slots holds 19 numbers::

    presence | shape(3) | size(2) | material(2) | color(8) | x/3 y/3 z/3

Objects are written in canonical order into slots 0..k-1; empty slots are
all zero. The enum orders in :mod:`src.scene.model` fix the one-hot layout.
"""

import math

import numpy as np

from ..scene.layout import column, fits_height, is_free, nearest_free_cell
from ..scene.model import (
    ATTRIBUTES,
    COORD_LIMIT,
    MIN_DISTANCE,
    N_MAX,
    STACK_HEIGHT,
    Z_LIMIT,
    Scene,
    SceneObject,
    canonicalize,
    enum_index,
)
from ..scene.spatial import stacked, validate_scene, xy_distance

SLOT_DIM = 19
SCENE_DIM = N_MAX * SLOT_DIM
PRESENCE = 0
GROUPS: dict[str, slice] = {
    "shape": slice(1, 4),
    "size": slice(4, 6),
    "material": slice(6, 8),
    "color": slice(8, 16),
}
COORDS = slice(16, 19)


def encode_scene(s: Scene) -> np.ndarray:
    v = np.zeros((N_MAX, SLOT_DIM))
    for slot, obj in enumerate(canonicalize(s.objects).objects):
        v[slot, PRESENCE] = 1.0
        for kind, cols in GROUPS.items():
            v[slot, cols.start + enum_index(obj.attr(kind))] = 1.0
        v[slot, COORDS] = (obj.x / COORD_LIMIT, obj.y / COORD_LIMIT, obj.z / Z_LIMIT)
    return v.reshape(SCENE_DIM)


def encode_scenes(scenes) -> np.ndarray:
    if not scenes:
        return np.zeros((0, SCENE_DIM))
    return np.stack([encode_scene(s) for s in scenes])


def _finite(value: float, default: float = 0.0) -> float:
    return float(value) if math.isfinite(value) else default


def _clip(value: float, limit: float, low: float | None = None) -> float:
    return min(max(_finite(value), -limit if low is None else low), limit)


def _slot_object(row: np.ndarray) -> SceneObject:
    attrs = {}
    for kind, cols in GROUPS.items():
        # argmax picks the lowest index on ties
        attrs[kind] = list(ATTRIBUTES[kind])[int(np.argmax(row[cols]))]
    x = _clip(row[COORDS.start] * COORD_LIMIT, COORD_LIMIT)
    y = _clip(row[COORDS.start + 1] * COORD_LIMIT, COORD_LIMIT)
    z = _clip(row[COORDS.start + 2] * Z_LIMIT, Z_LIMIT, low=0.0)
    return SceneObject(**attrs, pos=(x, y, z))


def _clear(obj: SceneObject, placed: list[SceneObject]) -> bool:
    return all(xy_distance(obj, p) >= MIN_DISTANCE or stacked(obj, p) for p in placed)


def _repair(candidates: list[SceneObject]) -> list[SceneObject]:
    """Lay objects down level by level, nudging collisions to free grid cells.

    Heights snap to whole levels. A stacked object keeps its own xy while it
    stays clear of everything already placed, else it centres on its support.
    """
    placed: list[SceneObject] = []
    for obj in sorted(candidates, key=lambda o: round(o.z)):
        if round(obj.z) > 0:
            col = column(obj.x, obj.y, placed)
            if col:
                top = max(col, key=lambda o: o.z)
                z = top.z + STACK_HEIGHT
                if fits_height(z):
                    own = obj.moved(obj.x, obj.y, z)
                    if not _clear(own, placed):
                        own = obj.moved(top.x, top.y, z)
                    placed.append(own)
                    continue
        ground = obj.moved(obj.x, obj.y, 0.0)
        if is_free(ground.x, ground.y, placed):
            placed.append(ground)
            continue
        cell = nearest_free_cell(obj.x, obj.y, placed)
        if cell is not None:
            placed.append(obj.moved(cell[0], cell[1], 0.0))
    return placed


def decode_scene(v: np.ndarray, presence_threshold: float = 0.5) -> Scene:
    """Total inverse of :func:`encode_scene`: any 190-vector yields a valid scene.

    Coordinates come back exactly, clipped to the table. Repair only runs
    when the clipped scene fails validation.
    """
    v = np.asarray(v, dtype=np.float64).reshape(N_MAX, SLOT_DIM)
    candidates = [
        _slot_object(row)
        for row in v
        if math.isfinite(row[PRESENCE]) and row[PRESENCE] > presence_threshold
    ]
    exact = canonicalize(candidates)
    if validate_scene(exact).ok:
        return exact
    return canonicalize(_repair(candidates))
