"""Scene JSON codec: ``{"objects": [{"shape": ..., "pos": [x, y, z]}, ...]}``."""

import json
from typing import Any

from ..core.errors import DataError
from .model import Scene, SceneObject, canonicalize, make_object

_FIELDS = ("shape", "size", "material", "color")


def scene_to_dict(s: Scene) -> dict[str, Any]:
    return {
        "objects": [
            {
                "shape": o.shape.value,
                "size": o.size.value,
                "material": o.material.value,
                "color": o.color.value,
                "pos": [o.x, o.y, o.z],
            }
            for o in s.objects
        ]
    }


def _object_from_dict(raw: dict[str, Any], index: int) -> SceneObject:
    try:
        pos = raw["pos"]
        if len(pos) != 3:
            raise ValueError("pos needs three coordinates")
        return make_object(*(raw[f] for f in _FIELDS), pos=tuple(float(c) for c in pos))
    except (KeyError, ValueError, TypeError) as e:
        raise DataError("bad-scene", f"object {index}: {e}") from e


def scene_from_dict(raw: dict[str, Any]) -> Scene:
    if not isinstance(raw, dict) or not isinstance(raw.get("objects"), list):
        raise DataError("bad-scene", "scene JSON needs an 'objects' list")
    return canonicalize(_object_from_dict(o, i) for i, o in enumerate(raw["objects"]))


def serialize_scene(s: Scene) -> str:
    return json.dumps(scene_to_dict(s), separators=(",", ":"))


def deserialize_scene(text: str) -> Scene:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DataError("bad-scene", f"invalid scene JSON: {e}") from e
    return scene_from_dict(raw)
