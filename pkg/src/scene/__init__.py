"""Scene graph data model, spatial semantics, equality and JSON codec."""

from .io import deserialize_scene, scene_from_dict, scene_to_dict, serialize_scene
from .model import (
    ANSWERS,
    ATTRIBUTES,
    N_MAX,
    TAU,
    Color,
    Material,
    Relation,
    Scene,
    SceneObject,
    Shape,
    Size,
    canonicalize,
    make_object,
)
from .spatial import (
    ValidationReport,
    Violation,
    relation_holds,
    scene_equal,
    spatial_relation,
    validate_scene,
)

__all__ = [
    "ANSWERS",
    "ATTRIBUTES",
    "N_MAX",
    "TAU",
    "Color",
    "Material",
    "Relation",
    "Scene",
    "SceneObject",
    "Shape",
    "Size",
    "ValidationReport",
    "Violation",
    "canonicalize",
    "deserialize_scene",
    "make_object",
    "relation_holds",
    "scene_equal",
    "scene_from_dict",
    "scene_to_dict",
    "serialize_scene",
    "spatial_relation",
    "validate_scene",
]
