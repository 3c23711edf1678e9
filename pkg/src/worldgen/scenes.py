"""Random scene sampling."""

import numpy as np

from ..core.errors import GenerationError
from ..core.logging import get_logger
from ..scene.layout import is_free
from ..scene.model import (
    COORD_LIMIT,
    N_MAX,
    STACK_HEIGHT,
    Color,
    Material,
    Relation,
    Scene,
    SceneObject,
    Shape,
    Size,
    canonicalize,
)
from ..scene.spatial import relation_holds
from .lexicon import pick

log = get_logger("worldgen.scenes")

MIN_OBJECTS = 3
MAX_REJECTIONS = 1000
STACK_PROBABILITY = 0.15


def random_attributes(rng: np.random.Generator) -> dict:
    return {
        "shape": pick(rng, list(Shape)),
        "size": pick(rng, list(Size)),
        "material": pick(rng, list(Material)),
        "color": pick(rng, list(Color)),
    }


def _free_support(objects: list[SceneObject]) -> list[SceneObject]:
    return [
        o
        for o in objects
        if o.z == 0.0
        and not any(relation_holds(p, o, Relation.ON) for p in objects if p is not o)
    ]


def gen_scene(
    rng: np.random.Generator,
    min_objects: int = MIN_OBJECTS,
    max_objects: int = N_MAX,
    stack_probability: float = STACK_PROBABILITY,
) -> Scene:
    """3 to 10 objects with uniform attributes on rejection-sampled positions.

    Ground positions are drawn uniformly over the table and rounded to two
    decimals; an occasional object is stacked one level up on a free support.
    """
    n = int(rng.integers(min_objects, max_objects + 1))
    objects: list[SceneObject] = []
    rejections = 0
    while len(objects) < n:
        attrs = random_attributes(rng)
        if objects and rng.random() < stack_probability:
            supports = _free_support(objects)
            if supports:
                base = pick(rng, supports)
                pos = (base.x, base.y, base.z + STACK_HEIGHT)
                objects.append(SceneObject(**attrs, pos=pos))
                continue
        x = round(float(rng.uniform(-COORD_LIMIT, COORD_LIMIT)), 2)
        y = round(float(rng.uniform(-COORD_LIMIT, COORD_LIMIT)), 2)
        if is_free(x, y, objects):
            objects.append(SceneObject(**attrs, pos=(x, y, 0.0)))
            continue
        rejections += 1
        if rejections >= MAX_REJECTIONS:
            log.debug(f"Placement exhausted with {len(objects)} of {n} objects placed")
            raise GenerationError(
                "placement-exhausted",
                f"gave up placing object {len(objects) + 1} of {n} "
                f"after {rejections} tries",
            )
    return canonicalize(objects)
