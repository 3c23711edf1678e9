"""Reference data: the attribute taxonomy and the program grammar."""

import json

from ..core.app import mcp
from ..dsl import SIGNATURES
from ..scene import ANSWERS, ATTRIBUTES, N_MAX, TAU, Relation
from ..scene.model import GRID_STEP, MIN_DISTANCE, Z_LIMIT


def taxonomy() -> dict:
    return {
        "attributes": {
            name: [v.value for v in enum] for name, enum in ATTRIBUTES.items()
        },
        "relations": [r.value for r in Relation],
        "answers": list(ANSWERS),
        "limits": {
            "max_objects": N_MAX,
            "tau": TAU,
            "min_distance": MIN_DISTANCE,
            "z_limit": Z_LIMIT,
            "grid_step": GRID_STEP,
        },
    }


def grammar() -> dict:
    return {
        op: {"params": [k.value for k in params], "returns": returns.value}
        for op, (params, returns) in sorted(SIGNATURES.items())
    }


@mcp.resource("hypra://taxonomy", name="taxonomy", mime_type="application/json")
def taxonomy_resource() -> str:
    """Attribute enums, relations and the answer vocabulary in on-disk order."""
    return json.dumps(taxonomy(), indent=2)


@mcp.resource("hypra://grammar", name="grammar", mime_type="application/json")
def grammar_resource() -> str:
    """Function table of the program language: parameter kinds and result kind."""
    return json.dumps(grammar(), indent=2)
