"""Scene tools: structural validation and tolerance-aware comparison."""

from typing import Annotated, Any

from fastmcp import Context
from pydantic import Field

from ..core.app import mcp
from ..scene import scene_equal, scene_from_dict, validate_scene
from . import engine_errors

SceneJSON = Annotated[
    dict[str, Any],
    Field(
        description="Scene as "
        '{"objects": [{"shape", "size", "material", "color", "pos"}]}'
    ),
]


@mcp.tool(
    annotations={
        "readOnlyHint": True,
        "idempotentHint": True,
        "openWorldHint": False,
    }
)
async def check_scene(
    scene: SceneJSON,
    ctx: Context = None,
) -> list[dict]:
    """List the structural violations of a scene; an empty list means valid."""
    with engine_errors():
        report = validate_scene(scene_from_dict(scene))
    if not report.ok:
        await ctx.warning(
            f"scene has {len(report.violations)} violations: {sorted(report.kinds())}"
        )
    return [{"kind": v.kind, "detail": v.detail} for v in report.violations]


@mcp.tool(
    annotations={
        "readOnlyHint": True,
        "idempotentHint": True,
        "openWorldHint": False,
    }
)
async def compare_scenes(
    a: SceneJSON,
    b: SceneJSON,
    coord_tol: Annotated[
        float, Field(description="Per-axis coordinate tolerance", ge=0)
    ] = 0.0,
    ctx: Context = None,
) -> bool:
    """True when the scenes match object for object within ``coord_tol``."""
    with engine_errors():
        return scene_equal(scene_from_dict(a), scene_from_dict(b), coord_tol)
