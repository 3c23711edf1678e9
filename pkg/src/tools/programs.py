"""Program tools: parse, execute actions and execute questions on a scene."""

from typing import Annotated, Any

from fastmcp import Context
from pydantic import Field

from ..core.app import mcp
from ..dsl import exec_action, exec_question, parse_program, render_program, root_kind
from ..scene import scene_from_dict, scene_to_dict
from . import engine_errors

SceneJSON = Annotated[
    dict[str, Any],
    Field(
        description="Scene as "
        '{"objects": [{"shape", "size", "material", "color", "pos"}]}'
    ),
]
ProgramText = Annotated[
    str,
    Field(
        description="Functional program, e.g. count(filter_color(scene(),red))",
        min_length=1,
    ),
]


@mcp.tool(
    name="parse_program",
    annotations={
        "readOnlyHint": True,
        "idempotentHint": True,
        "openWorldHint": False,
    },
)
async def parse_program_text(
    text: ProgramText,
    ctx: Context = None,
) -> dict:
    """Parse and type-check a program; returns its canonical text and root kind."""
    with engine_errors():
        node = parse_program(text)
    await ctx.debug(f"parsed {node.op} with {node.size()} nodes")
    return {"canonical": render_program(node), "root_kind": root_kind(node)}


@mcp.tool(
    annotations={
        "readOnlyHint": True,
        "idempotentHint": True,
        "openWorldHint": False,
    }
)
async def execute_action(
    scene: SceneJSON,
    program: ProgramText,
    ctx: Context = None,
) -> dict:
    """Apply an action program to a scene and return the resulting scene."""
    with engine_errors():
        before = scene_from_dict(scene)
        after = exec_action(parse_program(program, expect="action"), before)
    await ctx.info(f"action changed {len(before)} objects into {len(after)}")
    return scene_to_dict(after)


@mcp.tool(
    annotations={
        "readOnlyHint": True,
        "idempotentHint": True,
        "openWorldHint": False,
    }
)
async def execute_question(
    scene: SceneJSON,
    program: ProgramText,
    ctx: Context = None,
) -> str:
    """Evaluate a question program on a scene; the answer is a vocabulary word."""
    with engine_errors():
        question = parse_program(program, expect="question")
        return exec_question(question, scene_from_dict(scene))
