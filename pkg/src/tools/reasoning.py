"""Hypothetical reasoning tools driven by natural-language text."""

from dataclasses import dataclass
from typing import Annotated, Any, Literal

from fastmcp import Context
from pydantic import Field

from ..core.app import mcp
from ..dsl import render_program
from ..qa import answer_text_oracle
from ..scene import scene_from_dict
from ..worldgen import gen_sample
from . import engine_errors


@dataclass
class HypotheticalAnswer:
    answer: str
    action_program: str
    question_program: str


@mcp.tool(
    annotations={
        "readOnlyHint": True,
        "idempotentHint": True,
        "openWorldHint": False,
    }
)
async def answer_hypothetical(
    scene: Annotated[dict[str, Any], Field(description='Scene as {"objects": [...]}')],
    action_text: Annotated[
        str, Field(description="What happens, e.g. 'remove the red cube'", min_length=1)
    ],
    question: Annotated[
        str,
        Field(description="Question about the scene after the action", min_length=1),
    ],
    ctx: Context = None,
) -> HypotheticalAnswer:
    """Answer a question about the scene as it would be after the action.

    Both texts must follow the generator's templates; they are parsed into
    programs and executed symbolically.
    """
    with engine_errors():
        answer, action, q = answer_text_oracle(
            scene_from_dict(scene), action_text, question
        )
    await ctx.info(f"answered {q.op} after {action.op}: {answer}")
    return HypotheticalAnswer(answer, render_program(action), render_program(q))


@mcp.tool(
    annotations={
        "readOnlyHint": True,
        "idempotentHint": True,
        "openWorldHint": False,
    }
)
async def generate_sample(
    seed: Annotated[int, Field(description="Generator seed", ge=0, lt=2**63)],
    hops_action: Annotated[Literal[1, 2], "Number of chained actions"] = 1,
    hops_question: Annotated[
        Literal[1, 2], "1 for basic questions, 2 for and/or/not"
    ] = 1,
    ctx: Context = None,
) -> dict:
    """Generate one deterministic sample record (scene, action, question, answer)."""
    with engine_errors():
        record = gen_sample(seed, hops_action, hops_question)
    await ctx.debug(
        f"generated {record.id} ({record.action_cell()}, {record.reasoning_type})"
    )
    return record.to_dict()
