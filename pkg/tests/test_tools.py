"""MCP tools and resources through an in-memory client."""

import json

import pytest
from fastmcp import Client
from fastmcp.exceptions import ToolError

import src.resources.taxonomy  # noqa: F401  registers resources
import src.tools.programs  # noqa: F401  registers tools
import src.tools.reasoning  # noqa: F401
import src.tools.scenes  # noqa: F401
from src.core.app import mcp
from src.scene import scene_to_dict


@pytest.fixture
def scene(table_scene):
    return scene_to_dict(table_scene)


async def test_tools_are_listed():
    async with Client(mcp) as client:
        names = {t.name for t in await client.list_tools()}
    assert {
        "parse_program",
        "execute_action",
        "execute_question",
        "check_scene",
        "compare_scenes",
        "answer_hypothetical",
        "generate_sample",
    } <= names


async def test_parse_program():
    async with Client(mcp) as client:
        result = await client.call_tool("parse_program", {"text": "count( scene() )"})
    assert result.structured_content == {
        "canonical": "count(scene())",
        "root_kind": "question",
    }


async def test_parse_program_reports_code():
    async with Client(mcp) as client:
        with pytest.raises(ToolError, match="syntax-error"):
            await client.call_tool("parse_program", {"text": "count(scene("})


async def test_execute_action_and_question(scene):
    async with Client(mcp) as client:
        after = await client.call_tool(
            "execute_action",
            {"scene": scene, "program": "remove(filter_shape(scene(),cube))"},
        )
        objects = after.structured_content["objects"]
        assert len(objects) == 3
        answer = await client.call_tool(
            "execute_question",
            {
                "scene": after.structured_content,
                "program": "count(filter_shape(scene(),cube))",
            },
        )
    assert answer.data == "0"


async def test_execute_question_rejects_actions(scene):
    async with Client(mcp) as client:
        with pytest.raises(ToolError, match="type-error"):
            await client.call_tool(
                "execute_question", {"scene": scene, "program": "remove(scene())"}
            )


async def test_non_unique_reference(scene):
    async with Client(mcp) as client:
        with pytest.raises(ToolError, match="non-unique"):
            await client.call_tool(
                "execute_question",
                {
                    "scene": scene,
                    "program": "query_color(unique(filter_shape(scene(),cylinder)))",
                },
            )


async def test_check_scene(scene):
    neighbour = dict(scene["objects"][1], pos=[0.2, 0.0, 0.0])
    crowded = {"objects": scene["objects"] + [neighbour]}
    async with Client(mcp) as client:
        ok = await client.call_tool("check_scene", {"scene": scene})
        bad = await client.call_tool("check_scene", {"scene": crowded})
    assert ok.data == []
    assert "min-distance" in {v["kind"] for v in bad.structured_content["result"]}


async def test_bad_scene_payload():
    async with Client(mcp) as client:
        with pytest.raises(ToolError, match="bad-scene"):
            await client.call_tool("check_scene", {"scene": {"things": []}})


async def test_compare_scenes(scene):
    nudged = {
        "objects": [
            dict(o, pos=[o["pos"][0] + 0.2, o["pos"][1], o["pos"][2]])
            for o in scene["objects"]
        ]
    }
    async with Client(mcp) as client:
        exact = await client.call_tool("compare_scenes", {"a": scene, "b": nudged})
        loose = await client.call_tool(
            "compare_scenes", {"a": scene, "b": nudged, "coord_tol": 0.5}
        )
    assert exact.data is False
    assert loose.data is True


async def test_answer_hypothetical(scene):
    async with Client(mcp) as client:
        result = await client.call_tool(
            "answer_hypothetical",
            {
                "scene": scene,
                "action_text": "remove the red cube",
                "question": "how many spheres are there?",
            },
        )
    data = result.structured_content
    assert data["answer"] == "1"
    assert (
        data["action_program"] == "remove(filter_color(filter_shape(scene(),cube),red))"
    )
    assert data["question_program"] == "count(filter_shape(scene(),sphere))"


async def test_answer_hypothetical_unparseable(scene):
    async with Client(mcp) as client:
        with pytest.raises(ToolError, match="unparseable-question"):
            await client.call_tool(
                "answer_hypothetical",
                {
                    "scene": scene,
                    "action_text": "remove the red cube",
                    "question": "what is the meaning of it",
                },
            )


async def test_generate_sample_is_deterministic():
    async with Client(mcp) as client:
        a = await client.call_tool("generate_sample", {"seed": 17})
        b = await client.call_tool("generate_sample", {"seed": 17, "hops_action": 2})
        again = await client.call_tool("generate_sample", {"seed": 17})
    assert a.structured_content == again.structured_content
    assert a.structured_content["split"] == "train"
    assert len(b.structured_content["action_types"]) == 2


async def test_generate_sample_bad_hops():
    async with Client(mcp) as client:
        with pytest.raises(ToolError, match="bad-hops"):
            await client.call_tool(
                "generate_sample", {"seed": 1, "hops_action": 2, "hops_question": 2}
            )


async def test_resources():
    async with Client(mcp) as client:
        taxonomy = json.loads((await client.read_resource("hypra://taxonomy"))[0].text)
        grammar = json.loads((await client.read_resource("hypra://grammar"))[0].text)
    assert taxonomy["attributes"]["color"][0] == "red"
    assert len(taxonomy["answers"]) == 27
    assert grammar["count"] == {"params": ["set"], "returns": "int"}
