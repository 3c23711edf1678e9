import sys
from pathlib import Path

from fastmcp import FastMCP

from src.core.app import mcp
from src.core.loaders import load_all, load_middleware, load_resources, load_tools


def test_load_tools_and_resources(tmp_path: Path):
    # Create temp dirs that mimic project layout
    src_base = tmp_path / "src"
    tools_dir = src_base / "tools"
    resources_dir = src_base / "resources"
    nested = resources_dir / "nested"

    tools_dir.mkdir(parents=True)
    nested.mkdir(parents=True)

    (tools_dir / "t1.py").write_text(
        "from src.core.app import mcp\n"
        "@mcp.tool\n"
        "def loader_sample_t1(x: int) -> int:\n"
        "    return x + 1\n"
    )
    (resources_dir / "r1.py").write_text(
        "from src.core.app import mcp\n"
        "@mcp.resource(\"resource://loader-sample-r1\")\n"
        "def r1() -> str:\n"
        "    return 'ok'\n"
    )
    (nested / "r2.py").write_text(
        "from src.core.app import mcp\n"
        "@mcp.resource(\"resource://loader-sample-r2\")\n"
        "def r2() -> str:\n"
        "    return 'ok'\n"
    )

    # Ensure import path includes temp directory so src.* imports work
    sys.path.insert(0, str(tmp_path))

    assert load_tools(mcp, tools_dir) == 1
    assert load_resources(mcp, resources_dir) == 2


def test_missing_directories(tmp_path: Path):
    server = FastMCP("empty")
    assert load_all(server, tmp_path) == {"tools": 0, "resources": 0, "middleware": 0}


def test_broken_module_is_skipped(tmp_path: Path):
    tools_dir = tmp_path / "tools"
    tools_dir.mkdir()
    (tools_dir / "broken.py").write_text("raise RuntimeError('nope')\n")
    assert load_tools(mcp, tools_dir) == 0


def test_middleware_registers_local_classes_only(tmp_path: Path):
    middleware_dir = tmp_path / "middleware"
    middleware_dir.mkdir()
    (middleware_dir / "extra.py").write_text(
        "from fastmcp.server.middleware import Middleware\n"
        "from src.middleware.logging_middleware import LoggingMiddleware\n\n"
        "class CountingMiddleware(Middleware):\n"
        "    pass\n"
    )
    server = FastMCP("loader-test")
    assert load_middleware(server, middleware_dir) == 1


def test_project_tree_loads():
    server = FastMCP("tree")
    counts = load_all(server, Path(__file__).resolve().parent.parent / "src")
    assert counts["tools"] >= 3
    assert counts["resources"] >= 1
    assert counts["middleware"] == 1
