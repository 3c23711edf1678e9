"""
Tools package for the MCP server.

Tool modules are automatically discovered and loaded by src/core/loaders.py.
Each module imports ``mcp`` from ``core.app`` and registers its functions with
``@mcp.tool``; engine failures reach the client as ``ToolError("<code>: <message>")``.
"""

from contextlib import contextmanager
from typing import Iterator

from fastmcp.exceptions import ToolError

from ..core.errors import EngineError


@contextmanager
def engine_errors() -> Iterator[None]:
    try:
        yield
    except EngineError as e:
        raise ToolError(f"{e.code}: {e.message}") from e
