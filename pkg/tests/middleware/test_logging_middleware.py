"""Tests for logging middleware."""

import asyncio
import logging
from unittest.mock import AsyncMock

import mcp.types as mt
import pytest
from fastmcp.exceptions import ToolError
from fastmcp.server.middleware import MiddlewareContext
from fastmcp.tools.tool import ToolResult

from src.middleware import logging_middleware
from src.middleware.logging_middleware import LoggingMiddleware


def _context(name: str, arguments: dict | None = None) -> MiddlewareContext:
    return MiddlewareContext(
        message=mt.CallToolRequestParams(name=name, arguments=arguments or {}),
        method="tools/call",
    )


@pytest.fixture
def captured(caplog):
    """Attach caplog to the middleware logger; FastMCP loggers may not propagate."""
    logger = logging_middleware.log
    logger.addHandler(caplog.handler)
    with caplog.at_level(logging.ERROR, logger=logger.name):
        yield caplog
    logger.removeHandler(caplog.handler)


@pytest.mark.asyncio
async def test_logging_middleware_success():
    """Test middleware passes results through and counts the call."""
    middleware = LoggingMiddleware()
    context = _context("parse_program", {"text": "count(scene())"})

    mock_result = ToolResult(content=[{"type": "text", "text": "ok"}])
    call_next = AsyncMock(return_value=mock_result)

    result = await middleware.on_call_tool(context, call_next)

    assert result == mock_result
    call_next.assert_called_once_with(context)
    assert middleware.stats() == {"parse_program": {"calls": 1, "failures": 0}}


@pytest.mark.asyncio
async def test_logging_middleware_error(captured):
    """Test middleware logs the engine error code and re-raises."""
    middleware = LoggingMiddleware()
    context = _context("execute_question")
    call_next = AsyncMock(side_effect=ToolError("non-unique: 2 objects match"))

    with pytest.raises(ToolError, match="non-unique"):
        await middleware.on_call_tool(context, call_next)

    call_next.assert_called_once()
    assert "code=non-unique" in captured.text
    assert middleware.failures["execute_question"] == 1


@pytest.mark.asyncio
async def test_logging_middleware_plain_exception(captured):
    """Errors without a code are reported by type."""
    middleware = LoggingMiddleware()
    call_next = AsyncMock(side_effect=ValueError("boom"))

    with pytest.raises(ValueError):
        await middleware.on_call_tool(_context("check_scene"), call_next)

    assert "code=ValueError" in captured.text


@pytest.mark.asyncio
async def test_logging_middleware_timing():
    """Test middleware awaits slow handlers and counts repeated calls."""
    middleware = LoggingMiddleware()

    async def slow_handler(ctx):
        await asyncio.sleep(0.01)
        return ToolResult(content=[{"type": "text", "text": "result"}])

    for _ in range(2):
        result = await middleware.on_call_tool(
            _context("generate_sample"), slow_handler
        )
        assert result is not None

    assert middleware.calls["generate_sample"] == 2
