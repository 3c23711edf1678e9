"""Logging middleware for tracking tool invocations."""

import time
from collections import Counter

import mcp.types as mt
from fastmcp.server.middleware import CallNext, Middleware, MiddlewareContext
from fastmcp.tools.tool import ToolResult

from ..core.logging import get_logger

log = get_logger("middleware.logging")


class LoggingMiddleware(Middleware):
    """Log every tool call with its duration, and count calls and failures per tool.

    Failures are logged with the engine error code when the tool reports one
    (``ToolError("<code>: <message>")``).
    """

    def __init__(self) -> None:
        self.calls: Counter[str] = Counter()
        self.failures: Counter[str] = Counter()

    async def on_call_tool(
        self,
        context: MiddlewareContext[mt.CallToolRequestParams],
        call_next: CallNext[mt.CallToolRequestParams, ToolResult],
    ) -> ToolResult:
        tool_name = context.message.name
        self.calls[tool_name] += 1
        start_time = time.perf_counter()
        log.info(f"Tool invoked: {tool_name}")
        log.debug(f"Tool arguments: {context.message.arguments}")
        try:
            result = await call_next(context)
        except Exception as e:
            self.failures[tool_name] += 1
            duration = time.perf_counter() - start_time
            code = str(e).split(":", 1)[0] if ":" in str(e) else type(e).__name__
            log.error(
                f"Tool failed: {tool_name} (duration: {duration:.3f}s) "
                f"code={code} - {e}"
            )
            raise
        duration = time.perf_counter() - start_time
        log.info(f"Tool completed: {tool_name} (duration: {duration:.3f}s)")
        return result

    def stats(self) -> dict[str, dict[str, int]]:
        return {
            name: {"calls": self.calls[name], "failures": self.failures[name]}
            for name in sorted(self.calls)
        }
