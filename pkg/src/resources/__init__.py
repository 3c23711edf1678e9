"""
Resources package for the MCP server.

Resource modules are automatically discovered and loaded by src/core/loaders.py.

To add a new resource:
1. Create a new .py file in this directory or any subdirectory
2. Import mcp from core.app: from ..core.app import mcp
3. Define your resource function with @mcp.resource("hypra://...") decorator
4. The loader will automatically discover and import it

Resources here serve read-only reference data (taxonomy, program grammar)
as JSON text.
"""
