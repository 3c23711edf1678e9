from fastmcp import FastMCP

from .logging import get_logger

APP_NAME = "hypra"
mcp = FastMCP(
    APP_NAME,
    instructions=(
        "Symbolic hypothetical-reasoning engine over small 3D object scenes. "
        "Parse and execute scene programs, validate scenes and answer "
        "'what if' questions about the scene after an action."
    ),
)
logger = get_logger("server")
