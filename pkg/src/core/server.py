from pathlib import Path
from typing import Optional

from .app import mcp
from .config import HarnessConfig
from .loaders import load_all
from .logging import configure_logging, get_logger

log = get_logger("bootstrap")


class HypraServer:
    """MCP server over the symbolic stack, configured by the ``run.*`` section."""

    def __init__(
        self, cfg: Optional[HarnessConfig] = None, src_root: Optional[Path] = None
    ) -> None:
        self.cfg = cfg or HarnessConfig()
        configure_logging(self.cfg.run.log_level)
        self.src_root = src_root or Path(__file__).resolve().parent.parent
        self.mcp = mcp
        self.counts: dict[str, int] = {}

    def load(self) -> dict[str, int]:
        self.counts = load_all(self.mcp, self.src_root)
        return self.counts

    def run(self) -> None:
        run = self.cfg.run
        if run.server_transport == "http":
            log.info(
                "Starting hypra HTTP server at "
                f"http://{run.server_host}:{run.server_port}{run.server_path}"
            )
            self.mcp.run(
                transport="http",
                host=run.server_host,
                port=run.server_port,
                path=run.server_path,
            )
        else:
            log.info("Starting hypra in STDIO mode")
            self.mcp.run(transport="stdio")
