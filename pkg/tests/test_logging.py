"""Logger naming."""

from fastmcp.utilities.logging import get_logger as fastmcp_logger

from src.core.logging import get_logger


def test_loggers_live_under_fastmcp_namespace():
    log = get_logger("harness")
    assert log is fastmcp_logger("hypra.harness")
    assert log.name.endswith("hypra.harness")


def test_child_loggers_share_a_parent():
    assert get_logger("arl.train").name.startswith(get_logger("arl").name + ".")
