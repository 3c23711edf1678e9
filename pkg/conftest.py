"""Pytest configuration for hypra.

This file is placed at the project root so the project directory (for
``src.*`` imports) and the src directory are on Python's path before any
test modules are imported.
"""

import sys
from pathlib import Path

project_root = Path(__file__).parent
src_path = project_root / "src"

for path in (project_root, src_path):
    if str(path) not in sys.path:
        sys.path.insert(0, str(path))
