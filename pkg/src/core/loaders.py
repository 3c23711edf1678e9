import importlib
import importlib.util
import sys
from pathlib import Path
from typing import Iterable

from fastmcp import FastMCP

from .logging import get_logger

log = get_logger("loaders")


def _module_files(base: Path, recursive: bool) -> Iterable[Path]:
    files = base.rglob("*.py") if recursive else base.glob("*.py")
    return sorted(f for f in files if f.name != "__init__.py")


def _import(package: str, base: Path, py_file: Path):
    """Import ``py_file`` as ``src.<package>.<dotted path>``, falling back to a
    synthetic module name when the package import is not resolvable."""
    rel = py_file.relative_to(base)
    suffix = ".".join([*rel.parts[:-1], rel.stem])
    try:
        return importlib.import_module(f"src.{package}.{suffix}")
    except ImportError:
        name = f"src_{package}__{suffix.replace('.', '__')}"
        spec = importlib.util.spec_from_file_location(name, str(py_file))
        if spec is None or spec.loader is None:
            raise
        module = importlib.util.module_from_spec(spec)
        sys.modules[name] = module
        spec.loader.exec_module(module)
        return module


def _load_modules(package: str, base: Path, recursive: bool = False) -> int:
    added = 0
    if not base.exists():
        return 0
    for py_file in _module_files(base, recursive):
        try:
            module = _import(package, base, py_file)
            log.info(f"Loaded {package} module: {module.__name__}")
            added += 1
        except Exception:
            log.exception(f"Failed to load {package} module: {py_file}")
    return added


def load_tools(mcp: FastMCP, tools_dir: Path) -> int:
    """Import every ``tools/*.py``; the ``@mcp.tool`` decorators register on import."""
    return _load_modules("tools", tools_dir)


def load_resources(mcp: FastMCP, resources_dir: Path) -> int:
    """Import ``resources/**/*.py``; subdirectories become dotted module names."""
    return _load_modules("resources", resources_dir, recursive=True)


def load_middleware(mcp: FastMCP, middleware_dir: Path) -> int:
    """Import ``middleware/*.py`` and register one instance per Middleware subclass."""
    from fastmcp.server.middleware import Middleware

    added = 0
    if not middleware_dir.exists():
        return 0
    for py_file in _module_files(middleware_dir, recursive=False):
        try:
            module = _import("middleware", middleware_dir, py_file)
        except Exception:
            log.exception(f"Failed to load middleware from: {py_file}")
            continue
        for name in dir(module):
            obj = getattr(module, name)
            if not isinstance(obj, type) or obj is Middleware:
                continue
            if not issubclass(obj, Middleware):
                continue
            # only classes defined here, not ones imported from elsewhere
            if obj.__module__ != module.__name__:
                continue
            try:
                mcp.add_middleware(obj())
                log.info(f"Registered middleware: {name} from {module.__name__}")
                added += 1
            except Exception:
                log.exception(f"Failed to instantiate middleware {name}")
    return added


def load_all(mcp: FastMCP, src_base: Path) -> dict[str, int]:
    counts = {
        "tools": load_tools(mcp, src_base / "tools"),
        "resources": load_resources(mcp, src_base / "resources"),
        "middleware": load_middleware(mcp, src_base / "middleware"),
    }
    log.info(f"Loaded: {counts}")
    return counts
