"""Canonical program text: no whitespace, enum literals by value."""

from enum import Enum

from .ast import Node


def _literal(value) -> str:
    if isinstance(value, Enum):
        return value.value
    text = repr(float(value))
    return text


def render_program(p: Node) -> str:
    parts = [render_program(a) if isinstance(a, Node) else _literal(a) for a in p.args]
    return f"{p.op}({','.join(parts)})"
