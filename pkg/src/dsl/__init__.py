"""Functional-program language: AST, parser, printer and executor."""

from .ast import (
    ACTION_TYPES,
    SIGNATURES,
    Kind,
    Node,
    action_types,
    chain_attributes,
    filter_chain,
)
from .executor import exec_action, exec_question
from .parser import parse_program, root_kind
from .printer import render_program

__all__ = [
    "ACTION_TYPES",
    "SIGNATURES",
    "Kind",
    "Node",
    "action_types",
    "chain_attributes",
    "exec_action",
    "exec_question",
    "filter_chain",
    "parse_program",
    "render_program",
    "root_kind",
]
