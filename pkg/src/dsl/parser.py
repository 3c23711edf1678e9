"""Recursive-descent parser and type checker for nested call syntax.

Grammar (whitespace-insensitive)::

    expr := NAME "(" [arg ("," arg)*] ")"
    arg  := expr | NAME | NUMBER
"""

import math
import re
from dataclasses import dataclass
from typing import Literal as TypingLiteral

from ..core.errors import ProgramSyntaxError, ProgramTypeError
from .ast import LITERAL_KINDS, QUESTION_KINDS, SIGNATURES, Kind, Node

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<number>-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[(),])"
    r")"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    offset: int


@dataclass(frozen=True)
class _Raw:
    name: str
    args: tuple
    offset: int
    is_call: bool


def _tokenize(text: str) -> list[_Tok]:
    try:
        text.encode("ascii")
    except UnicodeEncodeError as e:
        raise ProgramSyntaxError("non-ASCII character", e.start) from e
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            offset = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ProgramSyntaxError(f"unexpected character {text[offset]!r}", offset)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str) -> None:
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str, text: str | None = None) -> _Tok:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            got = tok.text or "end of input"
            raise ProgramSyntaxError(f"expected {want!r}, got {got!r}", tok.offset)
        self.i += 1
        return tok

    def parse(self) -> _Raw:
        node = self.expr()
        self.take("eof")
        return node

    def expr(self) -> _Raw:
        name = self.take("name")
        self.take("punct", "(")
        args = []
        if not (self.peek().kind == "punct" and self.peek().text == ")"):
            args.append(self.arg())
            while self.peek().kind == "punct" and self.peek().text == ",":
                self.take("punct", ",")
                args.append(self.arg())
        self.take("punct", ")")
        return _Raw(name.text, tuple(args), name.offset, True)

    def arg(self) -> _Raw:
        tok = self.peek()
        if tok.kind == "number":
            self.i += 1
            return _Raw(tok.text, (), tok.offset, False)
        if tok.kind == "name":
            nxt = self.toks[self.i + 1]
            if nxt.kind == "punct" and nxt.text == "(":
                return self.expr()
            self.i += 1
            return _Raw(tok.text, (), tok.offset, False)
        got = tok.text or "end of input"
        raise ProgramSyntaxError(f"expected an argument, got {got!r}", tok.offset)


def _literal(raw: _Raw, kind: Kind, where: str):
    if raw.is_call:
        raise ProgramTypeError(
            where, f"expected a {kind.value} literal, got call {raw.name}()"
        )
    target = LITERAL_KINDS[kind]
    if target is float:
        try:
            value = float(raw.name)
        except ValueError:
            raise ProgramTypeError(where, f"{raw.name} is not a number") from None
        if not math.isfinite(value):
            raise ProgramTypeError(where, f"{raw.name} is not a finite number")
        return value
    try:
        return target(raw.name)
    except ValueError:
        raise ProgramTypeError(
            where, f"{raw.name} is not a {kind.value.capitalize()}"
        ) from None


def _check(raw: _Raw, expected: Kind | None, seq_depth: int = 0) -> Node:
    if not raw.is_call:
        raise ProgramTypeError(raw.name, "bare word where a call was expected")
    sig = SIGNATURES.get(raw.name)
    if sig is None:
        raise ProgramTypeError(raw.name, "unknown function")
    params, result = sig
    if expected is not None and result is not expected:
        raise ProgramTypeError(
            raw.name, f"returns {result.value}, expected {expected.value}"
        )
    if len(raw.args) != len(params):
        raise ProgramTypeError(
            raw.name, f"takes {len(params)} arguments, got {len(raw.args)}"
        )
    if raw.name == "seq":
        if seq_depth >= 1:
            raise ProgramTypeError(raw.name, "seq nests at most two actions")
        seq_depth += 1
    args = []
    for pos, (param, arg) in enumerate(zip(params, raw.args)):
        where = f"{raw.name}#{pos}"
        if param in LITERAL_KINDS:
            args.append(_literal(arg, param, where))
        else:
            args.append(_check(arg, param, seq_depth))
    node = Node(raw.name, tuple(args))
    if raw.name == "relative" and node.args[0].value == "on":
        raise ProgramTypeError(
            "relative", "use on(set) for stacking, not relative(on, set)"
        )
    return node


RootKind = TypingLiteral["question", "action"]


def parse_program(text: str, expect: RootKind | None = None) -> Node:
    raw = _Parser(text).parse()
    node = _check(raw, None)
    kind = node.kind
    if expect == "question" and kind not in QUESTION_KINDS:
        raise ProgramTypeError(node.op, f"{kind.value}-valued root is not a question")
    if expect == "action" and kind is not Kind.ACTION:
        raise ProgramTypeError(node.op, f"{kind.value}-valued root is not an action")
    if kind not in QUESTION_KINDS and kind is not Kind.ACTION:
        raise ProgramTypeError(
            node.op, f"{kind.value}-valued root is neither a question nor an action"
        )
    return node


def root_kind(node: Node) -> RootKind:
    return "action" if node.kind is Kind.ACTION else "question"
