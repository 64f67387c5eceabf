"""Text form of G(E) elements.

Grammar (whitespace is ignored)::

    expr := term ('*' term)*
    term := '0' | '[' path '|' path ']' | 'inv' '(' expr ')' | '(' expr ')' | path
    path := '@' id | id ('.' id)*

``[x|y]`` is ``x y^-1``; a bare path ``x`` is ``[x|@r(x)]``.
"""

from __future__ import annotations

import re

from .algebra import ZERO, Element, PathPair, inv, mul, path_element
from .graph import GraphError, Path, make_path

__all__ = ["ParseError", "format_element", "parse_element", "parse_path"]


class ParseError(ValueError):
    def __init__(self, pos: int, message: str):
        super().__init__(f"at position {pos}: {message}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<id>[A-Za-z][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<sym>[\[\]|()*.@]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if mt is None:
            pos += len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(pos, f"unexpected character {text[pos]!r}")
        kind = mt.lastgroup
        out.append((kind, mt.group(kind), mt.start(kind)))
        pos = mt.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, graph):
        self.toks = _tokenize(text)
        self.i = 0
        self.graph = graph

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self, value: str | None = None, kind: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(tok[2], f"expected {want!r}, got {got!r}")
        self.i += 1
        return tok

    def expr(self) -> Element:
        acc = self.term()
        while self.peek()[1] == "*":
            self.take("*")
            acc = mul(acc, self.term())
        return acc

    def term(self) -> Element:
        kind, value, pos = self.peek()
        if kind == "num":
            if value != "0":
                raise ParseError(pos, f"only the number 0 is an element, not {value}")
            self.take()
            return ZERO
        if value == "[":
            self.take("[")
            x = self.path()
            self.take("|")
            y = self.path()
            self.take("]")
            if x.end != y.end:
                raise ParseError(pos, f"ranges of {x} and {y} differ")
            return PathPair(x, y)
        if value == "(":
            self.take("(")
            a = self.expr()
            self.take(")")
            return a
        if kind == "id" and value == "inv" and self.toks[self.i + 1][1] == "(":
            self.take()
            self.take("(")
            a = self.expr()
            self.take(")")
            return inv(a)
        return path_element(self.path())

    def path(self) -> Path:
        kind, value, pos = self.peek()
        try:
            if value == "@":
                self.take("@")
                v = self.take(kind="id")[1]
                return make_path(self.graph, (), base=v)
            edges = [self.take(kind="id")[1]]
            while self.peek()[1] == ".":
                self.take(".")
                edges.append(self.take(kind="id")[1])
            return make_path(self.graph, edges)
        except GraphError as exc:
            raise ParseError(pos, str(exc)) from None


def parse_element(text: str, graph) -> Element:
    p = _Parser(text, graph)
    a = p.expr()
    p.take(kind="end")
    return a


def parse_path(text: str, graph) -> Path:
    p = _Parser(text, graph)
    x = p.path()
    p.take(kind="end")
    return x


def format_element(a: Element) -> str:
    return str(a)
