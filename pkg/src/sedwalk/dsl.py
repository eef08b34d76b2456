"""Tiny expression language for naming graphs on the command line.

Grammar (whitespace between tokens is ignored)::

    expr    := call
    call    := NAME "(" args ")"
    args    := arg ("," arg)* [";" "start" "=" ("O" | "K")]

where leaf constructors take integers and operators take sub-expressions:

    K(n)  O(n)  P(n)  C(n)  CP(2k)  KM(n1,...,nk)
    Gamma(m1,...,mh; start=O|K)
    join(a, b)  dprod(a, b)  cprod(a, b)  blowup(m, a)

``Gamma`` defaults to ``start=O`` (first cell empty).  All errors are
ValueError with a position, so callers can report parse failures cleanly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .graphs import (
    WeightedGraph,
    blow_up,
    cartesian_product,
    cocktail_party,
    complete,
    complete_multipartite,
    cycle,
    direct_product,
    empty,
    join,
    path,
    threshold,
)

__all__ = ["parse_graph", "GRAPH_NAMES"]

GRAPH_NAMES = (
    "K",
    "O",
    "P",
    "C",
    "CP",
    "KM",
    "Gamma",
    "join",
    "dprod",
    "cprod",
    "blowup",
)

_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z]+)|(?P<int>\d+)|(?P<sym>[(),;=]))")


@dataclass(frozen=True)
class _Token:
    kind: str  # "name" | "int" | "sym" | "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.lastgroup is None:
            stray = text[pos:].lstrip()
            if not stray:
                break
            raise ValueError(f"unexpected character {stray[0]!r} at position {pos}")
        tokens.append(_Token(m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> _Token:
        tok = self.next()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            raise ValueError(f"expected {want!r} at position {tok.pos}, got {tok.text!r}")
        return tok

    def parse(self) -> WeightedGraph:
        g = self.expr()
        tail = self.peek()
        if tail.kind != "end":
            raise ValueError(f"trailing input at position {tail.pos}: {tail.text!r}")
        return g

    def expr(self) -> WeightedGraph:
        tok = self.next()
        if tok.kind != "name":
            raise ValueError(f"expected a graph name at position {tok.pos}, got {tok.text!r}")
        name = tok.text
        if name not in GRAPH_NAMES:
            raise ValueError(f"unknown graph constructor {name!r} (known: {', '.join(GRAPH_NAMES)})")
        self.expect("sym", "(")
        builder = getattr(self, f"_build_{name}")
        g = builder(tok.pos)
        self.expect("sym", ")")
        return g

    # -- argument helpers ---------------------------------------------

    def int_arg(self) -> int:
        tok = self.next()
        if tok.kind != "int":
            raise ValueError(f"expected an integer at position {tok.pos}, got {tok.text!r}")
        return int(tok.text)

    def int_list(self) -> list[int]:
        out = [self.int_arg()]
        while self.peek().kind == "sym" and self.peek().text == ",":
            self.next()
            out.append(self.int_arg())
        return out

    def _comma(self) -> None:
        self.expect("sym", ",")

    # -- constructors ---------------------------------------------------

    def _build_K(self, pos: int) -> WeightedGraph:
        return complete(self.int_arg())

    def _build_O(self, pos: int) -> WeightedGraph:
        return empty(self.int_arg())

    def _build_P(self, pos: int) -> WeightedGraph:
        return path(self.int_arg())

    def _build_C(self, pos: int) -> WeightedGraph:
        return cycle(self.int_arg())

    def _build_CP(self, pos: int) -> WeightedGraph:
        m = self.int_arg()
        if m % 2 != 0 or m < 2:
            raise ValueError(f"CP takes a positive even vertex count, got {m}")
        return cocktail_party(m // 2)

    def _build_KM(self, pos: int) -> WeightedGraph:
        return complete_multipartite(self.int_list())

    def _build_Gamma(self, pos: int) -> WeightedGraph:
        cells = self.int_list()
        starts_empty = True
        if self.peek().text == ";":
            self.next()
            self.expect("name", "start")
            self.expect("sym", "=")
            tok = self.next()
            if tok.text == "O":
                starts_empty = True
            elif tok.text == "K":
                starts_empty = False
            else:
                raise ValueError(f"start= takes O or K, got {tok.text!r} at position {tok.pos}")
        return threshold(cells, starts_empty=starts_empty)

    def _build_join(self, pos: int) -> WeightedGraph:
        a = self.expr()
        self._comma()
        return join(a, self.expr())

    def _build_dprod(self, pos: int) -> WeightedGraph:
        a = self.expr()
        self._comma()
        return direct_product(a, self.expr())

    def _build_cprod(self, pos: int) -> WeightedGraph:
        a = self.expr()
        self._comma()
        return cartesian_product(a, self.expr())

    def _build_blowup(self, pos: int) -> WeightedGraph:
        m = self.int_arg()
        self._comma()
        return blow_up(m, self.expr())


def parse_graph(text: str) -> WeightedGraph:
    """Build the graph named by a DSL expression such as ``join(O(2),K(6))``."""
    if not text or not text.strip():
        raise ValueError("empty graph expression")
    return _Parser(text).parse()
