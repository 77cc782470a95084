"""Textual position language: parser, printer, and spec recognition.

Grammar (whitespace-insensitive)::

    position := term ("+" term)* | <empty>
    term     := "stalk(" NAT ")"
              | "flower(" NAT ";" NAT color ")"
              | "string(" colorseq ")"
              | "gflower(" NAT ";" blossom ")"
              | "graph{" edge* "}"
    blossom  := dyadic | "string(...)" | "graph{...}"
    dyadic   := ["-"] NAT ["/" NAT]
    edge     := "(" id id ("R"|"B"|"G") ")"
    color    := "R" | "B" ;  colorseq := ("R"|"B"|"G")+

Vertex ids matching ``g[0-9]+`` are ground vertices.  flower(h; k C) is a
stalk of height h supporting k loops of color C.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .core import (
    Color,
    Dyadic,
    Position,
    SumPosition,
    empty_position,
    generalized_flower,
    flower as flower_position,
    prune,
    stalk,
    string as string_position,
)
from .classify import FlowerSpec, SumSpec, sign_expansion
from .generate import is_shrub
from .oracle import Solver


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


# ============================================================================
# Terms
# ============================================================================

@dataclass(frozen=True)
class TermStalk:
    height: int


@dataclass(frozen=True)
class TermFlower:
    height: int
    petals: int
    color: Color


@dataclass(frozen=True)
class TermString:
    colors: tuple[Color, ...]


@dataclass(frozen=True)
class TermGFlower:
    height: int
    blossom: Union[Dyadic, "TermString", "TermGraph"]


@dataclass(frozen=True)
class TermGraph:
    edges: tuple[tuple[str, str, Color], ...]


Term = Union[TermStalk, TermFlower, TermString, TermGFlower, TermGraph]

_GROUND_ID = re.compile(r"g[0-9]+\Z")


@dataclass(frozen=True)
class PositionDoc:
    """A parsed position: the source text plus its term list."""

    source: str
    terms: tuple[Term, ...]

    def sum_position(self) -> SumPosition:
        return SumPosition(tuple(term_to_position(t) for t in self.terms))

    def position(self) -> Position:
        return self.sum_position().flatten()

    def to_spec(self, solver: Solver | None = None) -> SumSpec | None:
        """Recognize the document as a sum of shrubs, generalized flowers
        and stalks; None when some term does not fit that shape."""
        solver = solver or Solver()
        parts = []
        for term in self.terms:
            comp = _term_to_component(term, solver)
            if comp is None:
                return None
            parts.append(comp)
        return SumSpec(tuple(parts))


# ============================================================================
# Lexer
# ============================================================================

_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|[0-9]+|[(){};+/\-]|\S")


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    column: int


def _lex(source: str) -> list[_Token]:
    tokens = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(source):
        ch = source[pos]
        if ch == "\n":
            line += 1
            line_start = pos + 1
            pos += 1
            continue
        if ch.isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(source, pos)
        text = m.group()
        col = pos - line_start + 1
        if not (text[0].isalnum() or text[0] == "_" or text in "(){};+/-"):
            raise ParseError(f"unexpected character {text!r}", line, col)
        tokens.append(_Token(text, line, col))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = _lex(source)
        self.pos = 0

    def _here(self) -> tuple[int, int]:
        if self.pos < len(self.tokens):
            t = self.tokens[self.pos]
            return t.line, t.column
        if self.tokens:
            t = self.tokens[-1]
            return t.line, t.column + len(t.text)
        return 1, 1

    def fail(self, message: str):
        line, col = self._here()
        raise ParseError(message, line, col)

    def peek(self) -> str | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos].text
        return None

    def take(self, expected: str | None = None) -> str:
        text = self.peek()
        if text is None:
            self.fail(f"expected {expected!r}, found end of input")
        if expected is not None and text != expected:
            self.fail(f"expected {expected!r}, found {text!r}")
        self.pos += 1
        return text

    def take_nat(self) -> int:
        text = self.peek()
        if text is None or not text.isdigit():
            self.fail("expected a number")
        self.pos += 1
        return int(text)

    # -- grammar ---------------------------------------------------------

    def parse_doc(self) -> PositionDoc:
        terms = []
        if self.peek() is not None:
            terms.append(self.parse_term())
            while self.peek() == "+":
                self.take("+")
                terms.append(self.parse_term())
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek()!r}")
        return PositionDoc(self.source, tuple(terms))

    def parse_term(self) -> Term:
        head = self.peek()
        if head == "stalk":
            self.take()
            self.take("(")
            n = self.take_nat()
            self.take(")")
            return TermStalk(n)
        if head == "flower":
            self.take()
            self.take("(")
            h = self.take_nat()
            if h < 1:
                self.fail("flower height must be at least 1")
            self.take(";")
            k = self.take_nat()
            color = self.take()
            if color == "G":
                self.fail("flower petals must be red or blue")
            if color not in ("R", "B"):
                self.fail(f"expected a color R or B, found {color!r}")
            self.take(")")
            return TermFlower(h, k, Color(color))
        if head == "string":
            self.take()
            self.take("(")
            seq = self.take()
            if not all(c in "RBG" for c in seq):
                self.fail(f"color sequence must use R, B, G, found {seq!r}")
            self.take(")")
            return TermString(tuple(Color(c) for c in seq))
        if head == "gflower":
            self.take()
            self.take("(")
            h = self.take_nat()
            if h < 1:
                self.fail("flower height must be at least 1")
            self.take(";")
            blossom = self.parse_blossom()
            self.take(")")
            return TermGFlower(h, blossom)
        if head == "graph":
            self.take()
            self.take("{")
            edges = []
            while self.peek() == "(":
                self.take("(")
                u = self.take()
                v = self.take()
                color = self.take()
                if color not in ("R", "B", "G"):
                    self.fail(f"expected a color R, B or G, found {color!r}")
                self.take(")")
                edges.append((u, v, Color(color)))
            self.take("}")
            return TermGraph(tuple(edges))
        self.fail(f"expected a term, found {head!r}")

    def parse_blossom(self):
        head = self.peek()
        if head in ("string", "graph"):
            term = self.parse_term()
            colors = (
                term.colors
                if isinstance(term, TermString)
                else tuple(c for _, _, c in term.edges)
            )
            if Color.GREEN in colors:
                self.fail("green color inside flower blossom")
            return term
        negative = False
        if head == "-":
            self.take("-")
            negative = True
        num = self.take_nat()
        if negative:
            num = -num
        if self.peek() == "/":
            self.take("/")
            den = self.take_nat()
            if den <= 0 or den & (den - 1):
                self.fail(f"denominator must be a power of two, found {den}")
            return Dyadic(num, den.bit_length() - 1)
        return Dyadic(num)


def parse(text: str) -> PositionDoc:
    return _Parser(text).parse_doc()


# ============================================================================
# Printer (round-trips through parse)
# ============================================================================

def print_term(term: Term) -> str:
    if isinstance(term, TermStalk):
        return f"stalk({term.height})"
    if isinstance(term, TermFlower):
        return f"flower({term.height}; {term.petals} {term.color.value})"
    if isinstance(term, TermString):
        return "string({})".format("".join(c.value for c in term.colors))
    if isinstance(term, TermGFlower):
        if isinstance(term.blossom, Dyadic):
            return f"gflower({term.height}; {term.blossom})"
        return f"gflower({term.height}; {print_term(term.blossom)})"
    if isinstance(term, TermGraph):
        body = "".join(f"({u} {v} {c.value})" for u, v, c in term.edges)
        return "graph{" + body + "}"
    raise TypeError(f"not a term: {term!r}")


def print_doc(doc: PositionDoc | tuple) -> str:
    terms = doc.terms if isinstance(doc, PositionDoc) else tuple(doc)
    return "+".join(print_term(t) for t in terms)


# ============================================================================
# Realization and spec recognition
# ============================================================================

def _graph_to_position(term: TermGraph) -> Position:
    ids: dict[str, int] = {}
    ground = set()
    for u, v, _ in term.edges:
        for name in (u, v):
            if name not in ids:
                ids[name] = len(ids)
                if _GROUND_ID.match(name):
                    ground.add(ids[name])
    if not term.edges:
        return empty_position()
    if not ground:
        raise ParseError("graph needs a ground vertex (ids g0, g1, ...)", 1, 1)
    return prune(
        tuple((ids[u], ids[v], c) for u, v, c in term.edges), frozenset(ground)
    )


def term_to_position(term: Term) -> Position:
    if isinstance(term, TermStalk):
        return stalk(term.height)
    if isinstance(term, TermFlower):
        return flower_position(term.height, term.petals, term.color)
    if isinstance(term, TermString):
        return string_position(term.colors)
    if isinstance(term, TermGFlower):
        if isinstance(term.blossom, Dyadic):
            if term.blossom == 0:
                return stalk(term.height)
            crown = string_position(sign_expansion(term.blossom))
        else:
            crown = term_to_position(term.blossom)
        return generalized_flower(term.height, crown)
    if isinstance(term, TermGraph):
        return _graph_to_position(term)
    raise TypeError(f"not a term: {term!r}")


def _term_to_component(term: Term, solver: Solver):
    """Map a term onto a shrub / flower spec / stalk height, or None."""
    if isinstance(term, TermStalk):
        return term.height
    if isinstance(term, TermFlower):
        if term.petals == 0:
            return term.height
        value = Dyadic(term.petals if term.color is Color.BLUE else -term.petals)
        return FlowerSpec(term.height, value)
    if isinstance(term, TermString):
        colors = term.colors
        stem = 0
        while stem < len(colors) and colors[stem] is Color.GREEN:
            stem += 1
        rest = colors[stem:]
        if Color.GREEN in rest:
            return None  # green above colored edges: not a flower shape
        if not rest:
            return stem
        if stem == 0:
            return None  # bare red-blue string: no stem to stand on
        value = solver.redblue_value(string_position(rest))
        return FlowerSpec(stem, value)
    if isinstance(term, TermGFlower):
        if isinstance(term.blossom, Dyadic):
            return FlowerSpec(term.height, term.blossom)
        crown = term_to_position(term.blossom)
        return FlowerSpec(term.height, solver.redblue_value(crown))
    if isinstance(term, TermGraph):
        p = _graph_to_position(term)
        if p.is_empty():
            return 0
        if is_shrub(p):
            return p
        return None
    return None


def spec_to_doc(spec: SumSpec) -> PositionDoc:
    """Render a spec sum as DSL terms (shrubs print as graphs)."""
    terms: list[Term] = []
    for comp in spec.components:
        if isinstance(comp, int):
            terms.append(TermStalk(comp))
        elif isinstance(comp, FlowerSpec):
            terms.append(TermGFlower(comp.height, comp.blossom))
        elif isinstance(comp, Position):
            names = {}
            for g in sorted(comp.ground):
                names[g] = f"g{len(names)}"
            for v in sorted(comp.vertices):
                if v not in names:
                    names[v] = f"v{len(names)}"
            terms.append(
                TermGraph(tuple((names[u], names[v], c) for u, v, c in comp.edges))
            )
        else:
            raise TypeError(f"not a spec component: {comp!r}")
    return PositionDoc(print_doc(terms), tuple(terms))
