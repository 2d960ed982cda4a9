"""Twist-word and curve expressions.

Grammar::

    expr    := factor { ["·" | "*"] factor }
    factor  := primary [ "^" int ]
    primary := NAME | "1" | "[" word "]" | "(" expr ")" [ "(" curve ")" ]
    curve   := CURVE | "[" word "]" | "(" expr ")" "(" curve ")"
    int     := ["-"] digits

"1" is the identity; NAME is a twist (t11, t12, t2, t3, ...) or a macro (xi, iota2, iota);
CURVE is a named curve (c11, c12, c2, ...); a word is whitespace separated
generator tokens such as ``a1 b1^-1``.  ``(e)(c)`` is the image of the curve c
under the mapping class e, where the leftmost factor of e acts first.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .surface.model import format_word, parse_word


class ExpressionSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Product:
    factors: tuple["Node", ...]


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class CurveName:
    name: str


@dataclass(frozen=True)
class CurveWord:
    letters: tuple[int, ...]


@dataclass(frozen=True)
class Image:
    mapping: "Node"
    curve: "CurveNode"


Node = Union[Name, Product, Power, Image]
CurveNode = Union[CurveName, CurveWord, Image]

MACROS = ("xi", "iota2", "iota")
_TWIST = re.compile(r"t(\d+)$")
_CURVE = re.compile(r"c(\d+)$")


def is_curve(node) -> bool:
    return isinstance(node, (CurveName, CurveWord, Image))


# ------------------------------------------------------------------- lexer

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<int>-?\d+)|(?P<op>[()^\[\]*·]))"
)


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, twist_names: set[str] | None, curve_names: set[str] | None):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0
        self.twist_names = twist_names
        self.curve_names = curve_names

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op: str):
        kind, val, pos = self.take()
        if val != op or kind != "op":
            raise ExpressionSyntaxError(f"expected {op!r}", pos)

    def parse(self):
        kind, _, pos = self.peek()
        if kind == "end":
            raise ExpressionSyntaxError("empty expression", pos)
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            msg = "unbalanced ')'" if val == ")" else f"unexpected {val!r}"
            raise ExpressionSyntaxError(msg, pos)
        return node

    def expr(self):
        factors = [self.factor()]
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in ("*", "·"):
                self.take()
                factors.append(self.factor())
            elif kind == "name" or (kind == "op" and val in ("(", "[")) or (kind == "int" and val == "1"):
                factors.append(self.factor())
            else:
                break
        if len(factors) == 1:
            return factors[0]
        if any(is_curve(f) for f in factors):
            pos = self.peek()[2]
            raise ExpressionSyntaxError("a curve cannot be multiplied", pos)
        return Product(tuple(factors))

    def factor(self):
        base = self.primary()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise ExpressionSyntaxError("malformed exponent", pos)
            if is_curve(base):
                raise ExpressionSyntaxError("a curve cannot be raised to a power", pos)
            return Power(base, int(val))
        return base

    def primary(self):
        kind, val, pos = self.take()
        if kind == "name":
            return self.name(val, pos)
        if kind == "int" and val == "1":
            return Product(())
        if kind == "op" and val == "(":
            inner = self.expr()
            kind2, val2, pos2 = self.peek()
            if kind2 == "end":
                raise ExpressionSyntaxError("unbalanced '('", pos)
            self.expect(")")
            kind3, val3, _ = self.peek()
            if kind3 == "op" and val3 == "(" and not is_curve(inner):
                # "(e)(c)" is an image only when the second group is a curve;
                # otherwise it is juxtaposition of two groups
                save = self.i
                self.take()
                try:
                    curve = self.curve()
                    self.expect(")")
                except ExpressionSyntaxError:
                    if self._starts_curve(save + 1):
                        raise
                    self.i = save
                    return inner
                return Image(inner, curve)
            return inner
        if kind == "op" and val == "[":
            self.i -= 1
            return self.curve()
        if kind == "end":
            raise ExpressionSyntaxError("unexpected end of input", pos)
        raise ExpressionSyntaxError(f"unexpected {val!r}", pos)

    def _starts_curve(self, i: int) -> bool:
        kind, val, _ = self.toks[i]
        return (kind == "name" and bool(_CURVE.match(val))) or (kind == "op" and val == "[")

    def name(self, val: str, pos: int):
        m = _CURVE.match(val)
        if m:
            return self.curve_name(val, pos)
        if val in MACROS:
            return Name(val)
        if _TWIST.match(val):
            if self.twist_names is not None and val not in self.twist_names:
                raise ExpressionSyntaxError(f"unknown token {val!r}", pos)
            return Name(val)
        raise ExpressionSyntaxError(f"unknown token {val!r}", pos)

    def curve_name(self, val: str, pos: int):
        if self.curve_names is not None and val not in self.curve_names:
            raise ExpressionSyntaxError(f"unknown curve {val!r}", pos)
        return CurveName(val)

    def curve(self):
        kind, val, pos = self.peek()
        if kind == "name":
            self.take()
            if not _CURVE.match(val):
                raise ExpressionSyntaxError(f"expected a curve, got {val!r}", pos)
            return self.curve_name(val, pos)
        if kind == "op" and val == "[":
            self.take()
            start = self.toks[self.i][2]
            depth_end = self.text.find("]", start)
            if depth_end < 0:
                raise ExpressionSyntaxError("unbalanced '['", pos)
            try:
                letters = parse_word(self.text[start:depth_end])
            except ValueError as e:
                raise ExpressionSyntaxError(str(e), start) from None
            if not letters:
                raise ExpressionSyntaxError("empty curve word", start)
            while self.toks[self.i][2] < depth_end:
                self.i += 1
            self.expect("]")
            return CurveWord(letters)
        if kind == "op" and val == "(":
            node = self.primary()
            if not isinstance(node, Image):
                raise ExpressionSyntaxError("expected a curve", pos)
            return node
        raise ExpressionSyntaxError("expected a curve", pos)


def parse(text: str, twist_names: set[str] | None = None, curve_names: set[str] | None = None):
    """Parse a twist-word or curve expression.  When name sets are given, other
    twist or curve names are rejected."""
    return _Parser(text, twist_names, curve_names).parse()


def names_for_genus(g: int) -> tuple[set[str], set[str]]:
    ks = range(2, 2 * g + 2)
    twists = {"t11", "t12"} | {f"t{k}" for k in ks}
    curves = {"c11", "c12"} | {f"c{k}" for k in ks}
    return twists, curves


# ----------------------------------------------------------------- printer


def to_text(node) -> str:
    if isinstance(node, Name):
        return node.name
    if isinstance(node, CurveName):
        return node.name
    if isinstance(node, CurveWord):
        return f"[{format_word(node.letters)}]"
    if isinstance(node, Power):
        return f"{_wrap(node.base)}^{node.exponent}"
    if isinstance(node, Product):
        if not node.factors:
            return "1"
        return " ".join(_wrap_factor(f) for f in node.factors)
    if isinstance(node, Image):
        return f"({to_text(node.mapping)})({to_text(node.curve)})"
    raise TypeError(f"not an expression node: {node!r}")


def _wrap(node) -> str:
    if isinstance(node, Name):
        return node.name
    return f"({to_text(node)})"


def _wrap_factor(node) -> str:
    if isinstance(node, Product) and node.factors:
        return f"({to_text(node)})"
    return to_text(node)
