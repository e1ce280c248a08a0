"""Polynomial expression parsing and canonical printing.

The grammar is deliberately small: x, y, rational literals (5, 5.25, 1/3),
+, binary and unary -, explicit *, ^ with non-negative integer exponents
(right associative), and parentheses.  Juxtaposition is not multiplication,
so "xy" is an unknown identifier rather than a silent product.  All
arithmetic during expansion is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (
    ExprSyntaxError,
    NegativeExponentError,
    NotHomogeneousError,
    UnknownIdentifierError,
)
from .polyring import BivariatePoly, HomogeneousForm


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Var:
    name: str                # "x" or "y"


@dataclass(frozen=True)
class RationalLit:
    value: Fraction


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Sum:
    left: "Node"
    right: "Node"
    subtract: bool


@dataclass(frozen=True)
class Product:
    left: "Node"
    right: "Node"
    offset: int = 0


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int
    offset: int = 0


@dataclass(frozen=True)
class Group:
    inner: "Node"


Node = Union[Var, RationalLit, Neg, Sum, Product, Power, Group]


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:\.\d+|/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^()])
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, "", len(self.text))

    def _next(self):
        tok = self._peek()
        self.i += 1
        return tok

    def _expect_op(self, op: str):
        kind, val, off = self._next()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}", off)

    def parse(self) -> Node:
        if not self.toks:
            raise ExprSyntaxError("empty input", 0)
        node = self.expr()
        kind, val, off = self._peek()
        if kind is not None:
            raise ExprSyntaxError(f"unexpected {val!r}", off)
        return node

    def expr(self) -> Node:
        node = self.term()
        while True:
            kind, val, _ = self._peek()
            if kind == "op" and val in "+-":
                self.i += 1
                node = Sum(node, self.term(), subtract=(val == "-"))
            else:
                return node

    def term(self) -> Node:
        node = self.factor()
        while True:
            kind, val, off = self._peek()
            if kind == "op" and val == "*":
                self.i += 1
                node = Product(node, self.factor(), offset=off)
            else:
                return node

    def factor(self) -> Node:
        kind, val, _ = self._peek()
        if kind == "op" and val == "-":
            self.i += 1
            return Neg(self.factor())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        kind, val, off = self._peek()
        if kind == "op" and val == "^":
            self.i += 1
            return Power(base, self.exponent(), offset=off)
        return base

    def exponent(self) -> int:
        """Non-negative integer, right associative so 2^3^2 is 2^9."""
        kind, val, off = self._next()
        if kind == "op" and val == "-":
            raise NegativeExponentError(off)
        if kind == "op" and val == "(":
            inner = self.exponent()
            self._expect_op(")")
            return inner
        if kind != "number" or not val.isdigit():
            raise ExprSyntaxError("exponent must be a non-negative integer", off)
        n = int(val)
        kind, nxt, noff = self._peek()
        if kind == "op" and nxt == "^":
            self.i += 1
            e = self.exponent()
            if n > 1 and e * n.bit_length() > 16:
                raise ExprSyntaxError("exponent too large", noff)
            n = n ** e
        if n > _MAX_EXPONENT:
            raise ExprSyntaxError("exponent too large", off)
        return n

    def atom(self) -> Node:
        kind, val, off = self._next()
        if kind == "number":
            return RationalLit(Fraction(val))
        if kind == "name":
            if val in ("x", "y"):
                return Var(val)
            raise UnknownIdentifierError(val, off)
        if kind == "op" and val == "(":
            inner = self.expr()
            self._expect_op(")")
            return Group(inner)
        raise ExprSyntaxError(f"unexpected {val!r}" if kind else "unexpected end of input", off)


# ---------------------------------------------------------------------------
# expansion

_X = BivariatePoly({(1, 0): Fraction(1)})
_Y = BivariatePoly({(0, 1): Fraction(1)})

# Exponents cap at a level no sane form reaches; the expansion degree cap
# keeps 64-character adversarial inputs from allocating giant convolutions.
_MAX_EXPONENT = 512
_MAX_EXPAND_DEGREE = 1536


def _expand(node: Node) -> BivariatePoly:
    if isinstance(node, Var):
        return _X if node.name == "x" else _Y
    if isinstance(node, RationalLit):
        if node.value == 0:
            return BivariatePoly()
        return BivariatePoly({(0, 0): node.value})
    if isinstance(node, Neg):
        return -_expand(node.arg)
    if isinstance(node, Sum):
        l, r = _expand(node.left), _expand(node.right)
        return l - r if node.subtract else l + r
    if isinstance(node, Product):
        l, r = _expand(node.left), _expand(node.right)
        if l.total_degree() + r.total_degree() > _MAX_EXPAND_DEGREE:
            raise ExprSyntaxError("expansion exceeds the degree cap", node.offset)
        return l * r
    if isinstance(node, Power):
        base = _expand(node.base)
        if base.total_degree() * node.exponent > _MAX_EXPAND_DEGREE:
            raise ExprSyntaxError("expansion exceeds the degree cap", node.offset)
        return base.power(node.exponent)
    if isinstance(node, Group):
        return _expand(node.inner)
    raise TypeError(f"unknown node {node!r}")


def parse_expression(text: str) -> Node:
    return _Parser(text).parse()


def parse_polynomial(text: str) -> BivariatePoly:
    """Parse and expand to a sparse exact coefficient map."""
    return _expand(parse_expression(text))


def to_homogeneous(p: BivariatePoly) -> HomogeneousForm:
    """Check single total degree and repackage; the zero polynomial and
    degree mixtures are rejected with the offending degrees listed."""
    if p.is_zero:
        raise NotHomogeneousError(())
    return p.to_form()


# ---------------------------------------------------------------------------
# canonical printing

def _coeff_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _monomial_text(i: int, j: int, c: Fraction) -> str:
    parts = []
    if abs(c) != 1 or (i, j) == (0, 0):
        parts.append(_coeff_text(abs(c)))
    for sym, e in (("x", i), ("y", j)):
        if e == 1:
            parts.append(sym)
        elif e >= 2:
            parts.append(f"{sym}^{e}")
    return "*".join(parts)


def canonical_text(p: BivariatePoly | HomogeneousForm) -> str:
    """Stable text form: monomials by descending x-exponent then descending
    y-exponent, explicit *, ^ only from exponent 2 up."""
    if isinstance(p, HomogeneousForm):
        p = p.to_bivariate()
    if p.is_zero:
        return "0"
    out = []
    for i, j, c in p.monomials():
        txt = _monomial_text(i, j, c)
        if not out:
            out.append(txt if c > 0 else f"-{txt}")
        else:
            out.append(f" + {txt}" if c > 0 else f" - {txt}")
    return "".join(out)
