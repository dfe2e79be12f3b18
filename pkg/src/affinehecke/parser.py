"""
Text surface for Hecke algebra elements.

Grammar (whitespace between tokens is ignored)::

    expr   := term {("+" | "-") term}
    term   := ["-"] factor {("*" | "/") factor}
    factor := atom ["^" ["-"] int]
    atom   := "s" digits | "t" | "v" | int | "T(" int {"," int} ")" | "(" expr ")"

``s0`` evaluates to ``t s1 t^-1``; ``v`` is the symbolic parameter and is only
allowed in symbolic mode.  ``x / y`` means ``x * y^-1`` and needs ``y`` to be
a single term (a scalar or ``c T_w``).  :func:`pretty` prints the form that
parses back to the same element.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from . import weyl
from .coeff import RatFunc, format_rat
from .errors import DivisionByZero, IndexOutOfRange, InvalidParameter, ModeMismatch, ParseError, RankMismatch
from .hecke import HeckeConfig, HeckeElement, basis, gen, invert_monomial, mul, scalar, unit

__all__ = ["Sum", "Prod", "Pow", "Gen", "ScalarV", "ScalarQ", "BasisLit",
           "parse", "eval_expr", "evaluate", "pretty", "parse_scalar"]


@dataclass(frozen=True)
class Sum:
    items: tuple


@dataclass(frozen=True)
class Prod:
    items: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Gen:
    which: Union[int, str]  # simple reflection index, or "T" for t


@dataclass(frozen=True)
class ScalarV:
    pass


@dataclass(frozen=True)
class ScalarQ:
    value: int


@dataclass(frozen=True)
class BasisLit:
    window: tuple[int, ...]


Expr = Union[Sum, Prod, Pow, Gen, ScalarV, ScalarQ, BasisLit]

_TOKEN = re.compile(r"\s*(?:(?P<basis>T\s*\()|(?P<gen>s\d+)|(?P<num>\d+)|(?P<name>[tv])|(?P<op>[-+*/^(),]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", n))
    return out


def _neg(x: Expr) -> Expr:
    return Prod((ScalarQ(-1), x))


class _Parser:
    def __init__(self, text: str, rank: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.rank = rank

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.take()
        if text != value or kind not in ("op",):
            raise ParseError(f"expected {value!r}, found {text or 'end of input'!r}", pos)

    def is_op(self, *values) -> bool:
        kind, text, _ = self.peek()
        return kind == "op" and text in values

    def expr(self) -> Expr:
        items = [self.term()]
        while self.is_op("+", "-"):
            op = self.take()[1]
            t = self.term()
            items.append(t if op == "+" else _neg(t))
        return items[0] if len(items) == 1 else Sum(tuple(items))

    def term(self) -> Expr:
        negate = False
        if self.is_op("-"):
            self.take()
            negate = True
        items = [self.factor()]
        while self.is_op("*", "/"):
            op = self.take()[1]
            f = self.factor()
            items.append(f if op == "*" else Pow(f, -1))
        node = items[0] if len(items) == 1 else Prod(tuple(items))
        return _neg(node) if negate else node

    def signed_int(self) -> int:
        sign = 1
        if self.is_op("-"):
            self.take()
            sign = -1
        kind, text, pos = self.take()
        if kind != "num":
            raise ParseError(f"expected an integer, found {text or 'end of input'!r}", pos)
        return sign * int(text)

    def factor(self) -> Expr:
        base = self.atom()
        if self.is_op("^"):
            self.take()
            k = self.signed_int()
            if k == 0:
                return ScalarQ(1)
            return base if k == 1 else Pow(base, k)
        return base

    def atom(self) -> Expr:
        kind, text, pos = self.take()
        if kind == "gen":
            i = int(text[1:])
            if self.rank < 2 or i >= self.rank:
                raise IndexOutOfRange(f"no generator {text} at rank {self.rank} (position {pos})")
            return Gen(i)
        if kind == "name":
            return Gen("T") if text == "t" else ScalarV()
        if kind == "num":
            return ScalarQ(int(text))
        if kind == "basis":
            entries = [self.signed_int()]
            while self.is_op(","):
                self.take()
                entries.append(self.signed_int())
            self.expect(")")
            if len(entries) != self.rank:
                raise RankMismatch(f"window literal at position {pos} has {len(entries)} entries, "
                                   f"rank is {self.rank}")
            try:
                w = weyl.validate(entries)
            except ValueError as exc:
                raise ParseError(str(exc), pos) from exc
            return BasisLit(w)
        if kind == "op" and text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos)


def parse(text: str, rank: int) -> Expr:
    if rank < 1:
        raise InvalidParameter("rank must be >= 1")
    p = _Parser(text, rank)
    tree = p.expr()
    kind, tok, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {tok!r}", pos)
    return tree


def _invert(x: HeckeElement) -> HeckeElement:
    if x.is_zero():
        raise DivisionByZero("division by zero")
    if len(x.terms) != 1:
        raise InvalidParameter("only single-term elements can be inverted")
    return invert_monomial(x)


def eval_expr(ast: Expr, config: HeckeConfig) -> HeckeElement:
    if isinstance(ast, Sum):
        out = eval_expr(ast.items[0], config)
        for item in ast.items[1:]:
            out = out + eval_expr(item, config)
        return out
    if isinstance(ast, Prod):
        out = eval_expr(ast.items[0], config)
        for item in ast.items[1:]:
            out = mul(out, eval_expr(item, config))
        return out
    if isinstance(ast, Pow):
        base = eval_expr(ast.base, config)
        if ast.exp < 0:
            base = _invert(base)
        out = unit(config)
        for _ in range(abs(ast.exp)):
            out = mul(out, base)
        return out
    if isinstance(ast, Gen):
        return gen(config, ast.which)
    if isinstance(ast, ScalarV):
        if not config.is_symbolic:
            raise ModeMismatch("'v' is only available in symbolic mode")
        return scalar(config, RatFunc.v())
    if isinstance(ast, ScalarQ):
        return scalar(config, ast.value)
    if isinstance(ast, BasisLit):
        return basis(config, ast.window)
    raise TypeError(f"not an expression node: {ast!r}")


def evaluate(text: str, config: HeckeConfig) -> HeckeElement:
    return eval_expr(parse(text, config.rank), config)


def parse_scalar(text: str, config: HeckeConfig):
    """Parse a coefficient (e.g. ``"(v-1)/2"``) into the ring of ``config``."""
    e = evaluate(str(text), config)
    ident = weyl.identity(config.rank)
    if any(w != ident for w in e.terms):
        raise InvalidParameter(f"{text!r} is not a scalar")
    return e.coeff(ident)


def _window_text(w) -> str:
    return "T(" + ",".join(str(x) for x in w) + ")"


def _term_text(c, w) -> tuple[bool, str]:
    """(negative?, text of |c| * T_w)."""
    if isinstance(c, RatFunc):
        neg = c.is_negative()
        mag = -c if neg else c
        if mag == 1:
            return neg, _window_text(w)
        body = str(mag)
        if mag.is_compound():
            body = f"({body})"
    else:
        neg = c < 0
        mag = -c if neg else c
        if mag == 1:
            return neg, _window_text(w)
        body = format_rat(mag)
    return neg, f"{body}*{_window_text(w)}"


def pretty(e: HeckeElement) -> str:
    """Terms by decreasing length, then window; negative terms as ``- c*T(...)``."""
    if e.is_zero():
        return "0"
    items = sorted(e.terms.items(), key=lambda wc: (-weyl.length(wc[0]), wc[0]))
    out = ""
    for k, (w, c) in enumerate(items):
        neg, body = _term_text(c, w)
        if k == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out
