"""Recursive-descent parser for germ expressions and differential polynomials.

Grammar (whitespace insensitive)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-'? factor
    factor  := base ('^' signed_rational)?
    base    := rational | 'x' | 'l' nat | 'log' '(' expr ')'
             | ('gamma' | 'omega' | 'lambda' | 'sigma_gamma') '(' nat ')'
             | '(' expr ')'
             | 'Y' "'"*                      (differential polynomials only)
    signed_rational := '-'? number | '(' '-'? number ('/' nat)? ')'

Decimals are exact (``0.25`` is ``1/4``).  ``l0`` is an alias of ``x``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .diffpoly import DiffPoly
from .errors import DivisionByZero, ExprSyntaxError, HardyError
from .sequences import gamma, lambda_, omega_seq, sigma_gamma
from .tower import TowerElem, log_of, pow_

Span = Tuple[int, int]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d*)?|\.\d+)|(?P<name>[A-Za-z_][A-Za-z_]*\d*)"
                    r"|(?P<op>[-+*/^()']))")

SEQUENCES = {
    "gamma": gamma,
    "omega": omega_seq,
    "lambda": lambda_,
    "sigma_gamma": sigma_gamma,
}


# --------------------------------------------------------------------- AST

@dataclass(frozen=True)
class Rational:
    value: Fraction
    span: Span


@dataclass(frozen=True)
class Var:
    name: str
    span: Span


@dataclass(frozen=True)
class TowerRef:
    k: int
    span: Span


@dataclass(frozen=True)
class SeqRef:
    name: str
    n: int
    span: Span


@dataclass(frozen=True)
class Deriv:
    """``Y`` followed by ``order`` primes."""
    order: int
    span: Span


@dataclass(frozen=True)
class Log:
    child: "Node"
    span: Span


@dataclass(frozen=True)
class Neg:
    child: "Node"
    span: Span


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    span: Span


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: Fraction
    span: Span


Node = Union[Rational, Var, TowerRef, SeqRef, Deriv, Log, Neg, BinOp, Pow]
ExprAst = Node


def Add(left, right, span):
    return BinOp("+", left, right, span)


def Sub(left, right, span):
    return BinOp("-", left, right, span)


def Mul(left, right, span):
    return BinOp("*", left, right, span)


def Div(left, right, span):
    return BinOp("/", left, right, span)


# ------------------------------------------------------------------ lexing

@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    start: int
    end: int


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind), m.end(kind)))
        pos = m.end()
    toks.append(_Tok("eof", "", n, n))
    return toks


# ----------------------------------------------------------------- parsing

class _Parser:
    def __init__(self, text: str, allow_y: bool):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.allow_y = allow_y

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok: Optional[_Tok] = None):
        tok = tok or self.tok
        pos = min(tok.start, max(len(self.text) - 1, 0))
        return ExprSyntaxError(msg, pos, self.text)

    def accept(self, text) -> Optional[_Tok]:
        if self.tok.kind != "eof" and self.tok.text == text:
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text) -> _Tok:
        t = self.accept(text)
        if t is None:
            found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
            raise self.error(f"expected {text!r}, found {found}")
        return t

    def nat(self) -> Tuple[int, _Tok]:
        t = self.tok
        if t.kind != "num" or not t.text.isdigit():
            raise self.error("expected a natural number")
        self.i += 1
        return int(t.text), t

    def parse(self) -> Node:
        if self.tok.kind == "eof":
            raise self.error("empty expression")
        node = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            node = BinOp(op, node, rhs, (node.span[0], rhs.span[1]))
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            op = self.tok.text
            self.i += 1
            rhs = self.unary()
            node = BinOp(op, node, rhs, (node.span[0], rhs.span[1]))
        return node

    def unary(self) -> Node:
        t = self.accept("-")
        if t is not None:
            child = self.factor()
            return Neg(child, (t.start, child.span[1]))
        return self.factor()

    def factor(self) -> Node:
        base = self.base()
        if self.accept("^") is None:
            return base
        e, end = self.signed_rational()
        return Pow(base, e, (base.span[0], end))

    def number(self) -> Tuple[Fraction, int]:
        t = self.tok
        if t.kind != "num":
            raise self.error("expected a number")
        self.i += 1
        return Fraction(t.text), t.end

    def signed_rational(self) -> Tuple[Fraction, int]:
        if self.accept("(") is not None:
            sign = -1 if self.accept("-") else 1
            v, _ = self.number()
            if self.accept("/") is not None:
                d, dt = self.nat()
                if d == 0:
                    raise self.error("zero denominator in exponent", dt)
                v = v / d
            end = self.expect(")").end
            return sign * v, end
        sign = -1 if self.accept("-") else 1
        v, end = self.number()
        return sign * v, end

    def call_arg_nat(self) -> Tuple[int, int]:
        self.expect("(")
        n, _ = self.nat()
        return n, self.expect(")").end

    def base(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Rational(Fraction(t.text), (t.start, t.end))
        if t.kind == "op" and t.text == "(":
            self.i += 1
            inner = self.expr()
            close = self.expect(")")
            return _respan(inner, (t.start, close.end))
        if t.kind != "name":
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise self.error(f"expected an operand, found {found}")
        self.i += 1
        name = t.text
        if name == "x":
            return Var("x", (t.start, t.end))
        m = re.fullmatch(r"l(\d+)", name)
        if m:
            k = int(m.group(1))
            if k == 0:
                return Var("x", (t.start, t.end))
            return TowerRef(k, (t.start, t.end))
        if name == "log":
            self.expect("(")
            inner = self.expr()
            close = self.expect(")")
            return Log(inner, (t.start, close.end))
        if name in SEQUENCES:
            n, end = self.call_arg_nat()
            return SeqRef(name, n, (t.start, end))
        if name == "Y" and self.allow_y:
            order = 0
            end = t.end
            while self.tok.kind == "op" and self.tok.text == "'":
                end = self.tok.end
                order += 1
                self.i += 1
            return Deriv(order, (t.start, end))
        raise self.error(f"unknown name {name!r}", t)


def _respan(node: Node, span: Span) -> Node:
    # parentheses widen the span of the enclosed node
    return type(node)(**{**node.__dict__, "span": span})


def parse(text: str) -> ExprAst:
    """Parse a germ expression."""
    return _Parser(text, allow_y=False).parse()


def parse_diffpoly(text: str) -> ExprAst:
    """Parse a differential polynomial in ``Y, Y', Y'', ...``."""
    return _Parser(text, allow_y=True).parse()


# ---------------------------------------------------------------- lowering

def _with_span(err: HardyError, span: Span) -> HardyError:
    if getattr(err, "span", None) is None:
        err.span = span
    return err


def _lower(node: Node, poly: bool):
    if isinstance(node, Rational):
        v = TowerElem.const(node.value)
    elif isinstance(node, Var):
        v = TowerElem.ell(0)
    elif isinstance(node, TowerRef):
        v = TowerElem.ell(node.k)
    elif isinstance(node, SeqRef):
        v = SEQUENCES[node.name](node.n)
    elif isinstance(node, Deriv):
        return DiffPoly.Y(node.order)
    elif isinstance(node, Neg):
        return -_lower(node.child, poly)
    elif isinstance(node, Log):
        inner = _lower(node.child, False)
        try:
            v = log_of(inner)
        except HardyError as e:
            raise _with_span(e, node.span)
    elif isinstance(node, Pow):
        b = _lower(node.base, poly)
        try:
            if isinstance(b, DiffPoly):
                if node.exponent.denominator != 1 or node.exponent < 0:
                    raise ValueError("powers of Y must be natural numbers")
                return b ** int(node.exponent)
            e = node.exponent
            v = pow_(b, int(e) if e.denominator == 1 else e)
        except HardyError as err:
            raise _with_span(err, node.span)
        except ValueError as err:
            raise _with_span(ExprSyntaxError(str(err), node.span[0]), node.span)
    elif isinstance(node, BinOp):
        a = _lower(node.left, poly)
        b = _lower(node.right, poly)
        try:
            if node.op == "+":
                return a + b if not isinstance(b, DiffPoly) or isinstance(a, DiffPoly) else b + a
            if node.op == "-":
                return a - b if not isinstance(b, DiffPoly) or isinstance(a, DiffPoly) else -b + a
            if node.op == "*":
                return a * b if not isinstance(b, DiffPoly) or isinstance(a, DiffPoly) else b * a
            if isinstance(b, DiffPoly):
                raise ExprSyntaxError("cannot divide by a differential polynomial",
                                      node.right.span[0])
            if not b:
                raise DivisionByZero("division by zero")
            return a / b
        except HardyError as err:
            raise _with_span(err, node.span)
    else:  # pragma: no cover
        raise TypeError(f"unknown node {node!r}")
    return v


def lower(ast: ExprAst) -> TowerElem:
    """Evaluate an expression tree in the tower field."""
    return _lower(ast, False)


def lower_diffpoly(ast: ExprAst) -> DiffPoly:
    v = _lower(ast, True)
    return v if isinstance(v, DiffPoly) else DiffPoly({(): v})


def parse_germ(text: str) -> TowerElem:
    return lower(parse(text))


def parse_diffpoly_expr(text: str) -> DiffPoly:
    return lower_diffpoly(parse_diffpoly(text))
