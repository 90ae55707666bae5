"""Parser and evaluator for one-variable real expressions.

Grammar (standard precedence, ^ right-associative and binding tighter than
unary minus):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?
    atom   := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'

Identifiers are the single free variable, the named literals pi and e, and
the functions exp, ln, sin, cos, sqrt, abs.  Expressions are immutable after
parsing and evaluation is pure, so they are safe to share across threads.
Any non-finite intermediate value is a domain error, never a silent NaN.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import backend
from ._progops import BINARY_OPS, FUNCTION_OPS, OP_CONST, OP_NEG, OP_VAR
from .errors import EvalDomainError, ParseError

FUNCTIONS = ("exp", "ln", "sin", "cos", "sqrt", "abs")
NAMED_LITERALS = {"pi": math.pi, "e": math.e}

_TOKEN_RE = re.compile(
    r"(?P<num>(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),])"
    r"|(?P<ws>\s+)"
    r"|(?P<bad>.)"
)


@dataclass(frozen=True)
class Program:
    """Flat postfix form of an expression, consumed by the backends."""

    ops: np.ndarray
    args: np.ndarray
    consts: np.ndarray
    stack_need: int


@dataclass(frozen=True)
class Expression:
    """Immutable parsed expression in one free variable."""

    root: tuple
    varname: str
    text: str = field(compare=False)

    def __call__(self, x: float) -> float:
        return evaluate(self, x)

    @cached_property
    def program(self) -> Program:
        return _compile(self.root)

    def eval_array(self, xs) -> np.ndarray:
        """Vectorized evaluation; domain failures become NaN entries."""
        p = self.program
        return backend.eval_program(p.ops, p.args, p.consts, p.stack_need,
                                    np.asarray(xs, dtype=np.float64))

    def __str__(self) -> str:
        return to_text(self)


def _tokenize(text: str):
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        if kind == "ws":
            continue
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group()!r}", m.start())
        tokens.append((kind, m.group(), m.start()))
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens, varname):
        self.tokens = tokens
        self.pos = 0
        self.varname = varname

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, text, offset = self.peek()
        if kind != "op" or text != op:
            raise ParseError(f"expected {op!r}", offset)
        return self.advance()

    def parse_expr(self):
        node = self.parse_term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                right = self.parse_term()
                node = ("add" if text == "+" else "sub", node, right)
            else:
                return node

    def parse_term(self):
        node = self.parse_unary()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                right = self.parse_unary()
                node = ("mul" if text == "*" else "div", node, right)
            else:
                return node

    def parse_unary(self):
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return ("neg", self.parse_unary())
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            return ("pow", base, self.parse_unary())
        return base

    def parse_atom(self):
        kind, text, offset = self.advance()
        if kind == "num":
            return ("num", float(text))
        if kind == "ident":
            if text == self.varname:
                return ("var",)
            if text in FUNCTIONS:
                k, t, o = self.peek()
                if not (k == "op" and t == "("):
                    raise ParseError(f"function {text!r} requires an argument list", offset)
                self.advance()
                arg = self.parse_expr()
                k, t, o = self.peek()
                if k == "op" and t == ",":
                    raise ParseError(f"function {text!r} takes exactly one argument", o)
                self.expect_op(")")
                return ("fn", text, arg)
            if text in NAMED_LITERALS:
                return ("num", NAMED_LITERALS[text])
            raise ParseError(f"unknown identifier {text!r}", offset)
        if kind == "op" and text == "(":
            node = self.parse_expr()
            self.expect_op(")")
            return node
        if kind == "end":
            raise ParseError("unexpected end of expression", offset)
        raise ParseError(f"unexpected token {text!r}", offset)


def parse(text: str, varname: str) -> Expression:
    """Parse ``text`` as an expression in the free variable ``varname``."""
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty expression", 0)
    if varname in FUNCTIONS or varname in NAMED_LITERALS:
        raise ValueError(f"variable name {varname!r} collides with a reserved name")
    if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", varname):
        raise ValueError(f"invalid variable name {varname!r}")
    parser = _Parser(_tokenize(text), varname)
    root = parser.parse_expr()
    kind, tok, offset = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected token {tok!r} after expression", offset)
    return Expression(root=root, varname=varname, text=text)


def _check_finite(value: float, what: str, x: float) -> float:
    if not math.isfinite(value):
        raise EvalDomainError(f"non-finite value in {what}", x)
    return value


def _eval_node(node, x: float) -> float:
    tag = node[0]
    if tag == "num":
        return node[1]
    if tag == "var":
        return x
    if tag == "neg":
        return -_eval_node(node[1], x)
    if tag == "fn":
        u = _eval_node(node[2], x)
        name = node[1]
        try:
            if name == "exp":
                v = math.exp(u)
            elif name == "ln":
                v = math.log(u)
            elif name == "sin":
                v = math.sin(u)
            elif name == "cos":
                v = math.cos(u)
            elif name == "sqrt":
                v = math.sqrt(u)
            else:
                v = abs(u)
        except (ValueError, OverflowError) as exc:
            raise EvalDomainError(f"{name}({u!r}) is undefined", x) from exc
        return _check_finite(v, name, x)
    left = _eval_node(node[1], x)
    right = _eval_node(node[2], x)
    try:
        if tag == "add":
            v = left + right
        elif tag == "sub":
            v = left - right
        elif tag == "mul":
            v = left * right
        elif tag == "div":
            v = left / right
        else:
            v = math.pow(left, right)
    except (ValueError, OverflowError, ZeroDivisionError) as exc:
        raise EvalDomainError(f"{tag}({left!r}, {right!r}) is undefined", x) from exc
    return _check_finite(v, tag, x)


def evaluate(e: Expression, x: float) -> float:
    """Evaluate ``e`` at the real point ``x``; raises EvalDomainError."""
    return _eval_node(e.root, float(x))


_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4,
         "num": 9, "var": 9, "fn": 9}
_BINOP_TEXT = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}


def _fmt(node, varname: str) -> str:
    tag = node[0]
    if tag == "num":
        return repr(node[1])
    if tag == "var":
        return varname
    if tag == "fn":
        return f"{node[1]}({_fmt(node[2], varname)})"
    if tag == "neg":
        inner = _fmt(node[1], varname)
        if _PREC[node[1][0]] < _PREC["neg"]:
            inner = f"({inner})"
        return f"-{inner}"
    left, right = node[1], node[2]
    ls = _fmt(left, varname)
    rs = _fmt(right, varname)
    if tag == "pow":
        if _PREC[left[0]] <= _PREC["pow"]:
            ls = f"({ls})"
        if _PREC[right[0]] < _PREC["neg"]:
            rs = f"({rs})"
    else:
        if _PREC[left[0]] < _PREC[tag]:
            ls = f"({ls})"
        if _PREC[right[0]] <= _PREC[tag]:
            rs = f"({rs})"
    return f"{ls}{_BINOP_TEXT[tag]}{rs}"


def to_text(e: Expression) -> str:
    """Canonical text form; parse(to_text(e)) reproduces the same tree."""
    return _fmt(e.root, e.varname)


def _compile(root) -> Program:
    ops: list[int] = []
    args: list[int] = []
    consts: list[float] = []

    def emit(node):
        tag = node[0]
        if tag == "num":
            ops.append(OP_CONST)
            args.append(len(consts))
            consts.append(node[1])
        elif tag == "var":
            ops.append(OP_VAR)
            args.append(-1)
        elif tag == "neg":
            emit(node[1])
            ops.append(OP_NEG)
            args.append(-1)
        elif tag == "fn":
            emit(node[2])
            ops.append(FUNCTION_OPS[node[1]])
            args.append(-1)
        else:
            emit(node[1])
            emit(node[2])
            ops.append(BINARY_OPS[tag])
            args.append(-1)

    emit(root)
    depth = 0
    need = 0
    for op in ops:
        if op in (OP_CONST, OP_VAR):
            depth += 1
        elif op in BINARY_OPS.values():
            depth -= 1
        need = max(need, depth)
    return Program(ops=np.asarray(ops, dtype=np.int32),
                   args=np.asarray(args, dtype=np.int32),
                   consts=np.asarray(consts, dtype=np.float64),
                   stack_need=max(need, 1))


@dataclass(frozen=True)
class PositivityVerdict:
    """Outcome of a sampled sign check; sampled, not proven."""

    status: str            # "holds" | "violated" | "error"
    x: float | None = None
    value: float | None = None
    detail: str | None = None
    samples: int = 0
    note: str = "sampled, not proven"

    @property
    def holds(self) -> bool:
        return self.status == "holds"


def check_positive_on(e: Expression, lo: float, hi: float, n: int,
                      strict: bool = False) -> PositivityVerdict:
    """Sample ``e`` at ``n`` equispaced points of [lo, hi] and check sign.

    By default values >= 0 pass (the range checks used here allow zeros);
    with ``strict=True`` zeros are violations too.
    """
    if not (lo < hi):
        raise ValueError("check_positive_on requires lo < hi")
    if n < 2:
        raise ValueError("check_positive_on requires n >= 2")
    xs = np.linspace(lo, hi, n)
    ys = e.eval_array(xs)
    bad = ~np.isfinite(ys)
    if np.any(bad):
        xb = float(xs[bad][0])
        try:
            evaluate(e, xb)
            detail = "non-finite value"
        except EvalDomainError as exc:
            detail = str(exc)
        return PositivityVerdict(status="error", x=xb, detail=detail, samples=n)
    neg = ys < 0.0 if not strict else ys <= 0.0
    if np.any(neg):
        i = int(np.argmax(neg))
        return PositivityVerdict(status="violated", x=float(xs[i]),
                                 value=float(ys[i]), samples=n)
    return PositivityVerdict(status="holds", samples=n)
