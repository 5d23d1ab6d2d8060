"""Small arithmetic expression language for right-hand sides and kernels.

Grammar (EBNF)::

    expr    = term { ("+" | "-") term } ;
    term    = unary { ("*" | "/") unary } ;
    unary   = ("-" | "+") unary | power ;
    power   = atom [ "^" unary ] ;
    atom    = number | name | func "(" expr ")" | "(" expr ")" ;
    number  = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
            | "." digits [ exponent ] ;
    name    = "x" | "t" | "u" | "v" | "z" | "pi" | "e" ;
    func    = "sin" | "cos" | "exp" | "abs" | "sqrt" | "ln" ;

``^`` is right-associative and binds tighter than unary minus, so ``-x^2``
is ``-(x^2)`` and ``2^-1`` is ``0.5``. Evaluation works element-wise on
numpy arrays as well as on floats.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

VARIABLES = frozenset({"x", "t", "u", "v", "z"})
CONSTANTS = {"pi": math.pi, "e": math.e}
FUNCTIONS = ("sin", "cos", "exp", "abs", "sqrt", "ln")


class ExprSyntaxError(ValueError):
    """Malformed expression text; ``offset`` is the 0-based position."""

    def __init__(self, message, text="", offset=0):
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")


class UnknownIdentifierError(ExprSyntaxError):
    def __init__(self, name, text="", offset=0, allowed=()):
        self.name = name
        hint = f" (allowed: {', '.join(sorted(allowed))})" if allowed else ""
        super().__init__(f"unknown identifier {name!r}{hint}", text, offset)


class EvaluationError(ValueError):
    """Numeric failure: missing binding, domain error or non-finite result."""


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Var, Const, Neg, BinOp, Call]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, allowed):
        self.text = text
        self.allowed = allowed
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, pos = self.take()
        if text != value or kind == "end":
            found = "end of input" if kind == "end" else repr(text)
            raise ExprSyntaxError(f"expected {value!r}, found {found}", self.text, pos)

    def parse(self):
        node = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {text!r}", self.text, pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.take()
            return Neg(self.unary())
        if kind == "op" and text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        kind, text, pos = self.take()
        if kind == "num":
            value = float(text)
            if not math.isfinite(value):
                raise ExprSyntaxError(f"number {text!r} out of range", self.text, pos)
            return Num(value)
        if kind == "name":
            if text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(text, arg)
            if text in CONSTANTS:
                return Const(text)
            if text in self.allowed:
                return Var(text)
            raise UnknownIdentifierError(text, self.text, pos, set(self.allowed) | set(CONSTANTS))
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise ExprSyntaxError(f"expected a value, found {found}", self.text, pos)


def parse(text: str, allowed_vars=VARIABLES) -> Expr:
    """Parse ``text`` into an expression tree.

    Only names in ``allowed_vars`` (a subset of x, t, u, v, z) may appear as
    variables.
    """
    allowed = frozenset(allowed_vars)
    extra = allowed - VARIABLES
    if extra:
        raise ValueError(f"variables must be among {sorted(VARIABLES)}, got {sorted(extra)}")
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression", text or "", 0)
    return _Parser(text, allowed).parse()


def variables(node: Expr) -> set:
    """Names of the variables referenced by ``node``."""
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Neg):
        return variables(node.operand)
    if isinstance(node, BinOp):
        return variables(node.left) | variables(node.right)
    if isinstance(node, Call):
        return variables(node.arg)
    return set()


def _sqrt(a, strict):
    if strict and np.any(np.asarray(a) < 0):
        raise EvaluationError("sqrt of a negative number")
    return np.sqrt(a)


def _ln(a, strict):
    if strict and np.any(np.asarray(a) <= 0):
        raise EvaluationError("ln of a non-positive number")
    return np.log(np.where(np.asarray(a) > 0, a, np.nan))


_FUNCS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "abs": np.abs,
}


def _eval(node, env, strict):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        try:
            return env[node.name]
        except KeyError:
            raise EvaluationError(f"no value bound for variable {node.name!r}") from None
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Neg):
        return -_eval(node.operand, env, strict)
    if isinstance(node, Call):
        arg = _eval(node.arg, env, strict)
        if node.func == "sqrt":
            return _sqrt(arg, strict)
        if node.func == "ln":
            return _ln(arg, strict)
        return _FUNCS[node.func](arg)
    a = _eval(node.left, env, strict)
    b = _eval(node.right, env, strict)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        return np.divide(a, b)
    return np.power(a, b)


def evaluate(node: Expr, bindings=None, strict=True):
    """Evaluate ``node``; returns a float, or an array when bindings are arrays.

    With ``strict=False`` domain violations and overflow yield nan/inf in the
    result instead of raising, so array callers can locate the bad entry.

    Raises
    ------
    EvaluationError
        Missing binding always; with ``strict``, also sqrt/ln outside their
        domain or any non-finite value in the result.
    """
    env = {} if bindings is None else dict(bindings)
    with np.errstate(all="ignore"):
        out = _eval(node, {k: np.asarray(v, dtype=float) if np.ndim(v) else float(v) for k, v in env.items()}, strict)
    arr = np.asarray(out, dtype=float)
    if strict and not np.all(np.isfinite(arr)):
        raise EvaluationError(f"non-finite result evaluating {to_string(node)}")
    return float(arr) if arr.ndim == 0 else arr


def to_string(node: Expr) -> str:
    """Render ``node`` as text that parses back to the same tree."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, (Var, Const)):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_string(node.operand)})"
    if isinstance(node, Call):
        return f"{node.func}({to_string(node.arg)})"
    return f"({to_string(node.left)} {node.op} {to_string(node.right)})"


def compile_function(text: str, params):
    """Parse ``text`` and return a callable taking ``params`` positionally.

    The callable evaluates non-strictly: callers check the result for
    non-finite entries and report where they occur.
    """
    params = tuple(params)
    tree = parse(text, params)

    def fn(*args):
        if len(args) != len(params):
            raise TypeError(f"expected {len(params)} arguments ({', '.join(params)}), got {len(args)}")
        return evaluate(tree, dict(zip(params, args)), strict=False)

    fn.expr = tree
    fn.text = text
    return fn
