"""Observables f(z, zbar) as small expression trees.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' ['-'] int)?
    atom   := 'z' | 'zbar' | 'r2' | number | 'i' | '(' expr ')'
            | ('re' | 'im' | 'conj') '(' expr ')'

A number may carry a trailing ``i`` to make it imaginary, so ``a+bi`` is
the sum of a real and an imaginary literal. ``r2`` stands for z zbar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import DegreeOverflowError, ObservableEvaluationError, ObservableSyntaxError
from .polynomial import Z, ZBAR, BivariatePolynomial

__all__ = [
    "MAX_POWER",
    "Expr",
    "Const",
    "Var",
    "Neg",
    "BinOp",
    "Pow",
    "Func",
    "parse_observable",
    "as_observable",
]

MAX_POWER = 64
FUNCTIONS = ("re", "im", "conj")
VARIABLES = ("z", "zbar", "r2")

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?i?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)

# binding levels used by the printer
_ADD, _MUL, _NEG, _POW, _ATOM = 1, 2, 3, 4, 5


def _format_real(x):
    return repr(float(x))


def _multiply(a, b):
    """Complex product from real parts, so z * zbar has an exactly zero imaginary part."""
    a = np.asarray(a)
    b = np.asarray(b)
    if not (np.iscomplexobj(a) and np.iscomplexobj(b)):
        return a * b
    return (a.real * b.real - a.imag * b.imag) + 1j * (a.real * b.imag + a.imag * b.real)


class Expr:
    """Base node. Subclasses implement ``evaluate``, ``_poly`` and ``_fmt``."""

    level = _ATOM

    def evaluate(self, z):
        """Vectorized value at complex ``z``."""
        raise NotImplementedError

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.asarray(self.evaluate(z), dtype=complex)
        out = np.broadcast_to(out, z.shape).copy() if out.shape != z.shape else out
        return out[()] if out.ndim == 0 else out

    def to_polynomial(self):
        """Exact (z, zbar) polynomial, or None when the expression is not one."""
        return self._poly()

    @property
    def is_polynomial(self):
        return self._poly() is not None

    @property
    def degree(self):
        """Total (z, zbar)-degree for polynomial expressions, else None."""
        p = self._poly()
        return None if p is None else max(p.degree, 0)

    def pretty(self):
        return self._fmt()

    def __str__(self):
        return self._fmt()

    def _wrap(self, child, level):
        text = child._fmt()
        return f"({text})" if child.level < level else text


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: complex

    def evaluate(self, z):
        v = complex(self.value)
        return v.real if v.imag == 0 else v

    def _poly(self):
        return BivariatePolynomial.constant(complex(self.value))

    def _fmt(self):
        v = complex(self.value)
        if v.imag == 0:
            return _format_real(v.real)
        if v.real == 0:
            return "i" if v.imag == 1 else f"{_format_real(v.imag)}i"
        return f"({_format_real(v.real)} + {_format_real(v.imag)}i)"

    @property
    def level(self):
        v = complex(self.value)
        # a negative literal prints with a leading '-' and binds like negation
        part = v.real if v.imag == 0 else v.imag
        return _NEG if (v.real == 0 or v.imag == 0) and part < 0 else _ATOM


@dataclass(frozen=True, eq=True)
class Var(Expr):
    name: str

    def evaluate(self, z):
        if self.name == "z":
            return z
        if self.name == "zbar":
            return np.conj(z)
        return z.real**2 + z.imag**2

    def _poly(self):
        return {"z": Z, "zbar": ZBAR, "r2": Z * ZBAR}[self.name]

    def _fmt(self):
        return self.name


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    operand: Expr
    level = _NEG

    def evaluate(self, z):
        return -self.operand.evaluate(z)

    def _poly(self):
        p = self.operand._poly()
        return None if p is None else -p

    def _fmt(self):
        return "-" + self._wrap(self.operand, _NEG)


@dataclass(frozen=True, eq=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    @property
    def level(self):
        return _ADD if self.op in "+-" else _MUL

    def evaluate(self, z):
        a = self.left.evaluate(z)
        b = self.right.evaluate(z)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return _multiply(a, b)
        if np.any(np.asarray(b) == 0):
            raise ObservableEvaluationError(f"zero denominator in {self._fmt()!r}")
        return a / b

    def _poly(self):
        a = self.left._poly()
        b = self.right._poly()
        if a is None or b is None:
            return None
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if b.degree == 0:
            return a / b[(0, 0)]
        return None

    def _fmt(self):
        lvl = self.level
        return f"{self._wrap(self.left, lvl)} {self.op} {self._wrap(self.right, lvl + 1)}"


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    base: Expr
    exponent: int
    level = _POW

    def evaluate(self, z):
        b = np.asarray(self.base.evaluate(z), dtype=complex)
        if self.exponent < 0:
            if np.any(b == 0):
                raise ObservableEvaluationError(f"zero base with negative power in {self._fmt()!r}")
            return 1.0 / b ** (-self.exponent)
        return b**self.exponent

    def _poly(self):
        p = self.base._poly()
        if p is None:
            return None
        if self.exponent < 0:
            if p.degree != 0:
                return None
            return BivariatePolynomial.constant(p[(0, 0)] ** self.exponent)
        return p**self.exponent

    def _fmt(self):
        return f"{self._wrap(self.base, _ATOM)}^{self.exponent}"


@dataclass(frozen=True, eq=True)
class Func(Expr):
    name: str
    argument: Expr

    def evaluate(self, z):
        v = np.asarray(self.argument.evaluate(z), dtype=complex)
        if self.name == "re":
            return v.real
        if self.name == "im":
            return v.imag
        return np.conj(v)

    def _poly(self):
        p = self.argument._poly()
        if p is None:
            return None
        if self.name == "conj":
            return p.conjugate()
        if self.name == "re":
            return (p + p.conjugate()) * 0.5
        return (p - p.conjugate()) * (-0.5j)

    def _fmt(self):
        return f"{self.name}({self.argument._fmt()})"


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = self._tokenize(text)
        self.i = 0

    @staticmethod
    def _tokenize(text):
        tokens = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos == len(text):
                break
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                raise ObservableSyntaxError(f"unexpected character {text[pos]!r}", pos)
            kind = m.lastgroup
            start = m.start(kind)
            tokens.append((kind, m.group(kind), start))
            pos = m.end()
        tokens.append(("end", "", len(text)))
        return tokens

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
            raise ObservableSyntaxError(f"expected {value!r}, found {found}", pos)

    def parse(self):
        node = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ObservableSyntaxError(f"unexpected {text!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.factor())
        node = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            kind, text, pos = self.take()
            if kind != "number" or not text.isdigit():
                raise ObservableSyntaxError("exponent must be an integer", pos)
            k = sign * int(text)
            if abs(k) > MAX_POWER:
                raise DegreeOverflowError(
                    f"power {k} at position {pos} exceeds the limit {MAX_POWER}"
                )
            node = Pow(node, k)
        return node

    def atom(self):
        kind, text, pos = self.take()
        if kind == "number":
            if text.endswith("i"):
                return Const(complex(0.0, float(text[:-1])))
            return Const(complex(float(text), 0.0))
        if kind == "name":
            if text in VARIABLES:
                return Var(text)
            if text == "i":
                return Const(1j)
            if text in FUNCTIONS:
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return Func(text, inner)
            raise ObservableSyntaxError(f"unknown name {text!r}", pos)
        if text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        found = "end of input" if kind == "end" else repr(text)
        raise ObservableSyntaxError(f"unexpected {found}", pos)


def parse_observable(text):
    """Parse ``text`` into an expression tree."""
    if not isinstance(text, str):
        raise TypeError("observable must be given as a string")
    return _Parser(text).parse()


def as_observable(f):
    """Accept an expression string, an ``Expr`` or a plain callable."""
    if isinstance(f, str):
        return parse_observable(f)
    return f
