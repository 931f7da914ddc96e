"""Expression ASTs, text parser and ring-generic evaluator.

Metric and tensor components are defined as small closed-form expressions
and evaluated over one of three scalar rings: plain floats, second-order
jets (for derivatives) or exact rationals (for frame definitions; the
rational ring rejects transcendental operations and decimal literals).

Grammar (whitespace-insensitive)::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | base ('^' int)?
    base   := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'

Functions: sin cos tan exp log sqrt sinh cosh. Constants: pi, e (shadowed
by a coordinate of the same name if one is declared). ``p/q`` with integer
operands is ordinary division, which the rational ring keeps exact.
Unary minus binds looser than '^', so ``-x^2`` is ``-(x^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from . import jet
from .errors import EvalDomainError, ExprSyntaxError, RingError, UnknownIdentifierError

__all__ = [
    "Expr", "Num", "ConstName", "Var", "Neg", "Bin", "Pow", "Call",
    "parse_expr", "eval_expr", "to_text", "free_variables",
    "REAL", "JET", "RATIONAL", "num",
]

FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh")
NAMED_CONSTANTS = ("pi", "e")


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Union[int, float]


@dataclass(frozen=True)
class ConstName:
    name: str  # "pi" or "e"


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Bin:
    op: str  # '+', '-', '*', '/'
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple


Expr = Union[Num, ConstName, Var, Neg, Bin, Pow, Call]


def num(value) -> Num:
    """Wrap a plain number (int, float or Fraction) as an Expr constant."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return Num(int(value))
        return Bin("/", Num(value.numerator), Num(value.denominator))
    if isinstance(value, (int, float)):
        return Num(value)
    raise TypeError(f"cannot embed {type(value).__name__} as an expression constant")


def free_variables(e: Expr) -> set[str]:
    match e:
        case Var(name):
            return {name}
        case Neg(arg):
            return free_variables(arg)
        case Bin(_, l, r):
            return free_variables(l) | free_variables(r)
        case Pow(base, _):
            return free_variables(base)
        case Call(_, args):
            out: set[str] = set()
            for a in args:
                out |= free_variables(a)
            return out
        case _:
            return set()


# -- parser -------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, coords: Sequence[str]):
        self.text = text
        self.pos = 0
        self.coords = set(coords)

    def error(self, message: str) -> ExprSyntaxError:
        return ExprSyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.take(ch):
            raise self.error(f"expected {ch!r}")

    def parse(self) -> Expr:
        e = self.parse_expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("trailing input")
        return e

    def parse_expr(self) -> Expr:
        e = self.parse_term()
        while True:
            c = self.peek()
            if c and c in "+-":
                self.pos += 1
                e = Bin(c, e, self.parse_term())
            else:
                return e

    def parse_term(self) -> Expr:
        e = self.parse_factor()
        while True:
            c = self.peek()
            if c and c in "*/":
                self.pos += 1
                e = Bin(c, e, self.parse_factor())
            else:
                return e

    def parse_factor(self) -> Expr:
        if self.take("-"):
            return Neg(self.parse_factor())
        e = self.parse_base()
        if self.peek() == "^":
            self.pos += 1
            return Pow(e, self.parse_int_exponent())
        return e

    def parse_int_exponent(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.take("-"):
            pass
        self.skip_ws()
        digits_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits_start:
            raise self.error("exponent must be an integer literal")
        if self.pos < len(self.text) and self.text[self.pos] == ".":
            raise self.error("exponent must be an integer literal")
        return int(self.text[start:self.pos].replace(" ", ""))

    def parse_base(self) -> Expr:
        c = self.peek()
        if c == "(":
            self.pos += 1
            e = self.parse_expr()
            self.expect(")")
            return e
        if c.isdigit() or c == ".":
            return self.parse_number()
        if c.isalpha() or c == "_":
            return self.parse_ident()
        raise self.error("expected a number, identifier or parenthesized expression")

    def parse_number(self) -> Num:
        start = self.pos
        text = self.text
        while self.pos < len(text) and text[self.pos].isdigit():
            self.pos += 1
        is_float = False
        if self.pos < len(text) and text[self.pos] == ".":
            is_float = True
            self.pos += 1
            while self.pos < len(text) and text[self.pos].isdigit():
                self.pos += 1
        if self.pos < len(text) and text[self.pos] in "eE":
            # scientific suffix only when followed by digits / sign+digits,
            # otherwise leave the 'e' for the identifier rule (e.g. "2*e")
            save = self.pos
            self.pos += 1
            if self.pos < len(text) and text[self.pos] in "+-":
                self.pos += 1
            if self.pos < len(text) and text[self.pos].isdigit():
                is_float = True
                while self.pos < len(text) and text[self.pos].isdigit():
                    self.pos += 1
            else:
                self.pos = save
        token = text[start:self.pos]
        if token == ".":
            raise self.error("malformed number")
        return Num(float(token) if is_float else int(token))

    def parse_ident(self) -> Expr:
        start = self.pos
        text = self.text
        while self.pos < len(text) and (text[self.pos].isalnum() or text[self.pos] == "_"):
            self.pos += 1
        name = text[start:self.pos]
        if self.peek() == "(":
            if name not in FUNCTIONS:
                self.pos = start
                raise UnknownIdentifierError(name, start)
            self.pos += 1
            args = [self.parse_expr()]
            while self.take(","):
                args.append(self.parse_expr())
            self.expect(")")
            return Call(name, tuple(args))
        if name in self.coords:
            return Var(name)
        if name in NAMED_CONSTANTS:
            return ConstName(name)
        raise UnknownIdentifierError(name, start)


def parse_expr(text: str, coords: Sequence[str]) -> Expr:
    """Parse ``text`` against the declared coordinate names.

    Raises :class:`ExprSyntaxError` with a byte offset on malformed input
    and :class:`UnknownIdentifierError` for undeclared identifiers.
    """
    return _Parser(text, coords).parse()


# -- printer ------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "pow": 4, "atom": 5}


def _prec(e: Expr) -> int:
    match e:
        case Bin(op, _, _):
            return _PREC[op]
        case Neg(_):
            return _PREC["neg"]
        case Pow(_, _):
            return _PREC["pow"]
        case _:
            return _PREC["atom"]


def to_text(e: Expr) -> str:
    """Canonical text form; ``parse(to_text(parse(s)))`` is a fixed point."""

    def wrap(child: Expr, minimum: int) -> str:
        s = to_text(child)
        return f"({s})" if _prec(child) < minimum else s

    match e:
        case Num(v):
            return repr(v)
        case ConstName(name):
            return name
        case Var(name):
            return name
        case Neg(arg):
            return "-" + wrap(arg, _PREC["neg"])
        case Bin(op, l, r):
            p = _PREC[op]
            # left-associative: right operand needs strictly higher precedence
            left = wrap(l, p)
            right = wrap(r, p + 1)
            return f"{left} {op} {right}"
        case Pow(base, k):
            b = wrap(base, _PREC["atom"])
            return f"{b}^{k}"
        case Call(fn, args):
            return f"{fn}(" + ", ".join(to_text(a) for a in args) + ")"
    raise TypeError(f"not an expression node: {e!r}")


# -- rings and evaluation -------------------------------------------------------


class Ring:
    """Scalar ring adapter: constant lifting plus function dispatch."""

    name = "ring"

    def lift_int(self, n: int):
        return n

    def lift_float(self, x: float):
        return x

    def named_constant(self, name: str):
        return math.pi if name == "pi" else math.e

    def div(self, a, b):
        if not isinstance(a, jet.Jet2) and not isinstance(b, jet.Jet2):
            if b == 0:
                raise EvalDomainError("division by zero")
        return a / b

    def pow_int(self, a, k: int):
        if k < 0 and not isinstance(a, jet.Jet2) and a == 0:
            raise EvalDomainError("zero raised to a negative power")
        return a**k

    def call(self, fn: str, args: list):
        raise RingError(f"{self.name} ring does not support {fn}()")


class RealRing(Ring):
    name = "real"

    _SINGULAR = {
        "log": lambda u: u <= 0.0,
        "sqrt": lambda u: u < 0.0,
    }

    def call(self, fn: str, args: list):
        if len(args) != 1:
            raise RingError(f"{fn}() expects one argument")
        u = args[0]
        guard = self._SINGULAR.get(fn)
        if guard and guard(u):
            raise EvalDomainError(f"{fn} of out-of-domain value {u!r}")
        return getattr(math, fn)(float(u))


class JetRing(Ring):
    name = "jet"

    def call(self, fn: str, args: list):
        if len(args) != 1:
            raise RingError(f"{fn}() expects one argument")
        u = args[0]
        if not isinstance(u, jet.Jet2):
            return RealRing().call(fn, args)  # constant subtree
        return jet.JET_FUNCTIONS[fn](u)


class RationalRing(Ring):
    name = "rational"

    def lift_int(self, n: int):
        return Fraction(n)

    def lift_float(self, x: float):
        raise RingError("rational ring rejects decimal literals")

    def named_constant(self, name: str):
        raise RingError(f"rational ring rejects the constant {name}")

    def div(self, a, b):
        if b == 0:
            raise EvalDomainError("division by zero")
        return Fraction(a) / Fraction(b)

    def pow_int(self, a, k: int):
        if a == 0 and k < 0:
            raise EvalDomainError("zero raised to a negative power")
        return Fraction(a) ** k


REAL = RealRing()
JET = JetRing()
RATIONAL = RationalRing()


def eval_expr(e: Expr, env: Mapping[str, object], ring: Ring = REAL):
    """Evaluate ``e`` with coordinate values from ``env`` over ``ring``.

    Over the jet ring, seeding every coordinate yields the value, gradient
    and Hessian in a single pass.
    """
    match e:
        case Num(v):
            return ring.lift_int(v) if isinstance(v, int) else ring.lift_float(v)
        case ConstName(name):
            return ring.named_constant(name)
        case Var(name):
            try:
                return env[name]
            except KeyError:
                raise UnknownIdentifierError(name) from None
        case Neg(arg):
            return -eval_expr(arg, env, ring)
        case Bin(op, l, r):
            a = eval_expr(l, env, ring)
            b = eval_expr(r, env, ring)
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            return ring.div(a, b)
        case Pow(base, k):
            return ring.pow_int(eval_expr(base, env, ring), k)
        case Call(fn, args):
            return ring.call(fn, [eval_expr(a, env, ring) for a in args])
    raise TypeError(f"not an expression node: {e!r}")
