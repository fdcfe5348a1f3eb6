"""
Tokenizer and recursive-descent parser of the Lagrangian language.

Grammar, loosest binding first::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := primary ["^" ["-" | "+"] INTEGER]
    primary := NUMBER | "i" | VARIABLE | NAME "(" "x" ")"
             | FUNC "(" expr ")" | "(" expr ")"
"""

import math
import typing as tp
import re

from . import errors
from ._expr import (
    FUNCTIONS,
    Add,
    Const,
    Div,
    Expr,
    Func,
    ImagUnit,
    Mul,
    Neg,
    Pow,
    Ref,
    Sub,
    Var,
)


class Token(tp.NamedTuple):
    kind: tp.Literal["number", "name", "op", "end"]
    text: str
    position: int


_TOKEN_RE: tp.Final = re.compile(
    r"""
    (?P<space>\s+)
    | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
    | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
    | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise errors.ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        if kind != "space":
            tokens.append(Token(kind, match.group(), pos))  # type: ignore[arg-type]
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def declared_variables(n: int, has_param: bool) -> frozenset[str]:
    names = {"x", "y"} | {f"v{k}" for k in range(1, n + 1)}
    if has_param:
        names.add("xi")
    return frozenset(names)


class _Parser:
    def __init__(
        self, text: str, n: int, has_param: bool, references: tp.Collection[str]
    ):
        self.tokens = tokenize(text)
        self.index = 0
        self.variables = declared_variables(n, has_param)
        self.references = frozenset(references)

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def expect(self, text: str) -> Token:
        token = self.current
        if token.text != text:
            found = repr(token.text) if token.kind != "end" else "end of input"
            msg = f"expected '{text}', found {found}"
            raise errors.ExprSyntaxError(msg, token.position)
        return self.advance()

    def parse(self) -> Expr:
        if self.current.kind == "end":
            raise errors.ExprSyntaxError("empty expression", 0)
        e = self.expr()
        if self.current.kind != "end":
            raise errors.ExprSyntaxError(
                f"unexpected {self.current.text!r}", self.current.position
            )
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.current.text in ("+", "-"):
            op = self.advance().text
            right = self.term()
            e = Add(e, right) if op == "+" else Sub(e, right)
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.current.text in ("*", "/"):
            op = self.advance().text
            right = self.unary()
            e = Mul(e, right) if op == "*" else Div(e, right)
        return e

    def unary(self) -> Expr:
        if self.current.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.current.text != "^":
            return base
        self.advance()
        sign = 1
        if self.current.text in ("-", "+"):
            sign = -1 if self.advance().text == "-" else 1
        token = self.current
        if token.kind != "number" or not token.text.isdigit():
            raise errors.ExprSyntaxError("exponent must be an integer", token.position)
        self.advance()
        return Pow(base, sign * int(token.text))

    def primary(self) -> Expr:
        token = self.current
        if token.kind == "number":
            value = float(token.text)
            if not math.isfinite(value):
                msg = "numeric literal out of range"
                raise errors.ExprSyntaxError(msg, token.position)
            self.advance()
            return Const(value)
        if token.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if token.kind != "name":
            found = repr(token.text) if token.kind != "end" else "end of input"
            raise errors.ExprSyntaxError(f"unexpected {found}", token.position)

        self.advance()
        name = token.text
        if name == "i":
            return ImagUnit()
        if name in self.variables:
            return Var(name)
        if name in FUNCTIONS:
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Func(name, arg)
        if name in self.references:
            self.expect("(")
            self.expect("x")
            self.expect(")")
            return Ref(name)
        raise errors.UndeclaredVariableError(name, token.position)


def parse(
    text: str,
    n: int = 1,
    has_param: bool = False,
    references: tp.Collection[str] = (),
) -> Expr:
    """
    Parse Lagrangian text into an expression tree.

    Parameters
    ----------
    text : str
        Expression, see the grammar in the module docstring.

    n : int, default 1
        Number of scale-derivative slots; declares ``v1`` ... ``vn``.

    has_param : bool, default False
        Declares the parameter ``xi``.

    references : collection of str, default ()
        Names of external references, written ``NAME(x)``.

    Raises
    ------
    :class:`.ExprSyntaxError`
    :class:`.UndeclaredVariableError`

    Examples
    --------
    ::

        >>> sv.parse("v1^2")
        Pow(base=Var(name='v1'), exponent=2)
    """
    if int(n) != n or n < 0:
        raise ValueError(f"{n=}, but it must be a nonnegative integer")
    reserved = declared_variables(n, has_param) | set(FUNCTIONS) | {"i", "x"}
    clashing = set(references) & reserved
    if clashing:
        msg = f"reference names {sorted(clashing)} clash with reserved names"
        raise ValueError(msg)
    return _Parser(text, int(n), has_param, references).parse()
