"""
Expression trees of the Lagrangian language.

Nodes are frozen dataclasses, so two trees compare equal iff they are
structurally identical.
"""

import typing as tp
import dataclasses

import numpy as np

from . import errors

FUNCTIONS: tp.Final = ("sin", "cos", "exp")


@dataclasses.dataclass(frozen=True)
class Const:
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclasses.dataclass(frozen=True)
class ImagUnit:
    pass


@dataclasses.dataclass(frozen=True)
class Var:
    """One of ``x``, ``y``, ``v1`` ... ``vn``, ``xi``."""

    name: str


@dataclasses.dataclass(frozen=True)
class Ref:
    """External reference ``NAME(x)``, resolved through the bindings."""

    name: str


@dataclasses.dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclasses.dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclasses.dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclasses.dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclasses.dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclasses.dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclasses.dataclass(frozen=True)
class Func:
    name: str
    arg: "Expr"

    def __post_init__(self):
        if self.name not in FUNCTIONS:
            raise ValueError(f"name={self.name!r}, but it must be one of {FUNCTIONS}")


Expr = Const | ImagUnit | Var | Ref | Add | Sub | Mul | Div | Pow | Neg | Func

ZERO: tp.Final = Const(0.0)
ONE: tp.Final = Const(1.0)

_BINARY_SYMBOLS: tp.Final = {Add: "+", Sub: "-", Mul: "*", Div: "/"}


def format_expr(e: Expr) -> str:
    """
    Fully parenthesized text of `e`.

    Reparsing the text gives back `e` for every tree the parser can produce.

    Examples
    --------
    ::

        >>> sv.format_expr(sv.parse("-v1^2 + 2*x"))
        '((-(v1^2)) + (2.0 * x))'
    """
    match e:
        case Const(value):
            if value.imag == 0.0 and value.real >= 0.0:
                return repr(value.real)
            if value.imag == 0.0:
                return f"(-{-value.real!r})"
            return f"({value.real!r} + ({value.imag!r} * i))"
        case ImagUnit():
            return "i"
        case Var(name):
            return name
        case Ref(name):
            return f"{name}(x)"
        case Add(l, r) | Sub(l, r) | Mul(l, r) | Div(l, r):
            symbol = _BINARY_SYMBOLS[type(e)]
            return f"({format_expr(l)} {symbol} {format_expr(r)})"
        case Pow(base, n):
            return f"({format_expr(base)}^{n})"
        case Neg(operand):
            return f"(-{format_expr(operand)})"
        case Func(name, arg):
            return f"{name}({format_expr(arg)})"
    raise TypeError(f"not an expression node: {e!r}")


def free_refs(e: Expr) -> set[str]:
    """Names of all external references occurring in `e`."""
    match e:
        case Ref(name):
            return {name}
        case Add(l, r) | Sub(l, r) | Mul(l, r) | Div(l, r):
            return free_refs(l) | free_refs(r)
        case Pow(base, _):
            return free_refs(base)
        case Neg(operand) | Func(_, operand):
            return free_refs(operand)
    return set()


def eval_tree(
    e: Expr,
    variables: tp.Mapping[str, tp.Any],
    refs: tp.Mapping[str, tp.Any],
) -> tp.Any:
    """
    Evaluate `e` with numpy semantics.

    Parameters
    ----------
    e : Expr
    variables : mapping
        Values (scalars or broadcastable arrays) of the variables.
    refs : mapping
        Values of the external references at the same abscissae.

    Raises
    ------
    :class:`.ExprEvaluationError`
        On zero denominators, unbound references and unset variables.
    """
    match e:
        case Const(value):
            return value
        case ImagUnit():
            return 1j
        case Var(name):
            try:
                return variables[name]
            except KeyError:
                raise errors.ExprEvaluationError(f"variable '{name}' has no value")
        case Ref(name):
            try:
                return refs[name]
            except KeyError:
                raise errors.ExprEvaluationError(f"unbound reference '{name}'")
        case Add(l, r):
            return eval_tree(l, variables, refs) + eval_tree(r, variables, refs)
        case Sub(l, r):
            return eval_tree(l, variables, refs) - eval_tree(r, variables, refs)
        case Mul(l, r):
            return eval_tree(l, variables, refs) * eval_tree(r, variables, refs)
        case Div(l, r):
            den = np.asarray(eval_tree(r, variables, refs), dtype=complex)
            if np.any(den == 0.0):
                msg = f"division by zero in '{format_expr(e)}'"
                raise errors.ExprEvaluationError(msg)
            return eval_tree(l, variables, refs) / den
        case Pow(base, n):
            b = np.asarray(eval_tree(base, variables, refs), dtype=complex)
            if n < 0 and np.any(b == 0.0):
                msg = f"zero raised to a negative power in '{format_expr(e)}'"
                raise errors.ExprEvaluationError(msg)
            return b**n if n >= 0 else 1.0 / b ** (-n)
        case Neg(operand):
            return -eval_tree(operand, variables, refs)
        case Func(name, arg):
            value = np.asarray(eval_tree(arg, variables, refs), dtype=complex)
            return getattr(np, name)(value)
    raise TypeError(f"not an expression node: {e!r}")


def _is(e: Expr, value: complex) -> bool:
    return isinstance(e, Const) and e.value == value


def const(value: complex) -> Expr:
    """Constant node; negative reals become ``Neg(Const)``."""
    value = complex(value)
    if value.imag == 0.0 and value.real < 0.0:
        return Neg(Const(-value.real))
    return Const(value)


def add(l: Expr, r: Expr) -> Expr:
    if _is(l, 0):
        return r
    if _is(r, 0):
        return l
    return Add(l, r)


def sub(l: Expr, r: Expr) -> Expr:
    if _is(r, 0):
        return l
    if _is(l, 0):
        return neg(r)
    return Sub(l, r)


def mul(l: Expr, r: Expr) -> Expr:
    if _is(l, 0) or _is(r, 0):
        return ZERO
    if _is(l, 1):
        return r
    if _is(r, 1):
        return l
    return Mul(l, r)


def div(l: Expr, r: Expr) -> Expr:
    if _is(l, 0):
        return ZERO
    if _is(r, 1):
        return l
    return Div(l, r)


def neg(e: Expr) -> Expr:
    if _is(e, 0):
        return ZERO
    if isinstance(e, Neg):
        return e.operand
    return Neg(e)


def power(base: Expr, n: int) -> Expr:
    if n == 0:
        return ONE
    if n == 1:
        return base
    return Pow(base, n)


def diff_tree(e: Expr, var: str) -> Expr:
    """
    Exact derivative of `e` with respect to the variable `var`.

    External references are constants. Only 0/1 folding is applied.
    """
    match e:
        case Const() | ImagUnit() | Ref():
            return ZERO
        case Var(name):
            return ONE if name == var else ZERO
        case Add(l, r):
            return add(diff_tree(l, var), diff_tree(r, var))
        case Sub(l, r):
            return sub(diff_tree(l, var), diff_tree(r, var))
        case Mul(l, r):
            return add(mul(diff_tree(l, var), r), mul(l, diff_tree(r, var)))
        case Div(l, r):
            dl, dr = diff_tree(l, var), diff_tree(r, var)
            return div(sub(mul(dl, r), mul(l, dr)), power(r, 2))
        case Pow(base, n):
            db = diff_tree(base, var)
            if n == 0 or _is(db, 0):
                return ZERO
            return mul(mul(const(n), power(base, n - 1)), db)
        case Neg(operand):
            return neg(diff_tree(operand, var))
        case Func(name, arg):
            da = diff_tree(arg, var)
            if _is(da, 0):
                return ZERO
            if name == "sin":
                outer: Expr = Func("cos", arg)
            elif name == "cos":
                outer = Neg(Func("sin", arg))
            else:
                outer = e
            return mul(outer, da)
    raise TypeError(f"not an expression node: {e!r}")
