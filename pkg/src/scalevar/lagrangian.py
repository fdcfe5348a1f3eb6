"""
Lagrangians written in a small expression language.

A Lagrangian ``L(x, y, v1, ..., vn[, xi])`` is parsed once; its partial
derivatives with respect to ``y``, the scale-derivative slots ``v_k`` and the
parameter ``xi`` are derived symbolically and cached. Non-smooth dependence
on ``x`` enters through bound external references such as ``B(x)``.
"""

import typing as tp
import dataclasses
import functools

import numpy as np
import numpy.typing as npt

from . import errors
from ._core import (
    EpsilonVector,
    Interval,
    as_handle,
    normalize_eps_vector,
)
from ._expr import (
    Expr,
    Mul,
    Sub,
    const,
    diff_tree,
    eval_tree,
    format_expr,
    free_refs,
)
from ._parser import parse
from .scale import box, shifted_breakpoints

Slot = int | tp.Literal["xi"]


class Binding(tp.Protocol):
    """External reference of a Lagrangian, evaluated with the current scales."""

    #: extra depth of the curve's domain this binding reaches out to
    nesting: int

    def __call__(self, x: npt.ArrayLike, eps: EpsilonVector) -> tp.Any: ...

    def breakpoints(self, eps: EpsilonVector) -> tuple[float, ...]: ...

    @property
    def domain(self) -> Interval: ...


@dataclasses.dataclass(frozen=True, eq=False)
class CurveBinding:
    """``B(x) = c(x)``, independent of the scales."""

    curve: tp.Any
    nesting: int = 0

    def __call__(self, x: npt.ArrayLike, eps: EpsilonVector) -> tp.Any:
        return as_handle(self.curve)(x)

    def breakpoints(self, eps: EpsilonVector) -> tuple[float, ...]:
        return as_handle(self.curve).breakpoints

    @property
    def domain(self) -> Interval:
        return as_handle(self.curve).domain


@dataclasses.dataclass(frozen=True, eq=False)
class ScaleDerivativeBinding:
    """
    ``B(x) = box(c, x, eps[slot - 1])``: follows the scale of the functional.

    Parameters
    ----------
    curve : :class:`.Curve`
    slot : int, default 1
        Which scale of the ε-context to use (1-based).
    """

    curve: tp.Any
    slot: int = 1
    nesting: int = 1

    def __post_init__(self):
        if int(self.slot) != self.slot or self.slot < 1:
            raise ValueError(f"slot={self.slot}, but it must be a positive integer")

    def scale(self, eps: EpsilonVector) -> float:
        if self.slot > len(eps):
            raise errors.ExprEvaluationError(
                f"binding uses scale {self.slot}, but only {len(eps)} are given"
            )
        return eps[self.slot - 1]

    def __call__(self, x: npt.ArrayLike, eps: EpsilonVector) -> tp.Any:
        return box(self.curve, x, self.scale(eps))

    def breakpoints(self, eps: EpsilonVector) -> tuple[float, ...]:
        points = as_handle(self.curve).breakpoints
        return shifted_breakpoints(points, (self.scale(eps),))

    @property
    def domain(self) -> Interval:
        return as_handle(self.curve).domain


@dataclasses.dataclass(frozen=True)
class ArgVector:
    """
    Argument ``u = (x, y, v1, ..., vn[, xi])`` of a Lagrangian.

    All entries may be arrays of a common shape (one entry per abscissa).
    """

    x: tp.Any
    y: tp.Any
    v: tuple[tp.Any, ...] = ()
    param: complex | None = None

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(self.v))

    def variables(self) -> dict[str, tp.Any]:
        rtn = {"x": self.x, "y": self.y}
        rtn.update({f"v{k}": v for k, v in enumerate(self.v, start=1)})
        if self.param is not None:
            rtn["xi"] = self.param
        return rtn


@dataclasses.dataclass(frozen=True, eq=False)
class Lagrangian:
    """
    Parsed Lagrangian with cached symbolic partials.

    Parameters
    ----------
    n : int
        Number of scale-derivative slots ``v1`` ... ``vn``.

    has_param : bool
        Whether the parameter ``xi`` is declared.

    body : Expr
        The expression tree.

    bindings : mapping of str to Binding, default {}
        External references occurring in `body`.

    Notes
    -----
    Slots are numbered as in the Euler-Lagrange equations: slot 2 is ``y``,
    slot ``k + 2`` is ``v_k``, slot ``n + 3`` (or ``"xi"``) is the parameter.

    Examples
    --------
    ::

        >>> L = sv.Lagrangian.from_text("v1^2 + y*v1")
        >>> sv.format_expr(L.partial_expr(3))
        '((2.0 * v1) + y)'
    """

    n: int
    has_param: bool
    body: Expr
    bindings: tp.Mapping[str, Binding] = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"n={self.n}, but it must be a nonnegative integer")
        object.__setattr__(self, "bindings", dict(self.bindings))
        missing = free_refs(self.body) - set(self.bindings)
        if missing:
            raise errors.ExprEvaluationError(f"unbound references {sorted(missing)}")

    @classmethod
    def from_text(
        cls,
        text: str,
        n: int = 1,
        has_param: bool = False,
        bindings: tp.Mapping[str, Binding] | None = None,
    ) -> "Lagrangian":
        bindings = dict(bindings or {})
        body = parse(text, n, has_param, references=tuple(bindings))
        return cls(n, has_param, body, bindings)

    @property
    def text(self) -> str:
        return format_expr(self.body)

    @property
    def param_slot(self) -> int:
        return self.n + 3

    def slot_variable(self, slot: Slot) -> str:
        """Variable name of a slot (2 → "y", k + 2 → "vk", param → "xi")."""
        if slot == "xi" or (self.has_param and slot == self.param_slot):
            if not self.has_param:
                raise ValueError("this Lagrangian has no parameter slot")
            return "xi"
        if slot == 2:
            return "y"
        if isinstance(slot, int) and 3 <= slot <= self.n + 2:
            return f"v{slot - 2}"
        valid = f"2, ..., {self.n + 2}"
        if self.has_param:
            valid += f", {self.param_slot}"
        raise ValueError(f"{slot=}, but it must be one of {valid}")

    def partial_expr(self, slot: Slot) -> Expr:
        return self._partials[self.slot_variable(slot)]

    @functools.cached_property
    def _partials(self) -> dict[str, Expr]:
        names = ["y"] + [f"v{k}" for k in range(1, self.n + 1)]
        if self.has_param:
            names.append("xi")
        return {name: diff_tree(self.body, name) for name in names}

    def breakpoints(self, eps: EpsilonVector) -> tuple[float, ...]:
        rtn: tuple[float, ...] = ()
        for b in self.bindings.values():
            rtn += b.breakpoints(eps)
        return rtn

    def evaluate(
        self, u: ArgVector, eps: EpsilonVector | tp.Sequence[float] | float
    ) -> tp.Any:
        """Value of the Lagrangian at `u`."""
        return eval_expr(self.body, u, eps, self)

    def partial(
        self,
        slot: Slot,
        u: ArgVector,
        eps: EpsilonVector | tp.Sequence[float] | float,
    ) -> tp.Any:
        return eval_expr(self.partial_expr(slot), u, eps, self)

    def scaled(self, factor: complex) -> "Lagrangian":
        """The Lagrangian ``factor * L``."""
        return Lagrangian(
            self.n, self.has_param, Mul(const(factor), self.body), self.bindings
        )

    def minus(self, other: "Lagrangian", factor: complex = 1.0) -> "Lagrangian":
        """
        The Lagrangian ``L - factor * other``, e.g. ``K = L - lambda * g``.
        """
        if other.n != self.n:
            raise ValueError(f"arities differ: {self.n} and {other.n}")
        clashing = {
            name
            for name in set(self.bindings) & set(other.bindings)
            if self.bindings[name] is not other.bindings[name]
        }
        if clashing:
            raise ValueError(f"bindings {sorted(clashing)} are bound differently")
        return Lagrangian(
            self.n,
            self.has_param or other.has_param,
            Sub(self.body, Mul(const(factor), other.body)),
            {**self.bindings, **other.bindings},
        )


def eval_expr(
    e: Expr,
    u: ArgVector,
    eps_context: EpsilonVector | tp.Sequence[float] | float,
    lagrangian: Lagrangian | None = None,
) -> tp.Any:
    """
    Evaluate the expression `e` at the argument `u`.

    External references are evaluated at ``u.x`` with the scales
    `eps_context`, using the bindings of `lagrangian`.

    Parameters
    ----------
    e : Expr
    u : :class:`ArgVector`
    eps_context : :class:`.EpsilonVector` or float or sequence of float
    lagrangian : :class:`Lagrangian`, optional
        Supplies the arity check and the bindings.

    Returns
    -------
    complex or ndarray of complex
        Broadcast to the shape of ``u.x``.

    Raises
    ------
    :class:`.ExprEvaluationError`

    Examples
    --------
    ::

        >>> u = sv.ArgVector(0.0, 0.0, (2 - 0.1j,))
        >>> complex(sv.eval_expr(sv.parse("v1^2"), u, 0.1))
        (3.99-0.4j)
    """
    eps = normalize_eps_vector(eps_context)
    bindings: tp.Mapping[str, Binding] = {}
    if lagrangian is not None:
        if len(u.v) != lagrangian.n:
            msg = f"argument has {len(u.v)} slot values, but {lagrangian.n} are needed"
            raise errors.ExprEvaluationError(msg)
        bindings = lagrangian.bindings
    refs = {name: bindings[name](u.x, eps) for name in free_refs(e) if name in bindings}
    shape = np.shape(u.x)
    with np.errstate(over="ignore", invalid="ignore"):
        value = eval_tree(e, u.variables(), refs)
    return np.broadcast_to(np.asarray(value, dtype=complex), shape)[()]


def diff_expr(e: Expr, var: str) -> Expr:
    """
    Exact symbolic derivative of `e` with respect to `var`.

    External references are constant in ``y``, ``v_k`` and ``xi``.

    Examples
    --------
    ::

        >>> sv.format_expr(sv.diff_expr(sv.parse("(xi*x)^2", has_param=True), "xi"))
        '((2.0 * (xi * x)) * x)'
    """
    return diff_tree(e, var)


def partial(
    L: Lagrangian,
    slot: Slot,
    u: ArgVector,
    eps_context: EpsilonVector | tp.Sequence[float] | float,
) -> tp.Any:
    """
    Value of the partial derivative ``∂_slot L`` at `u`.

    Examples
    --------
    ::

        >>> L = sv.Lagrangian.from_text("y*v1")
        >>> complex(sv.partial(L, 2, sv.ArgVector(0.0, 1.0, (5.0,)), 0.1))
        (5+0j)
    """
    return L.partial(slot, u, eps_context)
