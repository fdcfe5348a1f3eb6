"""
Functionals, first variations and Euler-Lagrange residuals.

A :class:`Functional` couples a :class:`.Lagrangian` with an interval, the
scales of its scale-derivative slots and a quadrature rule::

    Phi(y) = int_a^b L(x, y(x), box_{eps_1} y(x), ..., box_{eps_n} y(x)) dx

Residuals are computed on a grid at the working scales and bracketed over a
proportional ladder, i.e. all scales shrink together.
"""

import typing as tp
import dataclasses
import logging

import numpy as np
import numpy.typing as npt

from . import errors
from .bracket import BracketResult, LadderConfig, bracket, bracket_array
from .constants import (
    DEFAULT_CONDITION_TOL,
    DEFAULT_GRID_N,
    DEFAULT_HIGHER_ORDER_DIFF_STEP,
    DEFAULT_SOLVE_TOL,
    SECANT_MAX_ITER,
)
from .curves import Curve, VariationCurve, required_beta, validate_domain
from .lagrangian import ArgVector, Lagrangian, Slot
from ._core import (
    EpsilonVector,
    Epsilon,
    FunctionHandle,
    Interval,
    as_handle,
    merge_breakpoints,
    normalize_eps_vector,
    normalize_interval,
)
from ._expr import eval_tree, diff_tree
from ._quadrature import QuadratureConfig, nodes_and_weights
from .scale import box, box_k, classical_diff, shifted_breakpoints, sigma_correction

logger = logging.getLogger(__name__)

ResidualVerdict = tp.Literal["extremal", "not-extremal", "inconclusive"]


@dataclasses.dataclass(frozen=True, eq=False)
class Functional:
    """
    The functional ``Phi(y) = int_a^b L(u(x)) dx``.

    Parameters
    ----------
    L : :class:`.Lagrangian`

    interval : (float, float)

    eps : float or sequence of float or :class:`.EpsilonVector`
        One scale per slot for ``order=1``; a single scale for ``order=2``.

    quad : :class:`.QuadratureConfig`, optional

    order : {1, 2}, default 1
        With ``order=2`` the two slots hold the first and second scale
        derivatives of `y` at the single scale.

    Raises
    ------
    ValueError
        If the number of scales does not match the slots, or a scale is not
        smaller than half of the interval.
    """

    L: Lagrangian
    interval: Interval
    eps: EpsilonVector
    quad: QuadratureConfig = dataclasses.field(default_factory=QuadratureConfig)
    order: int = 1

    def __post_init__(self):
        interval = normalize_interval(self.interval)
        eps = normalize_eps_vector(self.eps)
        object.__setattr__(self, "interval", interval)
        object.__setattr__(self, "eps", eps)
        if self.order not in (1, 2):
            raise ValueError(f"order={self.order}, but it must be 1 or 2")
        if self.order == 2 and (self.L.n != 2 or len(eps) != 1):
            msg = "order=2 needs a Lagrangian with n=2 and a single scale"
            raise ValueError(msg)
        if self.order == 1 and self.L.n > 0 and len(eps) != self.L.n:
            msg = f"{self.L.n} slots, but {len(eps)} scales given"
            raise ValueError(msg)
        for e in eps:
            Epsilon(e).check_interval(interval)

    def at(self, eps: EpsilonVector | tp.Sequence[float] | float) -> "Functional":
        """Same functional at other scales."""
        return dataclasses.replace(self, eps=normalize_eps_vector(eps))

    def with_lagrangian(self, L: Lagrangian) -> "Functional":
        return dataclasses.replace(self, L=L)


@dataclasses.dataclass(frozen=True, eq=False)
class ResidualReport:
    """
    Euler-Lagrange residual on a grid.

    Attributes
    ----------
    grid : ndarray of float
        Interior abscissae.
    values : ndarray of complex
        Residual at the working scales.
    sup_norm : float
        ``max |values|``.
    bracketed : list of :class:`.BracketResult`
        Per-point limit estimates over the ladder.
    verdict : {"extremal", "not-extremal", "inconclusive"}
        Extremal iff every bracketed point is zero; inconclusive if any
        diverges.
    """

    grid: npt.NDArray[np.float64]
    values: npt.NDArray[np.complex128]
    sup_norm: float
    bracketed: list[BracketResult]
    verdict: ResidualVerdict

    @property
    def limits(self) -> list[complex | None]:
        return [b.limit for b in self.bracketed]

    @property
    def limit_sup(self) -> float:
        """Largest bracketed limit, ``inf`` if any point diverges."""
        if any(b.limit is None for b in self.bracketed):
            return np.inf
        return max((abs(b.limit) for b in self.bracketed), default=0.0)  # type: ignore


@dataclasses.dataclass(frozen=True)
class MultiplierResult:
    """
    Result of :func:`isoperimetric_multiplier`.

    Attributes
    ----------
    lam : complex
        The multiplier ``lambda`` of ``K = L - lambda * g``.
    k_residual_sup : float
        Largest bracketed residual of ``K`` on the grid.
    psi_residual_sup : float
        Largest bracketed residual of the constraint Lagrangian ``g``; must be
        positive (the curve is not an extremal of the constraint).
    constraint : complex
        The constraint level ``Psi(y)``.
    excluded : int
        Grid points dropped because a bracket diverged.
    """

    lam: complex
    k_residual_sup: float
    psi_residual_sup: float
    constraint: complex = 0j
    excluded: int = 0


def residual_grid(interval: Interval | tp.Sequence[float], grid_n: int) -> npt.NDArray:
    """
    `grid_n` equispaced interior points of `interval`, ends excluded.
    """
    if int(grid_n) != grid_n or grid_n < 1:
        raise ValueError(f"{grid_n=}, but it must be a positive integer")
    a, b = normalize_interval(interval)
    return a + (np.arange(grid_n) + 1.0) * (b - a) / (grid_n + 1.0)


def _check_domains(F: Functional, y: tp.Any, depth: int, extra: float = 0.0) -> None:
    interval = F.interval.padded(extra)
    validate_domain(y, interval, F.eps.eps_max, depth)
    for binding in F.L.bindings.values():
        validate_domain(
            binding, interval, F.eps.eps_max, depth - 1 + binding.nesting
        )


def _integrand_breakpoints(F: Functional, depth: int, *curves) -> tuple[float, ...]:
    points = merge_breakpoints(
        *(as_handle(c).breakpoints for c in curves), F.L.breakpoints(F.eps)
    )
    return shifted_breakpoints(points, F.eps, depth)


def arg_vector(
    F: Functional, y: tp.Any, x: npt.ArrayLike, xi: complex | None = None
) -> ArgVector:
    """
    The argument ``u(x) = (x, y(x), box_{eps_1} y(x), ..., box_{eps_n} y(x))``.

    For ``order=2`` the slots are ``box y`` and ``box_k(y, 2)``, the latter
    being the scale derivative of ``y'``.

    Examples
    --------
    ::

        >>> F = sv.Functional(sv.Lagrangian.from_text("v1^2"), (0, 1), 0.1)
        >>> u = sv.arg_vector(F, sv.corpus_curve("abs"), 0.0)
        >>> complex(u.v[0])
        -1j
    """
    if F.L.has_param and xi is None:
        raise ValueError("the Lagrangian has a parameter, but xi is None")
    x_ = np.asarray(x, dtype=float)
    values = as_handle(y)(x_)
    if F.order == 2:
        e = F.eps[0]
        v = (box(y, x_, e), box_k(y, x_, e, 2))
    else:
        v = tuple(box(y, x_, e) for e in F.eps.eps[: F.L.n])
    return ArgVector(x_, values, v, None if xi is None else complex(xi))


def _partial_handle(
    F: Functional, y: tp.Any, slot: Slot, xi: complex | None
) -> FunctionHandle:
    """The handle ``x -> d_slot L(u(x))``."""
    domain = as_handle(y).domain.padded(-F.eps.eps_max)

    def func(x):
        return F.L.partial(slot, arg_vector(F, y, x, xi), F.eps)

    return FunctionHandle(func, domain)


def evaluate_functional(F: Functional, y: tp.Any, xi: complex | None = None) -> complex:
    """
    Value of the functional at `y` (and the parameter `xi`).

    The quadrature panels are split at the breakpoints of `y` and of the
    bindings, shifted by every ``±eps_k``.

    Examples
    --------
    ::

        >>> B = sv.ScaleDerivativeBinding(sv.corpus_curve("abs"))
        >>> L = sv.Lagrangian.from_text("(xi*v1 - B(x))^2", has_param=True,
        ...                             bindings={"B": B})
        >>> F = sv.Functional(L, (-1, 1), 0.1)
        >>> round(sv.evaluate_functional(F, sv.corpus_curve("abs"), 0.0).real, 10)
        1.8
    """
    _check_domains(F, y, 1)
    depth = 2 if F.order == 2 else 1

    def integrand(x):
        return F.L.evaluate(arg_vector(F, y, x, xi), F.eps)

    x, w = nodes_and_weights(
        F.interval, F.quad, _integrand_breakpoints(F, depth, y)
    )
    return complex(np.sum(w * integrand(x)))


def first_variation(
    F: Functional,
    y: tp.Any,
    h: VariationCurve,
    xi: complex | None = None,
    delta: complex = 0.0,
) -> complex:
    """
    First variation ``F_y(h)`` of an order-1 functional.

    The sum of three integrals::

        int [d2 L - sum_k box_{eps_k}(d_{k+2} L)] h
        + int sum_k box_{eps_k}(d_{k+2} L * h)
        - i int sum_k eps_k / 2 * sigma_correction(d_{k+2} L, h)

    With a parameter, ``delta * int d_xi L`` is added.

    Parameters
    ----------
    F : :class:`Functional`
    y : :class:`.Curve`
    h : :class:`.VariationCurve`
    xi : complex, optional
        Parameter value, required if the Lagrangian has one.
    delta : complex, default 0
        Variation of the parameter.

    Raises
    ------
    :class:`.AdmissibilityError`
        If the Hölder class of `h` is below :func:`.min_beta` of `y`.
    """
    if F.order != 1:
        raise ValueError("first_variation needs an order=1 functional")
    required = required_beta(getattr(y, "alpha", 1.0))
    if h.beta < required:
        raise errors.AdmissibilityError(h.beta, required)
    _check_domains(F, y, 2)

    x, w = nodes_and_weights(
        F.interval, F.quad, _integrand_breakpoints(F, 2, y, h)
    )
    u = arg_vector(F, y, x, xi)
    hh = as_handle(h)
    hx = hh(x)
    inner = F.L.partial(2, u, F.eps) * hx
    outer = np.zeros_like(inner)
    correction = np.zeros_like(inner)
    for k, e in enumerate(F.eps.eps[: F.L.n], start=1):
        p = _partial_handle(F, y, k + 2, xi)
        inner = inner - box(p, x, e) * hx
        outer = outer + box(p * hh, x, e)
        correction = correction + e / 2.0 * sigma_correction(p, hh, x, e)
    total = np.sum(w * inner) + np.sum(w * outer) - 1j * np.sum(w * correction)
    if delta != 0.0:
        total = total + delta * np.sum(w * F.L.partial("xi", u, F.eps))
    return complex(total)


def _residual_values(
    F: Functional, y: tp.Any, x: npt.NDArray, xi: complex | None
) -> npt.NDArray[np.complex128]:
    u = arg_vector(F, y, x, xi)
    rtn = F.L.partial(2, u, F.eps)
    for k, e in enumerate(F.eps.eps[: F.L.n], start=1):
        rtn = rtn - box(_partial_handle(F, y, k + 2, xi), x, e)
    return np.broadcast_to(rtn, x.shape).astype(complex)


def _higher2_values(
    F: Functional, y: tp.Any, x: npt.NDArray, xi: complex | None, diff_step: float
) -> npt.NDArray[np.complex128]:
    e = F.eps[0]
    u = arg_vector(F, y, x, xi)
    q3 = _partial_handle(F, y, 3, xi)
    q4 = _partial_handle(F, y, 4, xi)
    b4 = FunctionHandle(lambda s: box(q4, s, e), q4.domain.padded(-e))
    rtn = F.L.partial(2, u, F.eps) - box(q3, x, e) + classical_diff(b4, x, diff_step)
    return np.broadcast_to(rtn, x.shape).astype(complex)


def _proportional(
    F: Functional, ladder: LadderConfig | None
) -> tuple[LadderConfig, tp.Callable[[float], Functional]]:
    """Ladder starting at the working scales, and the functional at a rung."""
    eps_max = F.eps.eps_max
    config = (ladder or LadderConfig()).starting_at(eps_max)

    def at(e: float) -> Functional:
        return F.at(F.eps.scaled(e / eps_max))

    return config, at


def _report(
    grid: npt.NDArray, values: npt.NDArray, bracketed: list[BracketResult]
) -> ResidualReport:
    if any(b.verdict == "divergent" for b in bracketed):
        verdict: ResidualVerdict = "inconclusive"
        count = sum(b.verdict == "divergent" for b in bracketed)
        logger.warning(f"residual bracket diverged at {count} of {len(grid)} points")
    elif all(b.is_zero for b in bracketed):
        verdict = "extremal"
    else:
        verdict = "not-extremal"
    sup = float(np.max(np.abs(values))) if len(values) else 0.0
    return ResidualReport(grid, values, sup, bracketed, verdict)


def el_residual(
    F: Functional,
    y: tp.Any,
    grid_n: int = DEFAULT_GRID_N,
    ladder: LadderConfig | None = None,
    xi: complex | None = None,
) -> ResidualReport:
    """
    Euler-Lagrange residual ``d2 L(u) - sum_k box_{eps_k}(d_{k+2} L(u))``.

    Parameters
    ----------
    F : :class:`Functional`
        An order-1 functional.
    y : :class:`.Curve`
    grid_n : int, default 201
        Number of interior grid points.
    ladder : :class:`.LadderConfig`, optional
        Ratio, length and tolerances of the ladder; its first rung is always
        the largest working scale, and all scales shrink proportionally.
    xi : complex, optional
        Parameter value, if the Lagrangian has one.

    Returns
    -------
    :class:`ResidualReport`

    Examples
    --------
    ::

        >>> F = sv.Functional(sv.Lagrangian.from_text("v1^2"), (0, 1), 0.1)
        >>> cubic = sv.corpus_curve("polynomial", coefficients=[0, 0, 0, 1])
        >>> report = sv.el_residual(F, cubic, grid_n=1)
        >>> round(report.values[0].real, 9), round(report.values[0].imag, 9)
        (-6.0, 1.2)
        >>> round(report.bracketed[0].limit.real, 6), report.verdict
        (-6.0, 'not-extremal')
    """
    if F.order != 1:
        raise ValueError("el_residual needs an order=1 functional")
    _check_domains(F, y, 2)
    grid = residual_grid(F.interval, grid_n)
    config, at = _proportional(F, ladder)
    values = _residual_values(F, y, grid, xi)
    bracketed = bracket_array(lambda e: _residual_values(at(e), y, grid, xi), config)
    return _report(grid, values, bracketed)


def _param_integral(F: Functional, y: tp.Any, xi: complex) -> complex:
    depth = 2 if F.order == 2 else 1
    x, w = nodes_and_weights(
        F.interval, F.quad, _integrand_breakpoints(F, depth, y)
    )
    return complex(np.sum(w * F.L.partial("xi", arg_vector(F, y, x, xi), F.eps)))


def el_residual_param(
    F: Functional,
    y: tp.Any,
    xi: complex,
    grid_n: int = DEFAULT_GRID_N,
    ladder: LadderConfig | None = None,
) -> tuple[ResidualReport, BracketResult]:
    """
    Both conditions for an extremal pair ``(y, xi)``.

    Returns
    -------
    report : :class:`ResidualReport`
        The residual of :func:`el_residual` with `xi` fixed.
    param : :class:`.BracketResult`
        The bracketed ``int_a^b d_xi L(u) dx``.
    """
    if not F.L.has_param:
        raise ValueError("el_residual_param needs a Lagrangian with a parameter")
    if F.L.n != 1:
        raise ValueError(f"el_residual_param needs n=1, got n={F.L.n}")
    report = el_residual(F, y, grid_n, ladder, xi)
    config, at = _proportional(F, ladder)
    param = bracket(lambda e: _param_integral(at(e), y, xi), config)
    return report, param


def el_residual_higher2(
    F: Functional,
    y: Curve,
    xi: complex | None = None,
    grid_n: int = DEFAULT_GRID_N,
    ladder: LadderConfig | None = None,
    diff_step: float = DEFAULT_HIGHER_ORDER_DIFF_STEP,
) -> ResidualReport | tuple[ResidualReport, BracketResult]:
    """
    Residual of the second-order Euler-Lagrange equation.

    ``d2 L - box(d3 L) + (box(d4 L))'`` where the prime is a central
    difference of half width `diff_step`, and ``box`` acts at the single
    scale of `F`.

    Parameters
    ----------
    F : :class:`Functional`
        An order-2 functional.
    y : :class:`.Curve`
        Needs a first derivative (analytic, or the smooth-curve fallback).
    xi : complex, optional
        Parameter value. If given (and the Lagrangian has a parameter) the
        bracketed ``int d5 L dx`` is returned as well.
    grid_n : int, default 201
    ladder : :class:`.LadderConfig`, optional
    diff_step : float, default 1e-3
        Rounding noise of the nested quotients is amplified by
        ``1 / diff_step``; keep it well above the finest ladder rung.

    Raises
    ------
    :class:`.UnsupportedOrderError`
        If `y` has no first derivative.
    """
    if F.order != 2:
        raise ValueError("el_residual_higher2 needs an order=2 functional")
    y.derivative(1)
    _check_domains(F, y, 2, extra=diff_step)
    grid = residual_grid(F.interval, grid_n)
    config, at = _proportional(F, ladder)
    values = _higher2_values(F, y, grid, xi, diff_step)
    bracketed = bracket_array(
        lambda e: _higher2_values(at(e), y, grid, xi, diff_step), config
    )
    report = _report(grid, values, bracketed)
    if xi is None or not F.L.has_param:
        return report
    param = bracket(lambda e: _param_integral(at(e), y, xi), config)
    return report, param


def isoperimetric_multiplier(
    Fphi: Functional,
    Fpsi: Functional,
    y: tp.Any,
    grid_n: int = DEFAULT_GRID_N,
    ladder: LadderConfig | None = None,
    condition_tol: float = DEFAULT_CONDITION_TOL,
) -> MultiplierResult:
    """
    Multiplier ``lambda`` of the problem ``Phi -> extr`` subject to ``Psi = c``.

    ``lambda`` minimizes ``sum |R_L - lambda R_g|**2`` over the grid, where
    ``R_L`` and ``R_g`` are the bracketed Euler-Lagrange residuals of ``L``
    and ``g``. The residual of ``K = L - lambda g`` is reported.

    Raises
    ------
    :class:`.ConditionViolationError`
        If `y` is an extremal of `Fpsi`, i.e. ``sup |R_g| <= condition_tol``.

    Examples
    --------
    ::

        >>> L = sv.Lagrangian.from_text("v1^2")
        >>> g = sv.Lagrangian.from_text("y")
        >>> y = sv.corpus_curve("polynomial", coefficients=[0, 1, -1])
        >>> res = sv.isoperimetric_multiplier(
        ...     sv.Functional(L, (0, 1), 0.1), sv.Functional(g, (0, 1), 0.1), y
        ... )
        >>> round(res.lam.real, 6)
        4.0
    """
    if (Fphi.interval, Fphi.eps, Fphi.order) != (Fpsi.interval, Fpsi.eps, Fpsi.order):
        raise ValueError("both functionals must share interval, scales and order")
    phi = el_residual(Fphi, y, grid_n, ladder)
    psi = el_residual(Fpsi, y, grid_n, ladder)

    keep = [
        i
        for i, (p, q) in enumerate(zip(phi.bracketed, psi.bracketed))
        if p.limit is not None and q.limit is not None
    ]
    excluded = len(phi.grid) - len(keep)
    if excluded:
        logger.warning(f"{excluded} grid points without residual limit excluded")
    if not keep:
        raise errors.ConditionViolationError("no grid point has finite residual limits")
    r_l = np.array([phi.bracketed[i].limit for i in keep], dtype=complex)
    r_g = np.array([psi.bracketed[i].limit for i in keep], dtype=complex)

    psi_sup = float(np.max(np.abs(r_g)))
    if psi_sup <= condition_tol:
        raise errors.ConditionViolationError(
            f"the curve is an extremal of the constraint functional "
            f"(sup |R_g| = {psi_sup:.3g} <= {condition_tol:.3g})"
        )
    lam = complex(np.sum(np.conj(r_g) * r_l) / np.sum(np.abs(r_g) ** 2))
    K = Fphi.L.minus(Fpsi.L, lam)
    k_report = el_residual(Fphi.with_lagrangian(K), y, grid_n, ladder)
    return MultiplierResult(
        lam,
        k_report.limit_sup,
        psi_sup,
        constraint_value(Fpsi, y),
        excluded,
    )


def constraint_value(Fpsi: Functional, y: tp.Any, xi: complex | None = None) -> complex:
    """The constraint level ``c = Psi(y)``."""
    return evaluate_functional(Fpsi, y, xi)


def solve_param(
    F: Functional,
    y: tp.Any,
    xi0: complex = 0.0,
    tol: float = DEFAULT_SOLVE_TOL,
    max_iter: int = SECANT_MAX_ITER,
) -> complex:
    """
    Parameter ``xi`` with ``int_a^b d_xi L(u) dx = 0``, by secant iteration.

    Raises
    ------
    :class:`.NonConvergenceError`
        If ``|G(xi)| <= tol`` is not reached within `max_iter` evaluations,
        or the secant step is undefined. The error carries the trace of
        ``(xi, G(xi))`` pairs.

    Examples
    --------
    ::

        >>> L = sv.Lagrangian.from_text("(xi*x)^2", has_param=True)
        >>> F = sv.Functional(L, (-1, 1), 0.1)
        >>> abs(sv.solve_param(F, sv.corpus_curve("abs"), 1.0)) < 1e-12
        True
    """
    if not F.L.has_param:
        raise ValueError("solve_param needs a Lagrangian with a parameter")
    _check_domains(F, y, 1)
    trace: list[tuple[complex, complex]] = []

    def G(xi: complex) -> complex:
        value = _param_integral(F, y, xi)
        trace.append((xi, value))
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug(f"secant: G({xi!r}) = {value!r}")
        return value

    x0 = complex(xi0)
    g0 = G(x0)
    if abs(g0) <= tol:
        return x0
    x1 = x0 + 0.5 * (1.0 + abs(x0))
    g1 = G(x1)
    while len(trace) < max_iter:
        if abs(g1) <= tol:
            return x1
        if g1 == g0:
            raise errors.NonConvergenceError("secant step undefined", trace)
        x0, x1 = x1, x1 - g1 * (x1 - x0) / (g1 - g0)
        g0, g1 = g1, G(x1)
    if abs(g1) <= tol:
        return x1
    raise errors.NonConvergenceError("no root of the parameter integral found", trace)


def classical_el_residual(
    L: Lagrangian, y: Curve, x: npt.ArrayLike, xi: complex | None = None
) -> tp.Any:
    """
    Classical Euler-Lagrange residual ``d2 L - d/dx d3 L`` for ``n = 1``.

    Evaluated with ``y'`` in the slot and ``y'`` and ``y''`` from the
    derivative stack of `y`; the total derivative is expanded symbolically.
    This is the limit of :func:`el_residual` for smooth `y` and Lagrangians
    without bindings.
    """
    if L.n != 1:
        raise ValueError(f"classical_el_residual needs n=1, got n={L.n}")
    if L.bindings:
        raise ValueError("classical_el_residual needs a Lagrangian without bindings")
    x_ = np.asarray(x, dtype=float)
    slope = y.derivative(1)(x_)
    curvature = y.derivative(2)(x_)
    u = ArgVector(x_, as_handle(y)(x_), (slope,), None if xi is None else complex(xi))
    variables = u.variables()
    d3 = L.partial_expr(3)
    total = (
        eval_tree(diff_tree(d3, "x"), variables, {})
        + eval_tree(diff_tree(d3, "y"), variables, {}) * slope
        + eval_tree(diff_tree(d3, "v1"), variables, {}) * curvature
    )
    rtn = eval_tree(L.partial_expr(2), variables, {}) - total
    return np.broadcast_to(np.asarray(rtn, dtype=complex), x_.shape)[()]


def variation_spot_check(
    F: Functional,
    y: tp.Any,
    variations: tp.Iterable[VariationCurve],
    ladder: LadderConfig | None = None,
    xi: complex | None = None,
) -> list[BracketResult]:
    """
    Bracketed first variations ``[F_y(h)]_eps`` for a finite family of `h`.

    A necessary check only: vanishing for these variations does not certify
    vanishing for every admissible variation.
    """
    config, at = _proportional(F, ladder)
    return [
        bracket(lambda e, h=h: first_variation(at(e), y, h, xi), config)
        for h in variations
    ]
