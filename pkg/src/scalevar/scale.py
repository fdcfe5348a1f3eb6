"""
Scale derivatives on a fixed scale.

All operators act on a :class:`.FunctionHandle` (or anything carrying one,
such as a :class:`.Curve`) and are vectorized over the abscissa `x`.
"""

import typing as tp

import numpy as np
import numpy.typing as npt

from . import errors
from .constants import DEFAULT_DIFF_STEP
from ._core import (
    Epsilon,
    FunctionHandle,
    Interval,
    Sign,
    as_handle,
    merge_breakpoints,
    normalize_eps,
    normalize_sign,
)


def delta_sigma(
    f: tp.Any, x: npt.ArrayLike, eps: Epsilon | float, sigma: Sign
) -> tp.Any:
    r"""
    One-sided quantum derivative.

    .. math::

        \Delta^\sigma_\epsilon f(x)
            = \sigma \frac{f(x + \sigma\epsilon) - f(x)}{\epsilon}

    For ``sigma="-"`` this is the :math:`\epsilon`-left quantum derivative
    :math:`-(f(x - \epsilon) - f(x)) / \epsilon`.

    Parameters
    ----------
    f : :class:`.FunctionHandle` or :class:`.Curve`
        Function to differentiate.

    x : float or array_like
        Abscissa(e).

    eps : :class:`.Epsilon` or float
        Scale.

    sigma : {``"+"``, ``"-"``, 1, -1}
        Side of the quotient.

    Returns
    -------
    complex or ndarray of complex

    Raises
    ------
    :class:`.EvaluationRangeError`
        If ``x + sigma * eps`` or `x` lies outside of the domain of `f`.

    Examples
    --------
    ::

        >>> absx = sv.corpus_curve("abs")
        >>> complex(sv.delta_sigma(absx, 0.0, 0.1, "+"))
        (1+0j)
        >>> complex(sv.delta_sigma(absx, 0.0, 0.1, "-"))
        (-1+0j)
    """
    handle = as_handle(f)
    e = normalize_eps(eps)
    s = normalize_sign(sigma)
    x_ = np.asarray(x, dtype=float)
    return s * (handle(x_ + s * e) - handle(x_)) / e


def quantum_derivatives(
    f: tp.Any, x: npt.ArrayLike, eps: Epsilon | float
) -> tuple[tp.Any, tp.Any]:
    """
    Right and left quantum derivatives ``(Δ⁺, Δ⁻)`` of `f` at `x`.

    See :func:`delta_sigma`.
    """
    return delta_sigma(f, x, eps, "+"), delta_sigma(f, x, eps, "-")


def box(f: tp.Any, x: npt.ArrayLike, eps: Epsilon | float) -> tp.Any:
    r"""
    Scale derivative of `f` at `x`.

    .. math::

        \Box_\epsilon f(x) = \frac12 (\Delta^+_\epsilon f(x) + \Delta^-_\epsilon f(x))
            - \frac{i}{2} (\Delta^+_\epsilon f(x) - \Delta^-_\epsilon f(x))

    For a function that is differentiable at `x`, the scale derivative tends
    to the classical derivative as `eps` goes to zero. At a symmetric kink
    it picks up an imaginary part.

    Parameters
    ----------
    f : :class:`.FunctionHandle` or :class:`.Curve`
        Function to differentiate. Must be defined on ``[x - eps, x + eps]``.

    x : float or array_like
        Abscissa(e).

    eps : :class:`.Epsilon` or float
        Scale.

    Returns
    -------
    complex or ndarray of complex

    Raises
    ------
    :class:`.EvaluationRangeError`
        If ``[x - eps, x + eps]`` is not inside the domain of `f`.

    See also
    --------
    box_conj
    box_k

    Examples
    --------
    ::

        >>> complex(sv.box(sv.corpus_curve("abs"), 0.0, 0.1))
        -1j
        >>> square = sv.corpus_curve("polynomial", coefficients=[0, 0, 1])
        >>> complex(sv.box(square, 1.0, 0.1)).imag
        -0.1
    """
    plus, minus = quantum_derivatives(f, x, eps)
    return 0.5 * (plus + minus) - 0.5j * (plus - minus)


def box_conj(f: tp.Any, x: npt.ArrayLike, eps: Epsilon | float) -> tp.Any:
    """
    Conjugate scale derivative ⊟ of `f` at `x`.

    Same quotients as :func:`box` with the sign of the imaginary unit
    flipped. For real-valued `f` this is the complex conjugate of
    :func:`box`; for complex-valued handles it is *not* the pointwise
    conjugate.

    Parameters
    ----------
    f : :class:`.FunctionHandle` or :class:`.Curve`
    x : float or array_like
    eps : :class:`.Epsilon` or float

    Returns
    -------
    complex or ndarray of complex
    """
    plus, minus = quantum_derivatives(f, x, eps)
    return 0.5 * (plus + minus) + 0.5j * (plus - minus)


def box_k(f: tp.Any, x: npt.ArrayLike, eps: Epsilon | float, k: int) -> tp.Any:
    """
    k-th scale derivative: :func:`box` applied to the classical derivative
    of order ``k - 1``.

    Parameters
    ----------
    f : :class:`.Curve`
        Curve supplying its derivative of order ``k - 1``, either from its
        analytic derivative stack or from the finite-difference fallback.
        A bare :class:`.FunctionHandle` only supports ``k = 1``.

    x : float or array_like
    eps : :class:`.Epsilon` or float

    k : int
        Order, ``k >= 1``. ``k = 1`` is exactly :func:`box`.

    Raises
    ------
    :class:`.UnsupportedOrderError`
        If the derivative of order ``k - 1`` is not available.

    Examples
    --------
    ::

        >>> cubic = sv.corpus_curve("polynomial", coefficients=[0, 0, 0, 1])
        >>> complex(sv.box_k(cubic, 1.0, 0.1, 2)).real
        6.0
    """
    if int(k) != k or k < 1:
        raise ValueError(f"{k=}, but it must be an integer >= 1")
    if k == 1:
        return box(f, x, eps)
    derivative = getattr(f, "derivative", None)
    if derivative is None:
        raise errors.UnsupportedOrderError(k - 1, 0)
    return box(derivative(k - 1), x, eps)


def sigma_correction(
    p: tp.Any, q: tp.Any, x: npt.ArrayLike, eps: Epsilon | float
) -> tp.Any:
    r"""
    Correction term of the scale product rule.

    .. math::

        \Sigma_\epsilon(p, q) = \Box p \Box q - \boxminus p \Box q
            - \Box p \boxminus q - \boxminus p \boxminus q

    With it the product rule
    ``box(p*q) = box(p)*q + p*box(q) + 1j*eps/2 * sigma_correction(p, q)``
    holds exactly, for real and complex handles alike.

    Parameters
    ----------
    p, q : :class:`.FunctionHandle` or :class:`.Curve`
    x : float or array_like
    eps : :class:`.Epsilon` or float

    Returns
    -------
    complex or ndarray of complex
    """
    bp, bq = box(p, x, eps), box(q, x, eps)
    cp, cq = box_conj(p, x, eps), box_conj(q, x, eps)
    return bp * bq - cp * bq - bp * cq - cp * cq


def classical_diff(
    f: tp.Any, x: npt.ArrayLike, step: float = DEFAULT_DIFF_STEP
) -> tp.Any:
    """
    Central difference ``(f(x + step) - f(x - step)) / (2 * step)``.

    The step is independent of any scale: this is the classical derivative,
    exact for quadratics.

    Parameters
    ----------
    f : :class:`.FunctionHandle` or :class:`.Curve`
    x : float or array_like

    step : float, default 1e-5
        Half width of the stencil.
    """
    if not step > 0.0:
        raise ValueError(f"{step=}, but it must be positive")
    handle = as_handle(f)
    x_ = np.asarray(x, dtype=float)
    return (handle(x_ + step) - handle(x_ - step)) / (2.0 * step)


def box_handle(f: tp.Any, eps: Epsilon | float) -> FunctionHandle:
    """
    The handle ``x ↦ box(f, x, eps)``.

    Its domain is the domain of `f` shrunk by `eps` on both sides, its
    breakpoints are those of `f` shifted by ``0`` and ``±eps``.
    """
    handle = as_handle(f)
    e = normalize_eps(eps)
    lo, hi = handle.domain
    return FunctionHandle(
        lambda x: box(handle, x, e),
        Interval(lo + e, hi - e),
        shifted_breakpoints(handle.breakpoints, (e,)),
    )


def shifted_breakpoints(
    breakpoints: tp.Iterable[float], eps: tp.Iterable[float], depth: int = 1
) -> tuple[float, ...]:
    """
    Breakpoints shifted by every sum of at most `depth` terms ``±eps_k``.

    A scale derivative of a function with a kink at ``p`` has kinks at
    ``p`` and ``p ± eps``; nesting scale derivatives nests the shifts.
    """
    shifts = {0.0}
    steps = [s * e for e in eps for s in (1.0, -1.0)]
    for _ in range(depth):
        shifts |= {a + b for a in shifts for b in steps}
    return merge_breakpoints(p + s for p in breakpoints for s in shifts)
