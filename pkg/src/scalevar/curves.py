"""
Hölder curves, admissible variations and Hölder-exponent diagnostics.
"""

import typing as tp
import dataclasses
import logging
import math

import numpy as np
import numpy.typing as npt
from numpy.polynomial import Polynomial

from . import errors
from .constants import (
    DEFAULT_DIFF_STEP,
    DEFAULT_TAKAGI_TERMS,
    DEFAULT_WEIERSTRASS_TERMS,
    MAX_FD_ORDER,
)
from ._core import (
    FunctionHandle,
    Interval,
    normalize_interval,
)
from .scale import classical_diff

logger = logging.getLogger(__name__)

CurveKind = tp.Literal["abs", "polynomial", "sine", "weierstrass", "takagi"]
VariationKind = tp.Literal["bump", "sine_mode", "poly_bump"]

# analytic derivative stacks of smooth corpus curves are built this deep
_STACK_DEPTH: tp.Final = 4


@dataclasses.dataclass(frozen=True, eq=False)
class Curve:
    """
    Real-valued Hölder curve.

    Parameters
    ----------
    handle : :class:`.FunctionHandle`
        Values of the curve. Must be real on its domain.

    alpha : float, default 1.0
        Claimed Hölder exponent, in ``(0, 1]``. Metadata only.

    deriv_stack : tuple of :class:`.FunctionHandle`, default ()
        Analytic derivatives, ``deriv_stack[k - 1]`` being of order ``k``.

    smooth : bool, default False
        If True, derivatives beyond `deriv_stack` (up to order 2) may be
        approximated by central differences.

    kind : str, default "custom"
        Label used in reports.
    """

    handle: FunctionHandle
    alpha: float = 1.0
    deriv_stack: tuple[FunctionHandle, ...] = ()
    smooth: bool = False
    kind: str = "custom"

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha={self.alpha}, but it must be within (0, 1]")
        object.__setattr__(self, "deriv_stack", tuple(self.deriv_stack))

    def __call__(self, x: npt.ArrayLike) -> tp.Any:
        return np.real(self.handle(x))[()]

    @property
    def domain(self) -> Interval:
        return self.handle.domain

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return self.handle.breakpoints

    @property
    def order(self) -> int:
        """Order of the analytic derivative stack."""
        return len(self.deriv_stack)

    def derivative(self, order: int) -> FunctionHandle:
        """
        Classical derivative of the given order as a handle.

        Order 0 is the curve itself. Orders up to :attr:`order` come from the
        analytic stack; for smooth curves, up to two more orders (at most
        order 2 in total) are central differences of the highest analytic one.

        Raises
        ------
        :class:`.UnsupportedOrderError`
        """
        if order == 0:
            return self.handle
        if 0 < order <= self.order:
            return self.deriv_stack[order - 1]
        if self.smooth and order <= MAX_FD_ORDER:
            base = self.derivative(order - 1)
            return FunctionHandle(
                lambda x: classical_diff(base, x, DEFAULT_DIFF_STEP),
                base.domain.padded(-DEFAULT_DIFF_STEP),
                base.breakpoints,
            )
        available = max(self.order, MAX_FD_ORDER if self.smooth else 0)
        raise errors.UnsupportedOrderError(order, available)

    def restrict(self, lo: float, hi: float) -> "Curve":
        """Same curve, defined on ``[lo, hi]`` only."""
        return dataclasses.replace(
            self,
            handle=self.handle.restrict(lo, hi),
            deriv_stack=tuple(d.restrict(lo, hi) for d in self.deriv_stack),
        )

    def __add__(self, other) -> "Curve":
        other = getattr(other, "curve", other)
        if isinstance(other, Curve):
            depth = min(self.order, other.order)
            return Curve(
                self.handle + other.handle,
                min(self.alpha, other.alpha),
                tuple(self.deriv_stack[k] + other.deriv_stack[k] for k in range(depth)),
                self.smooth and other.smooth,
                f"{self.kind}+{other.kind}",
            )
        if isinstance(other, (int, float)):
            return dataclasses.replace(self, handle=self.handle + float(other))
        return NotImplemented

    def __radd__(self, other) -> "Curve":
        return self + other

    def __mul__(self, factor) -> "Curve":
        if not isinstance(factor, (int, float)):
            return NotImplemented
        s = float(factor)
        return dataclasses.replace(
            self,
            handle=self.handle * s,
            deriv_stack=tuple(d * s for d in self.deriv_stack),
        )

    def __rmul__(self, factor) -> "Curve":
        return self * factor

    def __neg__(self) -> "Curve":
        return self * -1.0

    def __sub__(self, other) -> "Curve":
        return self + (-getattr(other, "curve", other))


@dataclasses.dataclass(frozen=True, eq=False)
class VariationCurve:
    """
    Admissible variation ``h`` with ``h(a) = h(b) = 0``.

    Parameters
    ----------
    curve : :class:`Curve`
    interval : :class:`.Interval`

    beta : float, default 1.0
        Hölder class of the variation.

    order : {1, 2}, default 1
        Order 2 variations additionally satisfy ``h'(a) = h'(b) = 0``.
    """

    curve: Curve
    interval: Interval
    beta: float = 1.0
    order: int = 1

    def __post_init__(self):
        object.__setattr__(self, "interval", normalize_interval(self.interval))
        if self.order not in (1, 2):
            raise ValueError(f"order={self.order}, but it must be 1 or 2")
        if not self.beta > 0.0:
            raise ValueError(f"beta={self.beta}, but it must be positive")

    @property
    def handle(self) -> FunctionHandle:
        return self.curve.handle

    def __call__(self, x: npt.ArrayLike) -> tp.Any:
        return self.curve(x)

    def __mul__(self, factor) -> "VariationCurve":
        if not isinstance(factor, (int, float)):
            return NotImplemented
        return dataclasses.replace(self, curve=self.curve * factor)

    def __rmul__(self, factor) -> "VariationCurve":
        return self * factor


@dataclasses.dataclass(frozen=True)
class HolderEstimate:
    """
    Result of :func:`estimate_holder`.

    Attributes
    ----------
    alpha_hat : float
        Slope of log max-oscillation against log scale.
    scales : tuple of float
        Probe distances.
    fit_r2 : float
        Coefficient of determination of the log-log fit.
    note : str
        Set if the slope exceeds 1, i.e. the curve looks smooth at the probed
        scales.
    """

    alpha_hat: float
    scales: tuple[float, ...]
    fit_r2: float
    note: str = ""


def _sinpi(s: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """``sin(pi * s)``, exactly zero at integer `s`."""
    s = np.asarray(s, dtype=float)
    n = np.rint(s)
    sign = np.where(np.remainder(n, 2.0) == 0.0, 1.0, -1.0)
    return sign * np.sin(np.pi * (s - n))


def _abs_curve(center: float = 0.0) -> Curve:
    handle = FunctionHandle(lambda x: np.abs(x - center), breakpoints=(center,))
    slope = FunctionHandle(lambda x: np.sign(x - center), breakpoints=(center,))
    return Curve(handle, 1.0, (slope,), smooth=False, kind="abs")


def _polynomial_curve(coefficients: tp.Sequence[float]) -> Curve:
    coefficients = [float(c) for c in coefficients]
    if not coefficients or not all(math.isfinite(c) for c in coefficients):
        raise ValueError(f"{coefficients=}, but they must be finite and nonempty")
    poly = Polynomial(coefficients)
    depth = max(_STACK_DEPTH, poly.degree())
    stack = tuple(FunctionHandle(poly.deriv(k)) for k in range(1, depth + 1))
    return Curve(FunctionHandle(poly), 1.0, stack, smooth=True, kind="polynomial")


def _sine_curve(
    amplitude: float = 1.0, frequency: float = 1.0, phase: float = 0.0
) -> Curve:
    def kth(k: int):
        shift = phase + k * np.pi / 2.0
        scale = amplitude * frequency**k
        return lambda x: scale * np.sin(frequency * x + shift)

    stack = tuple(FunctionHandle(kth(k)) for k in range(1, _STACK_DEPTH + 1))
    return Curve(FunctionHandle(kth(0)), 1.0, stack, smooth=True, kind="sine")


def _weierstrass_curve(
    a: float = 0.5, b: int = 3, terms: int = DEFAULT_WEIERSTRASS_TERMS
) -> Curve:
    if not 0.0 < a < 1.0:
        raise ValueError(f"{a=}, but it must be within (0, 1)")
    if int(b) != b or b < 3 or int(b) % 2 == 0:
        raise ValueError(f"{b=}, but it must be an odd integer >= 3")
    if int(terms) != terms or terms < 0:
        raise ValueError(f"{terms=}, but it must be a nonnegative integer")
    k = np.arange(int(terms) + 1)
    weights = a**k
    freqs = np.pi * float(b) ** k

    def func(x):
        return np.sum(weights * np.cos(freqs * x[..., np.newaxis]), axis=-1)

    alpha = min(1.0, -math.log(a) / math.log(b))
    return Curve(FunctionHandle(func), alpha, kind="weierstrass")


def _takagi_curve(w: float = 0.5, terms: int = DEFAULT_TAKAGI_TERMS) -> Curve:
    if not 0.0 < w < 1.0:
        raise ValueError(f"{w=}, but it must be within (0, 1)")
    if int(terms) != terms or terms < 0:
        raise ValueError(f"{terms=}, but it must be a nonnegative integer")
    k = np.arange(int(terms) + 1)
    weights = w**k
    dilations = 2.0**k

    def func(x):
        t = dilations * x[..., np.newaxis]
        return np.sum(weights * np.abs(t - np.rint(t)), axis=-1)

    # w = 1/2 is the classical Takagi curve, Lipschitz up to a log factor
    alpha = min(1.0, -math.log2(w))
    return Curve(FunctionHandle(func), alpha, kind="takagi")


_CORPUS: tp.Final[dict[str, tp.Callable[..., Curve]]] = {
    "abs": _abs_curve,
    "polynomial": _polynomial_curve,
    "sine": _sine_curve,
    "weierstrass": _weierstrass_curve,
    "takagi": _takagi_curve,
}


def corpus_curve(kind: CurveKind, **params) -> Curve:
    """
    Globally defined curve from the built-in corpus.

    Parameters
    ----------
    kind : {"abs", "polynomial", "sine", "weierstrass", "takagi"}
        ``"abs"``:
            ``|x - center|``. Parameter `center` (default 0). Breakpoint at
            `center`, analytic first derivative away from it.

        ``"polynomial"``:
            ``sum(c_k x**k)``. Parameter `coefficients` (ascending).

        ``"sine"``:
            ``amplitude * sin(frequency * x + phase)``.

        ``"weierstrass"``:
            ``sum_{k=0}^{terms} a**k cos(b**k pi x)`` with ``0 < a < 1`` and
            `b` an odd integer ``>= 3``. Claimed exponent ``-ln a / ln b``.

        ``"takagi"``:
            ``sum_{k=0}^{terms} w**k dist(2**k x, Z)`` with ``0 < w < 1``.

    **params
        Kind-specific parameters, see above.

    Returns
    -------
    :class:`Curve`

    Raises
    ------
    ValueError
        On unknown kinds, unknown parameters or invalid parameter ranges.

    Examples
    --------
    ::

        >>> float(sv.corpus_curve("abs")(-2.0))
        2.0
        >>> cubic = sv.corpus_curve("polynomial", coefficients=[0, 0, 0, 1])
        >>> float(np.real(cubic.derivative(1)(2.0)))
        12.0
    """
    if kind not in _CORPUS:
        raise ValueError(f"{kind=}, but it must be one of {tuple(_CORPUS)}")
    try:
        return _CORPUS[kind](**params)
    except TypeError as exc:
        msg = f"invalid parameters {params} for curve kind '{kind}'"
        raise ValueError(msg) from exc


def _bump_variation(interval: Interval, order: int, amplitude: float = 1.0) -> Curve:
    a, b = interval
    half, mid = (b - a) / 2.0, (a + b) / 2.0

    def inside(x):
        t = (x - mid) / half
        return np.abs(t) < 1.0, t

    def func(x):
        mask, t = inside(x)
        t = np.where(mask, t, 0.0)
        return np.where(mask, amplitude * np.exp(1.0 - 1.0 / (1.0 - t**2)), 0.0)

    def slope(x):
        mask, t = inside(x)
        t = np.where(mask, t, 0.0)
        q = 1.0 - t**2
        values = amplitude * np.exp(1.0 - 1.0 / q) * (-2.0 * t / q**2) / half
        return np.where(mask, values, 0.0)

    stack = (FunctionHandle(slope),)
    return Curve(FunctionHandle(func), 1.0, stack, smooth=True, kind="bump")


def _sine_mode_variation(
    interval: Interval, order: int, k: int = 1, amplitude: float = 1.0
) -> Curve:
    if int(k) != k or k < 1:
        raise ValueError(f"{k=}, but it must be a positive integer")
    a, b = interval
    rate = k / (b - a)

    if order == 1:

        def func(x):
            return amplitude * _sinpi(rate * (x - a))

        def slope(x):
            return amplitude * np.pi * rate * _sinpi(rate * (x - a) + 0.5)

    else:

        def func(x):
            return amplitude * _sinpi(rate * (x - a)) ** 2

        def slope(x):
            return amplitude * np.pi * rate * _sinpi(2.0 * rate * (x - a))

    stack = (FunctionHandle(slope),)
    return Curve(FunctionHandle(func), 1.0, stack, smooth=True, kind="sine_mode")


def _poly_bump_variation(
    interval: Interval, order: int, amplitude: float = 1.0
) -> Curve:
    a, b = interval

    if order == 1:

        def func(x):
            return amplitude * (x - a) * (b - x)

        def slope(x):
            return amplitude * (a + b - 2.0 * x)

    else:

        def func(x):
            return amplitude * (x - a) ** 2 * (b - x) ** 2

        def slope(x):
            return 2.0 * amplitude * (x - a) * (b - x) * (a + b - 2.0 * x)

    stack = (FunctionHandle(slope),)
    return Curve(FunctionHandle(func), 1.0, stack, smooth=True, kind="poly_bump")


_VARIATIONS: tp.Final[dict[str, tp.Callable[..., Curve]]] = {
    "bump": _bump_variation,
    "sine_mode": _sine_mode_variation,
    "poly_bump": _poly_bump_variation,
}


def make_variation(
    kind: VariationKind,
    interval: Interval | tp.Sequence[float],
    order: int = 1,
    **params,
) -> VariationCurve:
    """
    Admissible variation vanishing at both ends of `interval`.

    Parameters
    ----------
    kind : {"bump", "sine_mode", "poly_bump"}
        ``"bump"``:
            ``amplitude * exp(1 - 1 / (1 - t**2))`` with `t` mapping
            `interval` to ``[-1, 1]``; peak value `amplitude` at the midpoint,
            flat at both ends (serves both orders).

        ``"sine_mode"``:
            ``amplitude * sin(k pi (x - a) / (b - a))`` for order 1, its square
            for order 2.

        ``"poly_bump"``:
            ``amplitude * (x - a) * (b - x)`` for order 1,
            ``amplitude * (x - a)**2 * (b - x)**2`` for order 2.

    interval : (float, float)

    order : {1, 2}, default 1
        Order 2 variations have zero first derivative at both ends.

    **params
        Kind-specific parameters (`amplitude`, `k`).

    Returns
    -------
    :class:`VariationCurve`
        Endpoint values are exactly zero.
    """
    interval = normalize_interval(interval)
    if kind not in _VARIATIONS:
        raise ValueError(f"{kind=}, but it must be one of {tuple(_VARIATIONS)}")
    if order not in (1, 2):
        raise ValueError(f"{order=}, but it must be 1 or 2")
    try:
        curve = _VARIATIONS[kind](interval, order, **params)
    except TypeError as exc:
        msg = f"invalid parameters {params} for variation kind '{kind}'"
        raise ValueError(msg) from exc
    return VariationCurve(curve, interval, 1.0, order)


def min_beta(alpha: float) -> float:
    """
    Smallest admissible Hölder class of variations of an ``H^alpha`` curve.

    ``1 - alpha`` for ``alpha < 1/2`` and ``alpha`` for ``alpha >= 1/2``.

    Raises
    ------
    ValueError
        If `alpha` is not within ``(0, 1)``.

    Examples
    --------
    ::

        >>> sv.min_beta(0.3), sv.min_beta(0.5), sv.min_beta(0.9)
        (0.7, 0.5, 0.9)
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"{alpha=}, but it must be within (0, 1)")
    return 1.0 - alpha if alpha < 0.5 else alpha


def required_beta(alpha: float) -> float:
    """:func:`min_beta`, extended to Lipschitz curves (``alpha = 1``)."""
    return 1.0 if alpha >= 1.0 else min_beta(alpha)


def estimate_holder(
    c: Curve,
    interval: Interval | tp.Sequence[float],
    scales: npt.ArrayLike | None = None,
    grid_n: int = 4001,
) -> HolderEstimate:
    """
    Estimate the Hölder exponent of `c` on `interval`.

    For every scale ``d`` the oscillation ``max |c(x + d) - c(x)|`` is taken
    over `grid_n` equispaced points ``x`` of ``[a, b - d]``; the estimate is
    the slope of the log-log regression of oscillation against scale. The
    grid maximum is not the true supremum: the result is an estimate, not a
    certificate.

    Parameters
    ----------
    c : :class:`Curve`

    interval : (float, float)

    scales : array_like, optional
        Positive, strictly decreasing probe distances. Defaults to ten
        geometrically spaced values from 1e-1 to 1e-4.

    grid_n : int, default 4001

    Raises
    ------
    :class:`.HolderEstimationError`
        If fewer than three scales are given or the curve does not oscillate.
    """
    a, b = normalize_interval(interval)
    if scales is None:
        scales = np.geomspace(1e-1, 1e-4, 10)
    d = np.asarray(scales, dtype=float)
    if d.ndim != 1 or len(d) < 3:
        raise errors.HolderEstimationError(
            f"need at least 3 scales to fit an exponent, got {np.size(d)}"
        )
    if np.any(d <= 0.0) or np.any(np.diff(d) >= 0.0):
        raise ValueError(f"{scales=}, but they must be positive and decreasing")
    if d[0] >= b - a:
        raise ValueError(f"largest scale {d[0]} does not fit into [{a}, {b}]")

    oscillation = np.empty_like(d)
    for i, delta in enumerate(d):
        x = np.linspace(a, b - delta, grid_n)
        oscillation[i] = np.max(np.abs(c(x + delta) - c(x)))
    if np.any(oscillation <= 0.0):
        raise errors.HolderEstimationError("curve does not oscillate at every scale")

    log_d, log_osc = np.log(d), np.log(oscillation)
    slope, offset = np.polyfit(log_d, log_osc, 1)
    fitted = slope * log_d + offset
    total = np.sum((log_osc - log_osc.mean()) ** 2)
    r2 = 1.0 - np.sum((log_osc - fitted) ** 2) / total if total > 0.0 else 1.0
    if slope <= 0.0:
        raise errors.HolderEstimationError(f"nonpositive oscillation slope {slope:.3g}")
    note = ""
    if slope > 1.0:
        note = "slope above 1: the curve looks smooth at the probed scales"
        logger.info(note)
    return HolderEstimate(float(slope), tuple(map(float, d)), float(r2), note)


def validate_domain(
    c: tp.Any,
    interval: Interval | tp.Sequence[float],
    eps_max: float,
    nesting: int = 1,
) -> None:
    """
    Check that `c` is defined on ``[a - nesting*eps_max, b + nesting*eps_max]``.

    Nested scale derivatives need the curve on a wider interval than the
    functional's ``[a - eps, b + eps]``: ``nesting`` counts the depth.

    Raises
    ------
    :class:`.InsufficientDomainError`
    """
    required = normalize_interval(interval).padded(nesting * eps_max)
    domain = getattr(c, "domain", None) or getattr(c, "handle").domain
    if not domain.covers(required):
        raise errors.InsufficientDomainError(required, domain)

