import typing as tp
import math
import dataclasses

import numpy as np
import numpy.typing as npt

from . import errors

ComplexArray = npt.NDArray[np.complex128]
RealArray = npt.NDArray[np.float64]
Scalar = float | complex
Sign = tp.Literal[1, -1, "+", "-"]


class Interval(tp.NamedTuple):
    """
    Closed interval ``[lo, hi]`` of the real line.

    Parameters
    ----------
    lo, hi : float
        Lower and upper end. Infinite ends are allowed.

    Attributes
    ----------
    a, b :
        Alias for lo/hi, matching the usual ``[a, b]`` of a functional.
    """

    lo: float
    hi: float

    @property
    def a(self) -> float:
        """
        Alias for lo.
        """
        return self.lo

    @property
    def b(self) -> float:
        """
        Alias for hi.
        """
        return self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def padded(self, by: float) -> "Interval":
        """
        Interval widened by `by` on both sides.

        Examples
        --------
        ::

            >>> sv.Interval(-1.0, 1.0).padded(0.2)
            Interval(lo=-1.2, hi=1.2)
        """
        return Interval(self.lo - by, self.hi + by)

    def covers(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))


GLOBAL_DOMAIN: tp.Final = Interval(-math.inf, math.inf)


def normalize_interval(interval: "Interval | tp.Sequence[float]") -> Interval:
    lo, hi = (float(v) for v in interval)
    if not lo < hi:
        raise ValueError(f"{interval=}, but it must satisfy lo < hi")
    return Interval(lo, hi)


@dataclasses.dataclass(frozen=True)
class Epsilon:
    """
    Positive scale parameter.

    Parameters
    ----------
    value : float
        The scale, in the units of the abscissa.
    """

    value: float

    def __post_init__(self):
        value = float(self.value)
        if not (value > 0.0 and math.isfinite(value)):
            raise ValueError(f"{value=}, but it must be positive and finite")
        object.__setattr__(self, "value", value)

    def __float__(self) -> float:
        return self.value

    def check_interval(self, interval: Interval) -> None:
        """
        Raise a ValueError unless ``value < (b - a) / 2``.
        """
        if not self.value < interval.width / 2.0:
            msg = f"eps={self.value!r}, but it must be smaller than half of {interval}"
            raise ValueError(msg)


def normalize_eps(eps: "Epsilon | float") -> float:
    return eps.value if isinstance(eps, Epsilon) else Epsilon(eps).value


@dataclasses.dataclass(frozen=True)
class EpsilonVector:
    """
    Ordered scales ``(eps_1, ..., eps_n)`` of a functional with several
    scale derivatives.

    Parameters
    ----------
    eps : float or sequence of float
        The scales. A single number gives a vector of length one.

    Examples
    --------
    ::

        >>> e = sv.EpsilonVector((0.1, 0.05))
        >>> e.eps_max, e.eps_min
        (0.1, 0.05)
        >>> e.scaled(0.5)
        EpsilonVector(eps=(0.05, 0.025))
    """

    eps: tuple[float, ...]

    def __post_init__(self):
        raw = self.eps
        if isinstance(raw, (int, float, Epsilon)):
            raw = (raw,)
        values = tuple(normalize_eps(e) for e in raw)
        if not values:
            raise ValueError("an EpsilonVector needs at least one entry")
        object.__setattr__(self, "eps", values)

    @property
    def eps_max(self) -> float:
        return max(self.eps)

    @property
    def eps_min(self) -> float:
        return min(self.eps)

    def scaled(self, factor: float) -> "EpsilonVector":
        return EpsilonVector(tuple(e * factor for e in self.eps))

    def __len__(self) -> int:
        return len(self.eps)

    def __iter__(self) -> tp.Iterator[float]:
        return iter(self.eps)

    def __getitem__(self, i: int) -> float:
        return self.eps[i]


def normalize_eps_vector(
    eps: "EpsilonVector | Epsilon | float | tp.Sequence[float]",
) -> EpsilonVector:
    if isinstance(eps, EpsilonVector):
        return eps
    return EpsilonVector(eps)  # type: ignore[arg-type]


def normalize_sign(sigma: Sign) -> int:
    if sigma in (1, "+"):
        return 1
    if sigma in (-1, "-"):
        return -1
    valid_signs = 1, -1, "+", "-"
    raise ValueError(f"{sigma=}, but it must be one of {valid_signs}")


def merge_breakpoints(*groups: tp.Iterable[float]) -> tuple[float, ...]:
    return tuple(sorted({float(p) for group in groups for p in group}))


@dataclasses.dataclass(frozen=True, eq=False)
class FunctionHandle:
    """
    Evaluable map from the real line into the complex numbers.

    Handles are vectorized: calling a handle with an array evaluates it
    elementwise, calling it with a scalar returns a numpy scalar.

    Parameters
    ----------
    func : callable
        ``func(x)`` for an ndarray `x`. May return real or complex values.

    domain : :class:`Interval`, default the whole real line
        Closed interval on which `func` may be evaluated.

    breakpoints : tuple of float, default ()
        Abscissae where the handle is not smooth.

    Raises
    ------
    :class:`.EvaluationRangeError`
        If the handle is called outside of `domain`.
    """

    func: tp.Callable[[RealArray], npt.ArrayLike]
    domain: Interval = GLOBAL_DOMAIN
    breakpoints: tuple[float, ...] = ()

    def __post_init__(self):
        domain = Interval(float(self.domain[0]), float(self.domain[1]))
        object.__setattr__(self, "domain", domain)
        points = merge_breakpoints(self.breakpoints)
        inside = tuple(p for p in points if domain.lo <= p <= domain.hi)
        object.__setattr__(self, "breakpoints", inside)

    def __call__(self, x: npt.ArrayLike) -> tp.Any:
        x_ = np.asarray(x, dtype=float)
        outside = (x_ < self.domain.lo) | (x_ > self.domain.hi)
        if np.any(outside):
            raise errors.EvaluationRangeError(x_[outside].flat[0], self.domain)
        values = np.asarray(self.func(x_), dtype=complex)
        return np.broadcast_to(values, x_.shape)[()]

    @classmethod
    def constant(cls, value: Scalar) -> "FunctionHandle":
        return cls(lambda x: np.full(np.shape(x), value, dtype=complex))

    def restrict(self, lo: float, hi: float) -> "FunctionHandle":
        return FunctionHandle(
            self.func, self.domain.intersect(Interval(lo, hi)), self.breakpoints
        )

    def _combine(self, other, op) -> "FunctionHandle":
        if isinstance(other, FunctionHandle):
            return FunctionHandle(
                lambda x: op(self(x), other(x)),
                self.domain.intersect(other.domain),
                merge_breakpoints(self.breakpoints, other.breakpoints),
            )
        if np.isscalar(other):
            return FunctionHandle(
                lambda x: op(self(x), other), self.domain, self.breakpoints
            )
        return NotImplemented

    def __add__(self, other) -> "FunctionHandle":
        return self._combine(other, np.add)

    def __radd__(self, other) -> "FunctionHandle":
        return self + other

    def __sub__(self, other) -> "FunctionHandle":
        return self._combine(other, np.subtract)

    def __rsub__(self, other) -> "FunctionHandle":
        return (-self) + other

    def __mul__(self, other) -> "FunctionHandle":
        return self._combine(other, np.multiply)

    def __rmul__(self, other) -> "FunctionHandle":
        return self * other

    def __neg__(self) -> "FunctionHandle":
        return FunctionHandle(lambda x: -self(x), self.domain, self.breakpoints)


def as_handle(f: tp.Any) -> FunctionHandle:
    """Accept a handle, anything carrying one (a Curve), or a bare callable."""
    if isinstance(f, FunctionHandle):
        return f
    handle = getattr(f, "handle", None)
    if isinstance(handle, FunctionHandle):
        return handle
    if callable(f):
        return FunctionHandle(f)
    raise TypeError(f"cannot interpret {type(f).__name__} as a FunctionHandle")


def to_jsonable(value: tp.Any) -> tp.Any:
    """
    Convert numpy/complex values into JSON-serializable structures.

    Complex numbers become ``{"re": ..., "im": ...}``, non-finite floats
    become None.
    """
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": to_jsonable(value.real), "im": to_jsonable(value.imag)}
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value
