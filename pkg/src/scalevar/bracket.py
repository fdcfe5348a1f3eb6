"""
Numerical realization of the bracket operator ``[a(eps)]_eps``.

The limit ``eps -> 0`` is estimated on a geometric ladder of scales
``eps_j = eps0 * ratio**j``. Successive differences of the samples are fitted
with a power law ``c * eps**p``; the limit follows from a one-step
extrapolation of the two finest rungs that still carry information.
"""

import typing as tp
import dataclasses
import logging
import math

import numpy as np
import numpy.typing as npt

from .constants import (
    DEFAULT_COUNT,
    DEFAULT_DIVERGENCE_FACTOR,
    DEFAULT_EPS0,
    DEFAULT_NOISE_TOL,
    DEFAULT_RATIO,
    DEFAULT_ZERO_TOL,
    MACHINE_EPS,
    QUIET_FIT_RESIDUAL,
    ROUNDING_FACTOR,
)
from ._core import normalize_eps

logger = logging.getLogger(__name__)

Verdict = tp.Literal["zero", "nonzero", "divergent"]


@dataclasses.dataclass(frozen=True)
class LadderConfig:
    """
    Geometric ladder of scales used to estimate ``eps -> 0`` limits.

    Parameters
    ----------
    eps0 : float, default 0.1
        Largest rung.

    ratio : float, default 0.5
        Ratio of consecutive rungs, in ``(0, 1)``.

    count : int, default 8
        Number of rungs, at least 3.

    zero_tol : float, default 1e-8
        A limit ``a0`` counts as zero if
        ``|a0| <= zero_tol * (1 + max_j |a_j|)``.

    divergence_factor : float, default 10.0
        Growth of ``|a_j|`` across the ladder beyond which a non-decaying
        sequence is reported as unbounded rather than non-decaying.

    noise_tol : float, default 1e-5
        Successive differences with ``|a_j - a_{j+1}|`` at most
        ``max(noise_tol * max_j |a_j|, zero_tol * (1 + max_j |a_j|))`` are
        below the noise floor (converged, or rounding noise of nested
        difference quotients) and end the extrapolation. Differences under
        the floor that still follow a clean power law are extrapolated all
        the same, so vanishing sequences of any amplitude bracket to zero.
    """

    eps0: float = DEFAULT_EPS0
    ratio: float = DEFAULT_RATIO
    count: int = DEFAULT_COUNT
    zero_tol: float = DEFAULT_ZERO_TOL
    divergence_factor: float = DEFAULT_DIVERGENCE_FACTOR
    noise_tol: float = DEFAULT_NOISE_TOL

    def __post_init__(self):
        object.__setattr__(self, "eps0", normalize_eps(self.eps0))
        if not 0.0 < self.ratio < 1.0:
            raise ValueError(f"ratio={self.ratio}, but it must be within (0, 1)")
        if int(self.count) != self.count or self.count < 3:
            raise ValueError(f"count={self.count}, but it must be an integer >= 3")
        if self.zero_tol < 0.0:
            raise ValueError(f"zero_tol={self.zero_tol}, but it must be nonnegative")
        if not self.divergence_factor > 1.0:
            msg = f"divergence_factor={self.divergence_factor}, but it must be > 1"
            raise ValueError(msg)
        if self.noise_tol < 0.0:
            raise ValueError(f"noise_tol={self.noise_tol}, but it must be nonnegative")

    def rungs(self) -> npt.NDArray[np.float64]:
        """
        The scales ``eps0 * ratio**j`` for ``j = 0, ..., count - 1``.
        """
        return self.eps0 * self.ratio ** np.arange(self.count)

    def starting_at(self, eps0: float) -> "LadderConfig":
        return dataclasses.replace(self, eps0=eps0)


@dataclasses.dataclass(frozen=True)
class BracketResult:
    """
    Estimate of ``[a(eps)]_eps``.

    Attributes
    ----------
    limit : complex or None
        Estimated limit ``a0``; None if the verdict is ``"divergent"``.

    exponent : float
        Fitted decay order ``p`` of ``a(eps) - a0``. NaN if the samples
        do not determine it (constant sequence).

    residual : float
        Root-mean-square misfit of the log-log power-law fit.

    verdict : {"zero", "nonzero", "divergent"}

    samples : tuple of complex
        The sampled values ``a(eps_j)``.

    eps : tuple of float
        The ladder rungs.

    diagnostic : str
        Short human-readable note on how the verdict came about.
    """

    limit: complex | None
    exponent: float
    residual: float
    verdict: Verdict
    samples: tuple[complex, ...] = ()
    eps: tuple[float, ...] = ()
    diagnostic: str = ""

    @property
    def is_zero(self) -> bool:
        return self.verdict == "zero"

    def to_dict(self) -> dict[str, tp.Any]:
        return dataclasses.asdict(self)


def bracket(
    sampler: tp.Callable[[float], complex], config: LadderConfig | None = None
) -> BracketResult:
    """
    Estimate the bracket ``[a(eps)]_eps`` of a scalar sampler.

    Parameters
    ----------
    sampler : callable
        ``sampler(eps)`` returns ``a(eps)`` for a positive scale.

    config : :class:`LadderConfig`, optional
        Ladder and tolerances. Defaults to ``LadderConfig()``.

    Returns
    -------
    :class:`BracketResult`

    Examples
    --------
    ::

        >>> res = sv.bracket(lambda e: 2.0 - 3.0 * e)
        >>> res.verdict, round(res.limit.real, 8), round(res.exponent, 3)
        ('nonzero', 2.0, 1.0)
        >>> sv.bracket(lambda e: e**0.3).verdict
        'zero'
        >>> sv.bracket(lambda e: 1.0 / e).verdict
        'divergent'
    """
    config = config or LadderConfig()
    rungs = config.rungs()
    samples = np.array([complex(sampler(float(e))) for e in rungs], dtype=complex)
    return analyze_samples(rungs, samples, config)


def bracket_array(
    sampler: tp.Callable[[float], npt.ArrayLike], config: LadderConfig | None = None
) -> list[BracketResult]:
    """
    Bracket an array-valued sampler elementwise.

    All entries share the same rungs; the sampler is called once per rung.
    """
    config = config or LadderConfig()
    rungs = config.rungs()
    samples = np.array(
        [np.ravel(np.asarray(sampler(float(e)), dtype=complex)) for e in rungs]
    )
    return [analyze_samples(rungs, column, config) for column in samples.T]


def _leading_run(mask: npt.NDArray[np.bool_]) -> int:
    return len(mask) if mask.all() else int(np.argmin(mask))


def _power_fit(
    eps: npt.NDArray[np.float64], diffs: npt.NDArray[np.complex128]
) -> tuple[float, float]:
    """Exponent and rms misfit of ``|diffs| ~ c * eps**p``."""
    log_eps = np.log(eps)
    log_diffs = np.log(np.abs(diffs))
    exponent, offset = np.polyfit(log_eps, log_diffs, 1)
    fit = exponent * log_eps + offset
    return float(exponent), float(np.sqrt(np.mean((log_diffs - fit) ** 2)))


def _extrapolate(
    eps: npt.NDArray[np.float64],
    a: npt.NDArray[np.complex128],
    diffs: npt.NDArray[np.complex128],
    m: int,
    exponent: float,
) -> complex:
    rp = (eps[m] / eps[m - 1]) ** exponent
    return complex(a[m] - diffs[m - 1] * rp / (1.0 - rp))


def analyze_samples(
    rungs: npt.ArrayLike, samples: npt.ArrayLike, config: LadderConfig
) -> BracketResult:
    """
    Limit estimate from samples on given rungs (largest rung first).
    """
    eps = np.asarray(rungs, dtype=float)
    a = np.asarray(samples, dtype=complex)
    record = {"samples": tuple(complex(v) for v in a), "eps": tuple(map(float, eps))}

    if not np.all(np.isfinite(a)):
        return BracketResult(
            None, math.nan, math.nan, "divergent", diagnostic="non-finite", **record
        )

    peak = float(np.abs(a).max())
    scale = 1.0 + peak
    diffs = a[:-1] - a[1:]
    floor = max(config.noise_tol * peak, config.zero_tol * scale)
    significant = np.abs(diffs) > floor
    m = _leading_run(significant)

    exponent = math.nan
    residual = 0.0
    if m >= 2:
        exponent, residual = _power_fit(eps[:m], diffs[:m])
        if exponent <= 0.0:
            growth = abs(a[m]) / max(abs(a[0]), config.zero_tol * scale)
            kind = "unbounded" if growth > config.divergence_factor else "non-decaying"
            diagnostic = f"{kind}: differences scale with eps**{exponent:.3g}"
            logger.debug("bracket divergent (%s), samples=%s", diagnostic, a)
            return BracketResult(
                None, exponent, residual, "divergent", diagnostic=diagnostic, **record
            )
        limit = _extrapolate(eps, a, diffs, m, exponent)
        diagnostic = f"extrapolated from {m + 1} rungs"
        if m < len(diffs):
            diagnostic += ", noise floor reached"
    else:
        # under the noise floor only a clean power law is trusted
        rounding = ROUNDING_FACTOR * MACHINE_EPS * scale
        quiet = _leading_run(np.abs(diffs) > rounding)
        fitted = None
        if quiet >= 3:
            fitted = _power_fit(eps[:quiet], diffs[:quiet])
        if fitted is not None and fitted[0] > 0.0 and fitted[1] <= QUIET_FIT_RESIDUAL:
            exponent, residual = fitted
            limit = _extrapolate(eps, a, diffs, quiet, exponent)
            diagnostic = f"extrapolated below the noise floor from {quiet + 1} rungs"
        elif m == 1:
            limit = complex(a[1])
            diagnostic = "converged after one rung"
        else:
            k = _leading_run(~significant)
            limit = complex(np.mean(a[: k + 1]))
            diagnostic = f"constant within the noise floor over {k + 1} rungs"

    verdict: Verdict = "zero" if abs(limit) <= config.zero_tol * scale else "nonzero"
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(f"bracket {verdict}: limit={limit!r} ({diagnostic})")
    return BracketResult(
        limit, exponent, residual, verdict, diagnostic=diagnostic, **record
    )
