"""
Problem-spec files: a single JSON document describing curves, a Lagrangian,
the interval, the scales and the numerical settings.

Example::

    {
      "curves": {
        "y": {"kind": "polynomial", "params": {"coefficients": [0, 0, 0, 1]}}
      },
      "lagrangian": {"text": "v1^2", "curve": "y"},
      "interval": [0, 1],
      "eps": [0.1]
    }
"""

import typing as tp
import dataclasses
import json
import logging
import os

import pydantic
from pydantic import BaseModel, ConfigDict, Field

from . import errors
from .bracket import LadderConfig
from .constants import (
    DEFAULT_COUNT,
    DEFAULT_DIVERGENCE_FACTOR,
    DEFAULT_GAUSS_ORDER,
    DEFAULT_GRID_N,
    DEFAULT_HIGHER_ORDER_DIFF_STEP,
    DEFAULT_NOISE_TOL,
    DEFAULT_PANELS,
    DEFAULT_RATIO,
    DEFAULT_SOLVE_TOL,
    DEFAULT_ZERO_TOL,
)
from .curves import (
    Curve,
    VariationCurve,
    corpus_curve,
    make_variation,
    validate_domain,
)
from .lagrangian import Binding, CurveBinding, Lagrangian, ScaleDerivativeBinding
from .variational import Functional
from ._quadrature import QuadratureConfig

logger = logging.getLogger(__name__)


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class CurveSpec(_Model):
    kind: tp.Literal["abs", "polynomial", "sine", "weierstrass", "takagi"]
    params: dict[str, tp.Any] = Field(default_factory=dict)
    domain: tuple[float, float] | None = None


class BindingSpec(_Model):
    kind: tp.Literal["curve", "box"]
    curve: str
    slot: int = Field(1, ge=1)


class VariationSpec(_Model):
    kind: tp.Literal["bump", "sine_mode", "poly_bump"]
    order: tp.Literal[1, 2] = 1
    params: dict[str, tp.Any] = Field(default_factory=dict)


class LagrangianSpec(_Model):
    text: str = Field(min_length=1)
    n: int = Field(1, ge=0)
    has_param: bool = False
    order: tp.Literal[1, 2] = 1
    bindings: dict[str, BindingSpec] = Field(default_factory=dict)
    curve: str | None = None
    xi: float | tuple[float, float] | None = None
    constraint: str | None = None
    variation: VariationSpec | None = None


class LadderSpec(_Model):
    """The first rung is always the largest working scale."""

    ratio: float = Field(DEFAULT_RATIO, gt=0.0, lt=1.0)
    count: int = Field(DEFAULT_COUNT, ge=3)
    zero_tol: float = Field(DEFAULT_ZERO_TOL, ge=0.0)
    divergence_factor: float = Field(DEFAULT_DIVERGENCE_FACTOR, gt=1.0)
    noise_tol: float = Field(DEFAULT_NOISE_TOL, ge=0.0)


class QuadratureSpec(_Model):
    gauss_order: int = Field(DEFAULT_GAUSS_ORDER, ge=2)
    panels: int = Field(DEFAULT_PANELS, ge=1)
    forced_breakpoints: list[float] = Field(default_factory=list)


class TolerancesSpec(_Model):
    residual: float = Field(DEFAULT_ZERO_TOL, ge=0.0)
    param: float = Field(DEFAULT_ZERO_TOL, ge=0.0)
    solve: float = Field(DEFAULT_SOLVE_TOL, gt=0.0)
    grid_n: int = Field(DEFAULT_GRID_N, ge=1)
    diff_step: float = Field(DEFAULT_HIGHER_ORDER_DIFF_STEP, gt=0.0)


class ProblemModel(_Model):
    """Schema of a problem-spec file."""

    curves: dict[str, CurveSpec]
    lagrangian: LagrangianSpec
    interval: tuple[float, float] = (0.0, 1.0)
    eps: list[tp.Annotated[float, Field(gt=0.0, allow_inf_nan=False)]] = Field(
        default_factory=lambda: [0.1], min_length=1
    )
    ladder: LadderSpec = Field(default_factory=LadderSpec)
    quadrature: QuadratureSpec = Field(default_factory=QuadratureSpec)
    tolerances: TolerancesSpec = Field(default_factory=TolerancesSpec)

    @pydantic.field_validator("interval")
    @classmethod
    def _ordered(cls, value: tuple[float, float]) -> tuple[float, float]:
        if not value[0] < value[1]:
            raise ValueError(f"interval={list(value)}, but it must satisfy a < b")
        return value


@dataclasses.dataclass(frozen=True, eq=False)
class ProblemSpec:
    """
    A validated problem with all objects built.

    Attributes
    ----------
    model : ProblemModel
        The validated file content.
    curves : dict of str to :class:`.Curve`
    curve : :class:`.Curve`
        The curve the functional is evaluated at.
    functional : :class:`.Functional`
    constraint : :class:`.Functional` or None
        The constraint functional of isoperimetric problems.
    variation : :class:`.VariationCurve` or None
    xi : complex or None
    ladder : :class:`.LadderConfig`
    """

    model: ProblemModel
    curves: dict[str, Curve]
    curve: Curve
    functional: Functional
    constraint: Functional | None
    variation: VariationCurve | None
    xi: complex | None
    ladder: LadderConfig

    @property
    def tolerances(self) -> TolerancesSpec:
        return self.model.tolerances

    def canonical(self) -> dict[str, tp.Any]:
        """JSON-ready content, used for the report digest."""
        return self.model.model_dump(mode="json")


def _field_path(loc: tuple[tp.Any, ...]) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def _check_references(model: ProblemModel) -> None:
    names = set(model.curves)
    for key, binding in model.lagrangian.bindings.items():
        if binding.curve not in names:
            raise errors.ProblemSpecError(
                f"undefined curve '{binding.curve}'",
                field=f"lagrangian.bindings.{key}.curve",
            )
    curve = model.lagrangian.curve
    if curve is not None and curve not in names:
        msg = f"undefined curve '{curve}'"
        raise errors.ProblemSpecError(msg, field="lagrangian.curve")
    if curve is None and len(names) != 1:
        msg = "must name one of several curves"
        raise errors.ProblemSpecError(msg, field="lagrangian.curve")


def _build_curve(name: str, spec: CurveSpec) -> Curve:
    try:
        curve = corpus_curve(spec.kind, **spec.params)
    except ValueError as exc:
        raise errors.ProblemSpecError(str(exc), field=f"curves.{name}.params") from exc
    if spec.domain is not None:
        curve = curve.restrict(*spec.domain)
    return curve


def _build_binding(spec: BindingSpec, curves: dict[str, Curve]) -> Binding:
    if spec.kind == "box":
        return ScaleDerivativeBinding(curves[spec.curve], spec.slot)
    return CurveBinding(curves[spec.curve])


def build_problem(data: tp.Mapping[str, tp.Any]) -> ProblemSpec:
    """
    Validate a problem spec given as a mapping and build its objects.

    Raises
    ------
    :class:`.ProblemSpecError`
        On schema violations, naming the failing field.
    :class:`.ExprSyntaxError`, :class:`.UndeclaredVariableError`
        If the Lagrangian text does not parse.
    :class:`.InsufficientDomainError`
        If a curve is not defined on the padded interval.
    """
    try:
        model = ProblemModel.model_validate(data)
    except pydantic.ValidationError as exc:
        first = exc.errors()[0]
        field = _field_path(first["loc"])
        raise errors.ProblemSpecError(first["msg"], field=field) from exc
    _check_references(model)

    curves = {name: _build_curve(name, spec) for name, spec in model.curves.items()}
    lag = model.lagrangian
    bindings = {k: _build_binding(b, curves) for k, b in lag.bindings.items()}
    L = Lagrangian.from_text(lag.text, lag.n, lag.has_param, bindings)
    quad = QuadratureConfig(
        model.quadrature.gauss_order,
        model.quadrature.panels,
        tuple(model.quadrature.forced_breakpoints),
    )
    try:
        F = Functional(L, model.interval, model.eps, quad, lag.order)
    except ValueError as exc:
        raise errors.ProblemSpecError(str(exc), field="eps") from exc

    constraint = None
    if lag.constraint is not None:
        g = Lagrangian.from_text(lag.constraint, lag.n, lag.has_param, bindings)
        constraint = F.with_lagrangian(g)

    curve = curves[lag.curve] if lag.curve is not None else next(iter(curves.values()))
    variation = None
    if lag.variation is not None:
        try:
            variation = make_variation(
                lag.variation.kind, model.interval, lag.variation.order,
                **lag.variation.params,
            )
        except ValueError as exc:
            msg, field = str(exc), "lagrangian.variation.params"
            raise errors.ProblemSpecError(msg, field=field) from exc

    xi = None
    if lag.xi is not None:
        xi = complex(*lag.xi) if isinstance(lag.xi, tuple) else complex(lag.xi)

    ladder_spec = model.ladder
    ladder = LadderConfig(
        F.eps.eps_max,
        ladder_spec.ratio,
        ladder_spec.count,
        ladder_spec.zero_tol,
        ladder_spec.divergence_factor,
        ladder_spec.noise_tol,
    )

    # residuals reach two scales beyond the interval
    validate_domain(curve, F.interval, F.eps.eps_max, 2)
    for binding in bindings.values():
        validate_domain(binding, F.interval, F.eps.eps_max, 1 + binding.nesting)

    return ProblemSpec(model, curves, curve, F, constraint, variation, xi, ladder)


def parse_problem(text: str) -> ProblemSpec:
    """
    Parse and build a problem spec from JSON text.

    Raises
    ------
    :class:`.ProblemSpecError`
        With line and column on JSON syntax errors.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        line, column = exc.lineno, exc.colno
        raise errors.ProblemSpecError(exc.msg, line=line, column=column) from exc
    if not isinstance(data, dict):
        raise errors.ProblemSpecError("a problem spec must be a JSON object")
    return build_problem(data)


def load_problem(path: str | os.PathLike) -> ProblemSpec:
    """
    Read, validate and build the problem spec stored at `path`.

    Cross references are resolved and curve domains validated eagerly.

    Examples
    --------
    ::

        >>> spec = sv.load_problem("tests/data/cubic.json")
        >>> spec.functional.L.text
        '(v1^2)'
    """
    with open(path, encoding="utf-8") as file:
        text = file.read()
    logger.info(f"loading problem spec from {os.fspath(path)}")
    return parse_problem(text)
