"""
Built-in reference checks run by ``scalevar verify-paper``.

Every check builds its problem from an embedded spec; nothing is read from
disk.
"""

import typing as tp
import dataclasses
import logging

import numpy as np

from . import errors
from .bracket import bracket
from .constants import MACHINE_EPS
from .curves import corpus_curve, estimate_holder, make_variation, min_beta
from .lagrangian import Lagrangian
from .problem import build_problem
from .scale import box, sigma_correction
from .variational import (
    Functional,
    el_residual,
    el_residual_higher2,
    el_residual_param,
    evaluate_functional,
    first_variation,
    isoperimetric_multiplier,
    solve_param,
)

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    details: dict[str, tp.Any] = dataclasses.field(default_factory=dict)


def _kink_spec(text: str, xi: float, eps: float) -> dict[str, tp.Any]:
    return {
        "curves": {"abs": {"kind": "abs"}},
        "lagrangian": {
            "text": text,
            "has_param": True,
            "bindings": {"B": {"kind": "box", "curve": "abs"}},
            "curve": "abs",
            "xi": xi,
        },
        "interval": [-1.0, 1.0],
        "eps": [eps],
    }


EXAMPLE_1: tp.Final = "(v1 - B(x))^2 + (xi*x)^2"
EXAMPLE_2: tp.Final = "(xi*v1 - B(x))^2"


def _polynomial(*coefficients: float):
    return corpus_curve("polynomial", coefficients=list(coefficients))


def check_example2_closed_form() -> Check:
    worst = 0.0
    for eps in (0.2, 0.1, 0.05, 0.01):
        for xi in (0.0, 1.0, 2.0, -0.5):
            spec = build_problem(_kink_spec(EXAMPLE_2, xi, eps))
            value = evaluate_functional(spec.functional, spec.curve, spec.xi)
            worst = max(worst, abs(value - 2.0 * (xi - 1.0) ** 2 * (1.0 - eps)))
    return Check("example2_closed_form", worst <= 1e-10, {"max_error": worst})


def check_example1_extremal() -> Check:
    spec = build_problem(_kink_spec(EXAMPLE_1, 0.0, 0.1))
    report, param = el_residual_param(spec.functional, spec.curve, 0.0, 201)
    param_value = abs(param.samples[0])
    passed = (
        report.sup_norm <= 1e-12
        and param_value <= 1e-12
        and report.verdict == "extremal"
        and param.is_zero
    )
    details = {"residual_sup": report.sup_norm, "param_integral": param_value}
    return Check("example1_extremal", passed, details)


def check_example2_extremal() -> Check:
    spec = build_problem(_kink_spec(EXAMPLE_2, 1.0, 0.1))
    report, param = el_residual_param(spec.functional, spec.curve, 1.0, 201)
    passed = report.verdict == "extremal" and param.is_zero
    details: dict[str, tp.Any] = {"verdict": report.verdict, "param": param.verdict}
    for eps in (0.1, 0.01):
        spec = build_problem(_kink_spec(EXAMPLE_2, 0.0, eps))
        xi = solve_param(spec.functional, spec.curve, 0.0)
        details[f"solved_xi_eps_{eps}"] = xi
        passed = passed and abs(xi - 1.0) <= 1e-10
    return Check("example2_extremal", passed, details)


def check_example2_minimizer() -> Check:
    xis = np.linspace(-1.0, 3.0, 41)
    values = []
    for xi in xis:
        spec = build_problem(_kink_spec(EXAMPLE_2, float(xi), 0.1))
        values.append(evaluate_functional(spec.functional, spec.curve, spec.xi).real)
    best = float(xis[int(np.argmin(values))])
    return Check("example2_minimizer", abs(best - 1.0) <= 1e-12, {"argmin": best})


def check_product_rule() -> Check:
    eps = 0.1
    x = np.linspace(-1.0, 1.0, 101)
    pairs = {
        "x*x": (_polynomial(0, 1), _polynomial(0, 1)),
        "x^2*sin": (_polynomial(0, 0, 1), corpus_curve("sine")),
        "weierstrass*abs": (corpus_curve("weierstrass"), corpus_curve("abs")),
    }
    details = {}
    for name, (f, g) in pairs.items():
        fh, gh = f.handle, g.handle
        lhs = box(fh * gh, x, eps)
        rhs = (
            box(fh, x, eps) * gh(x)
            + fh(x) * box(gh, x, eps)
            + 0.5j * eps * sigma_correction(fh, gh, x, eps)
        )
        details[name] = float(np.max(np.abs(lhs - rhs)))
    return Check("product_rule", max(details.values()) <= 1e-9, details)


def check_kink_value() -> Check:
    absx = corpus_curve("abs")
    errs = {eps: abs(complex(box(absx, 0.0, eps)) + 1j) for eps in (0.3, 0.1, 0.01)}
    passed = max(errs.values()) <= 4.0 * MACHINE_EPS
    return Check("kink_value", passed, {f"eps_{k}": v for k, v in errs.items()})


def check_residual_closed_form() -> Check:
    F = Functional(Lagrangian.from_text("v1^2"), (0.0, 1.0), 0.1)
    report = el_residual(F, _polynomial(0, 0, 0, 1), 201)
    expected = -12.0 * report.grid + 1.2j
    pointwise = float(np.max(np.abs(report.values - expected)))
    limits = np.array([b.limit for b in report.bracketed], dtype=complex)
    limit_error = float(np.max(np.abs(limits + 12.0 * report.grid)))
    exponents = [b.exponent for b in report.bracketed]
    passed = (
        pointwise <= 1e-9
        and limit_error <= 1e-6
        and all(0.9 <= p <= 1.1 for p in exponents)
    )
    details = {
        "pointwise_error": pointwise,
        "limit_error": limit_error,
        "exponent_min": min(exponents),
        "exponent_max": max(exponents),
    }
    return Check("residual_closed_form", passed, details)


def check_higher_order() -> Check:
    L = Lagrangian.from_text("v2^2", n=2)
    F = Functional(L, (0.0, 1.0), 0.1, order=2)
    cubic = el_residual_higher2(F, _polynomial(0, 0, 0, 1), grid_n=201)
    quartic = el_residual_higher2(F, _polynomial(0, 0, 0, 0, 1), grid_n=201)
    assert not isinstance(cubic, tuple) and not isinstance(quartic, tuple)
    quartic_error = float(np.max(np.abs(quartic.values - 48.0)))
    passed = (
        cubic.sup_norm <= 1e-8
        and cubic.verdict == "extremal"
        and quartic_error <= 1e-6
        and quartic.verdict == "not-extremal"
    )
    details = {"cubic_sup": cubic.sup_norm, "quartic_error": quartic_error}
    return Check("higher_order", passed, details)


def check_isoperimetric() -> Check:
    y = _polynomial(0, 1, -1)
    Fphi = Functional(Lagrangian.from_text("v1^2"), (0.0, 1.0), 0.1)
    Fpsi = Fphi.with_lagrangian(Lagrangian.from_text("y"))
    res = isoperimetric_multiplier(Fphi, Fpsi, y)
    passed = abs(res.lam - 4.0) <= 1e-6 and res.k_residual_sup <= 1e-6
    try:
        degenerate = Fphi.with_lagrangian(Lagrangian.from_text("v1"))
        isoperimetric_multiplier(Fphi, degenerate, y)
    except errors.ConditionViolationError:
        degenerate_rejected = True
    else:
        degenerate_rejected = False
    details = {
        "lambda": res.lam,
        "k_residual_sup": res.k_residual_sup,
        "degenerate_rejected": degenerate_rejected,
    }
    return Check("isoperimetric", passed and degenerate_rejected, details)


def check_remainder_order() -> Check:
    F = Functional(Lagrangian.from_text("v1^2"), (0.0, 1.0), 0.1)
    y = _polynomial(0, 1)
    h = make_variation("sine_mode", (0.0, 1.0))
    base = evaluate_functional(F, y)
    dphi = first_variation(F, y, h)
    taus = (1e-1, 1e-2, 1e-3, 1e-4)
    remainders = [
        abs(evaluate_functional(F, y + t * h) - base - t * dphi) for t in taus
    ]
    slope = float(np.polyfit(np.log(taus), np.log(remainders), 1)[0])
    return Check("remainder_order", 1.9 <= slope <= 2.1, {"slope": slope})


def check_beta_condition() -> Check:
    values = {alpha: min_beta(alpha) for alpha in (0.3, 0.5, 0.9)}
    passed = values == {0.3: 0.7, 0.5: 0.5, 0.9: 0.9}
    return Check("beta_condition", passed, {f"alpha_{k}": v for k, v in values.items()})


def check_holder_estimate() -> Check:
    estimate = estimate_holder(corpus_curve("weierstrass"), (0.0, 1.0))
    passed = 0.53 <= estimate.alpha_hat <= 0.73
    return Check("holder_estimate", passed, {"alpha_hat": estimate.alpha_hat})


def check_bracket_operator() -> Check:
    affine = bracket(lambda e: 2.0 - 3.0 * e)
    passed = (
        affine.verdict == "nonzero"
        and affine.limit is not None
        and abs(affine.limit - 2.0) <= 1e-8
        and bracket(lambda e: e**0.3).verdict == "zero"
        and bracket(lambda e: 1.0 / e).verdict == "divergent"
    )
    return Check("bracket_operator", passed, {"affine_limit": affine.limit})


CHECKS: tp.Final[tuple[tp.Callable[[], Check], ...]] = (
    check_example2_closed_form,
    check_example1_extremal,
    check_example2_extremal,
    check_example2_minimizer,
    check_product_rule,
    check_kink_value,
    check_residual_closed_form,
    check_higher_order,
    check_isoperimetric,
    check_remainder_order,
    check_beta_condition,
    check_holder_estimate,
    check_bracket_operator,
)


def run_checks() -> list[Check]:
    """Run all reference checks in a fixed order."""
    rtn = []
    for check in CHECKS:
        result = check()
        level = logging.INFO if result.passed else logging.WARNING
        logger.log(level, f"{result.name}: {'pass' if result.passed else 'FAIL'}")
        rtn.append(result)
    return rtn
