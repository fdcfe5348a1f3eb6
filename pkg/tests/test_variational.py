import numpy as np
import pytest

import scalevar as sv

from conftest import polynomial

EXAMPLE_1 = "(v1 - B(x))^2 + (xi*x)^2"
EXAMPLE_2 = "(xi*v1 - B(x))^2"


def kink_functional(text, binding, eps=0.1):
    L = sv.Lagrangian.from_text(text, has_param=True, bindings={"B": binding})
    return sv.Functional(L, (-1.0, 1.0), eps)


def test_functional_validation():
    L2 = sv.Lagrangian.from_text("v1*v2", n=2)
    sv.Functional(L2, (0.0, 1.0), (0.1, 0.05))
    with pytest.raises(ValueError, match="scales given"):
        sv.Functional(L2, (0.0, 1.0), 0.1)
    with pytest.raises(ValueError, match="half"):
        sv.Functional(sv.Lagrangian.from_text("v1"), (0.0, 1.0), 0.5)
    with pytest.raises(ValueError, match="order=2"):
        sv.Functional(sv.Lagrangian.from_text("v1"), (0.0, 1.0), 0.1, order=2)
    with pytest.raises(ValueError, match="order="):
        sv.Functional(sv.Lagrangian.from_text("v1"), (0.0, 1.0), 0.1, order=3)


def test_functional_at_other_scales():
    F = sv.Functional(sv.Lagrangian.from_text("v1^2"), (0.0, 1.0), 0.1)
    assert F.at(0.05).eps.eps == (0.05,)
    assert F.eps.eps == (0.1,)


@pytest.mark.parametrize("eps", [0.2, 0.1, 0.05, 0.01])
@pytest.mark.parametrize("xi", [0.0, 1.0, 2.0, -0.5])
def test_example2_closed_form(abs_curve, kink_binding, eps, xi):
    F = kink_functional(EXAMPLE_2, kink_binding, eps)
    value = sv.evaluate_functional(F, abs_curve, xi)
    assert abs(value - 2 * (xi - 1) ** 2 * (1 - eps)) <= 1e-10


def test_example1_is_extremal(abs_curve, kink_binding):
    F = kink_functional(EXAMPLE_1, kink_binding)
    report, param = sv.el_residual_param(F, abs_curve, 0.0, 201)
    assert report.sup_norm <= 1e-12
    assert abs(param.samples[0]) <= 1e-12
    assert report.verdict == "extremal"
    assert param.is_zero
    assert len(report.grid) == 201


def test_example2_parameter_integral_vanishes_only_at_one(abs_curve, kink_binding):
    F = kink_functional(EXAMPLE_2, kink_binding)
    report, param = sv.el_residual_param(F, abs_curve, 1.0, 51)
    assert report.verdict == "extremal"
    assert param.is_zero
    _, param = sv.el_residual_param(F, abs_curve, 2.0, 51)
    assert param.verdict == "nonzero"


@pytest.mark.parametrize("eps", [0.1, 0.01])
def test_solve_param_example2(abs_curve, kink_binding, eps):
    F = kink_functional(EXAMPLE_2, kink_binding, eps)
    assert abs(sv.solve_param(F, abs_curve, 0.0) - 1.0) <= 1e-10


def test_solve_param_failures(abs_curve):
    F = sv.Functional(sv.Lagrangian.from_text("exp(xi)", has_param=True), (-1, 1), 0.1)
    with pytest.raises(sv.NonConvergenceError) as info:
        sv.solve_param(F, abs_curve, 0.0, max_iter=5)
    assert len(info.value.trace) == 5
    assert "trace" in info.value.to_dict()

    flat = F.with_lagrangian(sv.Lagrangian.from_text("xi", has_param=True))
    with pytest.raises(sv.NonConvergenceError, match="undefined"):
        sv.solve_param(flat, abs_curve)

    with pytest.raises(ValueError, match="parameter"):
        sv.solve_param(F.with_lagrangian(sv.Lagrangian.from_text("v1")), abs_curve)


def test_missing_parameter_value(abs_curve, kink_binding):
    F = kink_functional(EXAMPLE_2, kink_binding)
    with pytest.raises(ValueError, match="xi is None"):
        sv.evaluate_functional(F, abs_curve)


def test_residual_closed_form(cubic):
    F = sv.Functional(sv.Lagrangian.from_text("v1^2"), (0.0, 1.0), 0.1)
    report = sv.el_residual(F, cubic, 201)
    np.testing.assert_allclose(report.values, -12 * report.grid + 1.2j, atol=1e-9)
    limits = np.array(report.limits, dtype=complex)
    np.testing.assert_allclose(limits, -12 * report.grid, atol=1e-6)
    for b in report.bracketed:
        assert 0.9 <= b.exponent <= 1.1
    assert report.verdict == "not-extremal"
    assert report.limit_sup == pytest.approx(12 * report.grid[-1], abs=1e-6)


def test_residual_limit_matches_classical_residual():
    y = polynomial(1, -2, 0.5, 1)
    L = sv.Lagrangian.from_text("v1^2 + x*y^2 - y*v1")
    F = sv.Functional(L, (0.0, 2.0), 0.1)
    report = sv.el_residual(F, y, 21)
    classical = sv.classical_el_residual(L, y, report.grid)
    limits = np.array(report.limits, dtype=complex)
    # mixed powers of eps bias the extrapolation slightly
    np.testing.assert_allclose(limits, classical, rtol=1e-3, atol=1e-2)
    assert np.max(np.abs(report.values - classical)) > 0.1


def test_classical_residual_restrictions(abs_curve, kink_binding):
    with pytest.raises(ValueError, match="n=1"):
        sv.classical_el_residual(sv.Lagrangian.from_text("v2", n=2), abs_curve, 0.0)
    L = sv.Lagrangian.from_text(EXAMPLE_1, has_param=True, bindings={"B": kink_binding})
    with pytest.raises(ValueError, match="bindings"):
        sv.classical_el_residual(L, abs_curve, 0.0, 0.0)


def test_higher_order_residual(cubic):
    F = sv.Functional(sv.Lagrangian.from_text("v2^2", n=2), (0.0, 1.0), 0.1, order=2)
    report = sv.el_residual_higher2(F, cubic, grid_n=201)
    assert report.sup_norm <= 1e-8
    assert report.verdict == "extremal"
    quartic = sv.el_residual_higher2(F, polynomial(0, 0, 0, 0, 1), grid_n=201)
    np.testing.assert_allclose(quartic.values, 48.0, atol=1e-6)
    assert quartic.verdict == "not-extremal"


def test_higher_order_needs_derivative(weierstrass):
    F = sv.Functional(sv.Lagrangian.from_text("v2^2", n=2), (0.0, 1.0), 0.1, order=2)
    with pytest.raises(sv.UnsupportedOrderError):
        sv.el_residual_higher2(F, weierstrass, grid_n=5)
    with pytest.raises(ValueError, match="order=1"):
        sv.el_residual(F, weierstrass, grid_n=5)


def test_isoperimetric_multiplier():
    y = polynomial(0, 1, -1)
    Fphi = sv.Functional(sv.Lagrangian.from_text("v1^2"), (0.0, 1.0), 0.1)
    Fpsi = Fphi.with_lagrangian(sv.Lagrangian.from_text("y"))
    res = sv.isoperimetric_multiplier(Fphi, Fpsi, y)
    assert abs(res.lam - 4.0) <= 1e-6
    assert res.k_residual_sup <= 1e-6
    assert res.psi_residual_sup == pytest.approx(1.0)
    assert res.constraint == pytest.approx(sv.evaluate_functional(Fpsi, y))
    assert res.excluded == 0


def test_isoperimetric_degenerate_constraint():
    y = polynomial(0, 1, -1)
    Fphi = sv.Functional(sv.Lagrangian.from_text("v1^2"), (0.0, 1.0), 0.1)
    Fpsi = Fphi.with_lagrangian(sv.Lagrangian.from_text("v1"))
    with pytest.raises(sv.ConditionViolationError):
        sv.isoperimetric_multiplier(Fphi, Fpsi, y)
    with pytest.raises(ValueError, match="share"):
        sv.isoperimetric_multiplier(Fphi, Fpsi.at(0.05), y)


def test_first_variation_is_directional_derivative():
    y = polynomial(0, 0, 1)
    F = sv.Functional(sv.Lagrangian.from_text("v1^2 + y^2"), (0.0, 1.0), 0.1)
    h = sv.make_variation("sine_mode", (0.0, 1.0))
    tau = 1e-3
    # the functional is quadratic in y: the symmetric quotient is exact
    quotient = (
        sv.evaluate_functional(F, y + tau * h) - sv.evaluate_functional(F, y - tau * h)
    ) / (2 * tau)
    assert abs(sv.first_variation(F, y, h) - quotient) <= 1e-8


def test_remainder_is_second_order():
    F = sv.Functional(sv.Lagrangian.from_text("v1^2"), (0.0, 1.0), 0.1)
    y = polynomial(0, 1)
    h = sv.make_variation("sine_mode", (0.0, 1.0))
    base = sv.evaluate_functional(F, y)
    dphi = sv.first_variation(F, y, h)
    taus = (1e-1, 1e-2, 1e-3, 1e-4)
    remainders = [
        abs(sv.evaluate_functional(F, y + t * h) - base - t * dphi) for t in taus
    ]
    slope = np.polyfit(np.log(taus), np.log(remainders), 1)[0]
    assert 1.9 <= slope <= 2.1


def test_first_variation_parameter_direction(abs_curve, kink_binding):
    F = kink_functional(EXAMPLE_2, kink_binding)
    h = sv.make_variation("bump", (-1.0, 1.0))
    base = sv.first_variation(F, abs_curve, h, 2.0)
    with_delta = sv.first_variation(F, abs_curve, h, 2.0, delta=1.0)
    # int d_xi L = 4 (xi - 1)(1 - eps)
    assert with_delta - base == pytest.approx(4 * 0.9, abs=1e-10)


def test_admissibility(weierstrass):
    F = sv.Functional(sv.Lagrangian.from_text("v1^2"), (0.0, 1.0), 0.1)
    h = sv.make_variation("bump", (0.0, 1.0))
    rough = sv.VariationCurve(h.curve, (0.0, 1.0), beta=0.5)
    with pytest.raises(sv.AdmissibilityError) as info:
        sv.first_variation(F, weierstrass, rough)
    assert info.value.required == pytest.approx(np.log(2) / np.log(3))


def test_insufficient_domain(abs_curve):
    F = sv.Functional(sv.Lagrangian.from_text("v1^2"), (-1.0, 1.0), 0.1)
    with pytest.raises(sv.InsufficientDomainError):
        sv.evaluate_functional(F, abs_curve.restrict(-1.0, 1.0))
    with pytest.raises(sv.InsufficientDomainError):
        sv.el_residual(F, abs_curve.restrict(-1.15, 1.15), 5)


def test_variation_spot_check(abs_curve, kink_binding, cubic):
    kinds = ("sine_mode", "bump", "poly_bump")
    family = [sv.make_variation(k, (-1.0, 1.0)) for k in kinds]
    F = kink_functional(EXAMPLE_1, kink_binding)
    results = sv.variation_spot_check(F, abs_curve, family, xi=0.0)
    assert [r.verdict for r in results] == ["zero"] * 3

    G = sv.Functional(sv.Lagrangian.from_text("v1^2"), (0.0, 1.0), 0.1)
    h = sv.make_variation("sine_mode", (0.0, 1.0))
    (result,) = sv.variation_spot_check(G, cubic, [h])
    assert result.verdict == "nonzero"
    assert result.limit == pytest.approx(-12 / np.pi, abs=1e-3)


def test_constraint_value(cubic):
    Fpsi = sv.Functional(sv.Lagrangian.from_text("y"), (0.0, 1.0), 0.1)
    assert sv.constraint_value(Fpsi, cubic) == pytest.approx(0.25)


def test_arg_vector_at_kink(abs_curve):
    F = sv.Functional(sv.Lagrangian.from_text("v1^2"), (-1.0, 1.0), 0.1)
    u = sv.arg_vector(F, abs_curve, 0.0)
    assert float(u.x) == 0.0
    assert float(u.y) == 0.0
    assert complex(u.v[0]) == -1j
    assert u.param is None


def test_arg_vector_second_order(cubic):
    L = sv.Lagrangian.from_text("v2^2", n=2)
    F = sv.Functional(L, (0.0, 2.0), 0.1, order=2)
    u = sv.arg_vector(F, cubic, 1.0)
    assert complex(u.v[0]) == pytest.approx(3.01 - 0.3j)
    assert complex(u.v[1]) == pytest.approx(6.0 - 0.3j)


def test_two_slot_residual_of_line():
    F = sv.Functional(sv.Lagrangian.from_text("v1*v2", n=2), (0.0, 1.0), (0.1, 0.05))
    report = sv.el_residual(F, polynomial(0, 1), 11)
    assert report.sup_norm <= 1e-12
    assert report.verdict == "extremal"


def test_parameter_free_residual_matches_plain_residual(cubic):
    L = sv.Lagrangian.from_text("v1^2 + y", has_param=True)
    F = sv.Functional(L, (0.0, 1.0), 0.1)
    plain = sv.el_residual(F, cubic, 21, xi=0.5)
    report, param = sv.el_residual_param(F, cubic, 0.5, 21)
    np.testing.assert_array_equal(report.values, plain.values)
    assert [b.verdict for b in report.bracketed] == [b.verdict for b in plain.bracketed]
    assert param.is_zero


def test_example1_with_wrong_parameter(abs_curve, kink_binding):
    F = kink_functional(EXAMPLE_1, kink_binding)
    report, param = sv.el_residual_param(F, abs_curve, 1.0, 51)
    assert report.verdict == "extremal"
    assert param.verdict == "nonzero"
    assert param.limit == pytest.approx(4 / 3, abs=1e-10)


def test_solve_param_linear_condition(abs_curve):
    L = sv.Lagrangian.from_text("(xi*x)^2", has_param=True)
    F = sv.Functional(L, (-1.0, 1.0), 0.1)
    assert abs(sv.solve_param(F, abs_curve, 1.0)) <= 1e-12


def test_higher_order_residual_with_parameter(cubic):
    L = sv.Lagrangian.from_text("v2^2 + (xi*x)^2", n=2, has_param=True)
    F = sv.Functional(L, (-1.0, 1.0), 0.1, order=2)
    report, param = sv.el_residual_higher2(F, cubic, 0.0, grid_n=21)
    assert report.verdict == "extremal"
    assert param.is_zero
    report, param = sv.el_residual_higher2(F, cubic, 1.0, grid_n=21)
    assert report.verdict == "extremal"
    assert param.verdict == "nonzero"
    assert param.limit == pytest.approx(4 / 3, abs=1e-10)


@pytest.mark.parametrize("s", [3.0, -0.5])
def test_multiplier_scales_inversely_with_constraint(s):
    y = polynomial(0, 1, -1)
    Fphi = sv.Functional(sv.Lagrangian.from_text("v1^2"), (0.0, 1.0), 0.1)
    base = sv.isoperimetric_multiplier(
        Fphi, Fphi.with_lagrangian(sv.Lagrangian.from_text("y")), y
    )
    scaled = sv.isoperimetric_multiplier(
        Fphi, Fphi.with_lagrangian(sv.Lagrangian.from_text(f"({s})*y")), y
    )
    assert scaled.lam == pytest.approx(base.lam / s, abs=1e-9)
    assert abs(scaled.k_residual_sup - base.k_residual_sup) <= 1e-9


def test_multiplier_of_identical_functionals(cubic):
    F = sv.Functional(sv.Lagrangian.from_text("y"), (0.0, 1.0), 0.1)
    res = sv.isoperimetric_multiplier(F, F, cubic)
    assert res.lam == pytest.approx(1.0, abs=1e-12)
    assert res.k_residual_sup <= 1e-12
