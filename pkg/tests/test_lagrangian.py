import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import scalevar as sv
from scalevar._expr import Add, Const, Div, Func, ImagUnit, Mul, Neg, Pow, Ref, Sub, Var


def test_precedence():
    assert sv.parse("-v1^2") == Neg(Pow(Var("v1"), 2))
    assert sv.parse("x + y*v1") == Add(Var("x"), Mul(Var("y"), Var("v1")))
    assert sv.parse("x - y - v1") == Sub(Sub(Var("x"), Var("y")), Var("v1"))
    assert sv.parse("y^-2") == Pow(Var("y"), -2)
    assert sv.parse("2*i") == Mul(Const(2.0), ImagUnit())


def test_functions_and_references():
    e = sv.parse("exp(-y) + B(x)", references=("B",))
    assert e == Add(Func("exp", Neg(Var("y"))), Ref("B"))


def test_declared_variables():
    sv.parse("v1 + v2 + xi", n=2, has_param=True)
    with pytest.raises(sv.UndeclaredVariableError) as info:
        sv.parse("v1 + v2", n=1)
    assert info.value.name == "v2"
    assert info.value.position == 5
    with pytest.raises(sv.UndeclaredVariableError):
        sv.parse("xi * y")


@pytest.mark.parametrize(
    "text, position",
    [
        ("", 0),
        ("v1 $ 2", 3),
        ("v1^", 3),
        ("v1^1.5", 3),
        ("(v1 + y", 7),
        ("v1 y", 3),
        ("sin x", 4),
        ("1e400", 0),
        ("v1 + 2e999", 5),
    ],
)
def test_syntax_errors(text, position):
    with pytest.raises(sv.ExprSyntaxError) as info:
        sv.parse(text)
    assert info.value.position == position


def test_reference_names_must_not_clash():
    with pytest.raises(ValueError, match="clash"):
        sv.parse("y", references=("v1",))


def test_format_expr():
    assert sv.format_expr(sv.parse("-v1^2 + 2*x")) == "((-(v1^2)) + (2.0 * x))"
    assert sv.format_expr(sv.parse("B(x)*i", references=("B",))) == "(B(x) * i)"


def _trees():
    leaves = st.one_of(
        st.floats(0.0, 1e6, allow_nan=False).map(abs).map(Const),
        st.just(ImagUnit()),
        st.sampled_from(["x", "y", "v1", "v2", "xi"]).map(Var),
    )

    def extend(children):
        binary = st.sampled_from([Add, Sub, Mul, Div])
        return st.one_of(
            st.builds(lambda op, l, r: op(l, r), binary, children, children),
            st.builds(Pow, children, st.integers(-3, 3)),
            st.builds(Neg, children),
            st.builds(Func, st.sampled_from(["sin", "cos", "exp"]), children),
        )

    return st.recursive(leaves, extend, max_leaves=12)


@given(_trees())
def test_format_then_parse_is_identity(e):
    assert sv.parse(sv.format_expr(e), n=2, has_param=True) == e


def test_partials_of_documented_lagrangian():
    L = sv.Lagrangian.from_text("v1^2 + y*v1")
    u = sv.ArgVector(0.0, 2.0, (3.0,))
    assert complex(L.partial(3, u, 0.1)) == 8.0
    assert complex(L.partial(2, u, 0.1)) == 3.0
    assert complex(sv.partial(L, 3, u, 0.1)) == 8.0


@given(
    st.floats(-2.0, 2.0),
    st.floats(-2.0, 2.0),
    st.floats(-2.0, 2.0),
    st.floats(-2.0, 2.0),
)
@settings(max_examples=100)
def test_symbolic_partials_match_differences(x, y, v, xi):
    L = sv.Lagrangian.from_text(
        "sin(y)*v1^2 + exp(x*y) - y/(1 + v1^2) + (xi*v1 - y)^3", has_param=True
    )
    step = 1e-6
    for slot, name in [(2, "y"), (3, "v1"), ("xi", "xi")]:
        values = {"y": y, "v1": v, "xi": xi}

        def at(shift):
            shifted = {**values, name: values[name] + shift}
            u = sv.ArgVector(x, shifted["y"], (shifted["v1"],), shifted["xi"])
            return complex(L.evaluate(u, 0.1))

        numeric = (at(step) - at(-step)) / (2 * step)
        u = sv.ArgVector(x, y, (v,), xi)
        symbolic = complex(L.partial(slot, u, 0.1))
        assert abs(symbolic - numeric) <= 1e-5 * (1.0 + abs(symbolic))


def test_diff_expr_holds_references_fixed(abs_curve):
    L = sv.Lagrangian.from_text("B(x)*y^2", bindings={"B": sv.CurveBinding(abs_curve)})
    u = sv.ArgVector(-2.0, 3.0, (0.0,))
    d = sv.diff_expr(L.body, "y")
    assert complex(sv.eval_expr(d, u, 0.1, L)) == 12.0
    # d/dx sees only the explicit x
    assert sv.diff_expr(L.body, "x") == Const(0.0)


def test_slot_variables():
    L = sv.Lagrangian.from_text("v1*v2*xi", n=2, has_param=True)
    assert L.slot_variable(2) == "y"
    assert L.slot_variable(4) == "v2"
    assert L.slot_variable(5) == "xi"
    assert L.slot_variable("xi") == "xi"
    with pytest.raises(ValueError, match="slot="):
        L.slot_variable(6)
    with pytest.raises(ValueError):
        sv.Lagrangian.from_text("v1").slot_variable("xi")


def test_scale_derivative_binding(kink_binding):
    L = sv.Lagrangian.from_text("B(x)", bindings={"B": kink_binding})
    assert complex(L.evaluate(sv.ArgVector(0.0, 0.0, (0.0,)), 0.1)) == -1j
    assert kink_binding.nesting == 1
    assert L.breakpoints(sv.EpsilonVector(0.1)) == pytest.approx((-0.1, 0.0, 0.1))


def test_binding_slot_out_of_range(abs_curve):
    B = sv.ScaleDerivativeBinding(abs_curve, slot=2)
    L = sv.Lagrangian.from_text("B(x)", bindings={"B": B})
    with pytest.raises(sv.ExprEvaluationError):
        L.evaluate(sv.ArgVector(0.0, 0.0, (0.0,)), 0.1)
    with pytest.raises(ValueError, match="slot="):
        sv.ScaleDerivativeBinding(abs_curve, slot=0)


def test_curve_binding(abs_curve):
    L = sv.Lagrangian.from_text("C(x) * y", bindings={"C": sv.CurveBinding(abs_curve)})
    assert complex(L.evaluate(sv.ArgVector(-2.0, 3.0, (0.0,)), 0.1)) == 6.0
    assert L.bindings["C"].nesting == 0


def test_unbound_reference():
    with pytest.raises(sv.UndeclaredVariableError):
        sv.Lagrangian.from_text("B(x)")


def test_eval_expr_broadcasts():
    u = sv.ArgVector(np.linspace(0.0, 1.0, 5), np.zeros(5), (np.ones(5),))
    value = sv.eval_expr(sv.parse("2"), u, 0.1)
    assert value.shape == (5,)
    np.testing.assert_array_equal(value, 2.0)
    u = sv.ArgVector(0.0, 0.0, (2 - 0.1j,))
    assert complex(sv.eval_expr(sv.parse("v1^2"), u, 0.1)) == pytest.approx(3.99 - 0.4j)


def test_eval_expr_errors():
    L = sv.Lagrangian.from_text("v1")
    with pytest.raises(sv.ExprEvaluationError, match="slot values"):
        L.evaluate(sv.ArgVector(0.0, 0.0, (1.0, 2.0)), 0.1)
    with pytest.raises(sv.ExprEvaluationError, match="division by zero"):
        sv.eval_expr(sv.parse("1/y"), sv.ArgVector(0.0, 0.0, (0.0,)), 0.1)
    with pytest.raises(sv.ExprEvaluationError, match="negative power"):
        sv.eval_expr(sv.parse("y^-1"), sv.ArgVector(0.0, 0.0, (0.0,)), 0.1)
    with pytest.raises(sv.ExprEvaluationError, match="xi"):
        sv.eval_expr(sv.parse("xi", has_param=True), sv.ArgVector(0.0, 0.0), 0.1)


def test_minus_and_scaled():
    L = sv.Lagrangian.from_text("v1^2")
    g = sv.Lagrangian.from_text("y")
    K = L.minus(g, 4.0)
    u = sv.ArgVector(0.0, 2.0, (3.0,))
    assert complex(K.evaluate(u, 0.1)) == 9.0 - 8.0
    assert complex(L.scaled(2.0).evaluate(u, 0.1)) == 18.0
    with pytest.raises(ValueError, match="arities"):
        L.minus(sv.Lagrangian.from_text("v2", n=2))


def test_invalid_arity():
    with pytest.raises(ValueError, match="n="):
        sv.Lagrangian.from_text("y", n=-1)
