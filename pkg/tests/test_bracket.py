import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import scalevar as sv


def test_default_ladder():
    config = sv.LadderConfig()
    np.testing.assert_allclose(config.rungs(), 0.1 * 0.5 ** np.arange(8))
    assert config.starting_at(0.4).rungs()[0] == 0.4


@pytest.mark.parametrize(
    "kwargs, match",
    [
        ({"eps0": 0.0}, "value="),
        ({"ratio": 1.0}, "ratio="),
        ({"count": 2}, "count="),
        ({"zero_tol": -1.0}, "zero_tol="),
        ({"divergence_factor": 1.0}, "divergence_factor="),
        ({"noise_tol": -1.0}, "noise_tol="),
    ],
)
def test_invalid_ladder(kwargs, match):
    with pytest.raises(ValueError, match=match):
        sv.LadderConfig(**kwargs)


def test_affine_sequence():
    res = sv.bracket(lambda e: 2.0 - 3.0 * e)
    assert res.verdict == "nonzero"
    assert abs(res.limit - 2.0) <= 1e-8
    assert res.exponent == pytest.approx(1.0, abs=1e-6)
    assert len(res.samples) == len(res.eps) == 8


def test_slowly_vanishing_sequence():
    res = sv.bracket(lambda e: e**0.3)
    assert res.verdict == "zero"
    assert res.is_zero
    assert res.exponent == pytest.approx(0.3, abs=1e-6)


@pytest.mark.parametrize("c", [1e-4, 1e-6, 1e-7, 1e-9])
def test_small_vanishing_sequence(c):
    res = sv.bracket(lambda e: c * e**0.3)
    assert res.verdict == "zero"
    assert abs(res.limit) < abs(res.samples[-1])


def test_small_linear_decay():
    res = sv.bracket(lambda e: 1e-4 * e)
    assert res.verdict == "zero"
    assert res.exponent == pytest.approx(1.0, abs=1e-6)


def test_verdict_does_not_depend_on_amplitude():
    for c in (1.0, 1e-3, 1e-6):
        assert sv.bracket(lambda e: c * e**0.5).verdict == "zero"
        assert sv.bracket(lambda e: c * (1.0 + e)).verdict == "nonzero"


def test_unbounded_sequence():
    res = sv.bracket(lambda e: 1.0 / e)
    assert res.verdict == "divergent"
    assert res.limit is None
    assert res.diagnostic.startswith("unbounded")


def test_growing_oscillation_is_divergent():
    res = sv.bracket(lambda e: math.cos(math.pi * math.log2(e)) / math.sqrt(e))
    assert res.verdict == "divergent"


def test_non_finite_samples():
    res = sv.bracket(lambda e: math.nan if e < 0.01 else 1.0)
    assert res.verdict == "divergent"
    assert res.diagnostic == "non-finite"


def test_constant_sequence():
    res = sv.bracket(lambda e: 1.5 + 0.5j)
    assert res.verdict == "nonzero"
    assert res.limit == 1.5 + 0.5j
    assert math.isnan(res.exponent)


def test_exact_zero():
    res = sv.bracket(lambda e: 0.0)
    assert res.verdict == "zero"
    assert res.limit == 0


def test_noise_floor_ends_extrapolation():
    # differences below noise_tol carry no information
    res = sv.bracket(lambda e: 1.0 + 1e-9 * math.cos(1e3 / e))
    assert res.verdict == "nonzero"
    assert abs(res.limit - 1.0) <= 1e-8
    assert res.diagnostic.startswith("constant within the noise floor")


@given(
    st.floats(-10.0, 10.0),
    st.floats(1.0, 10.0),
    st.sampled_from([-1.0, 1.0]),
    st.floats(0.5, 2.0),
)
def test_power_law_limit(a0, c, sign, p):
    res = sv.bracket(lambda e: complex(a0 + sign * c * e**p))
    if res.verdict == "divergent":
        pytest.fail(f"power law reported divergent: {res}")
    assert abs(res.limit - a0) <= 1e-6 * (1.0 + abs(a0) + abs(c))


def test_bracket_array_elementwise():
    results = sv.bracket_array(lambda e: np.array([1.0 + e, e, 1.0 / e]))
    assert [r.verdict for r in results] == ["nonzero", "zero", "divergent"]
    assert results[0].limit == pytest.approx(1.0)


def test_to_dict():
    data = sv.bracket(lambda e: 2.0 + e).to_dict()
    assert data["verdict"] == "nonzero"
    assert set(data) >= {"limit", "exponent", "residual", "samples", "eps"}
