import numpy as np
import pytest

import scalevar as sv
from scalevar._quadrature import nodes_and_weights


def test_polynomials_are_exact():
    value = sv.integrate(lambda x: 5 * x**4 - 3 * x**2 + 1, (0.0, 2.0))
    assert value == pytest.approx(32 - 8 + 2, abs=1e-12)


def test_complex_integrand():
    value = sv.integrate(lambda x: np.exp(1j * x), (0.0, np.pi))
    assert value == pytest.approx(2j, abs=1e-12)


def test_breakpoints_make_kinks_exact():
    value = sv.integrate(np.abs, (-1.0, 3.0), breakpoints=[0.0])
    assert value == pytest.approx(5.0, abs=1e-13)


def test_breakpoints_outside_are_ignored():
    x, _ = nodes_and_weights((0.0, 1.0), sv.QuadratureConfig(), [-1.0, 0.0, 2.0])
    assert np.all((x > 0.0) & (x < 1.0))


def test_panel_count():
    config = sv.QuadratureConfig(gauss_order=4, panels=2)
    x, w = nodes_and_weights((0.0, 1.5), config, [0.5])
    # one panel on [0, 0.5], two on [0.5, 1.5]
    assert len(x) == 4 * 3
    assert w.sum() == pytest.approx(1.5)


def test_forced_breakpoints():
    config = sv.QuadratureConfig(forced_breakpoints=(0.25,))
    value = sv.integrate(lambda x: np.abs(x - 0.25), (0.0, 1.0), config)
    assert value == pytest.approx(0.25**2 / 2 + 0.75**2 / 2, abs=1e-13)


@pytest.mark.parametrize(
    "kwargs, match",
    [({"gauss_order": 1}, "gauss_order="), ({"panels": 0}, "panels=")],
)
def test_invalid_config(kwargs, match):
    with pytest.raises(ValueError, match=match):
        sv.QuadratureConfig(**kwargs)
