import pathlib

import numpy as np
import pytest
from hypothesis import settings

import scalevar as sv

DATA_DIR = pathlib.Path(__file__).parent / "data"

settings.register_profile("scalevar", max_examples=50, deadline=None)
settings.load_profile("scalevar")


def polynomial(*coefficients: float) -> sv.Curve:
    return sv.corpus_curve("polynomial", coefficients=list(coefficients))


@pytest.fixture
def data_dir() -> pathlib.Path:
    return DATA_DIR


@pytest.fixture
def abs_curve() -> sv.Curve:
    return sv.corpus_curve("abs")


@pytest.fixture
def cubic() -> sv.Curve:
    return polynomial(0, 0, 0, 1)


@pytest.fixture
def weierstrass() -> sv.Curve:
    return sv.corpus_curve("weierstrass")


@pytest.fixture
def kink_binding(abs_curve) -> sv.ScaleDerivativeBinding:
    return sv.ScaleDerivativeBinding(abs_curve)


@pytest.fixture
def grid() -> np.ndarray:
    return np.linspace(-1.0, 1.0, 101)
