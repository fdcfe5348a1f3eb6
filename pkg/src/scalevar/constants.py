import typing as tp
import sys

MACHINE_EPS: tp.Final = sys.float_info.epsilon

# bracket ladder
DEFAULT_EPS0: tp.Final = 0.1
DEFAULT_RATIO: tp.Final = 0.5
DEFAULT_COUNT: tp.Final = 8
DEFAULT_ZERO_TOL: tp.Final = 1e-8
DEFAULT_DIVERGENCE_FACTOR: tp.Final = 10.0
DEFAULT_NOISE_TOL: tp.Final = 1e-5
# differences below ROUNDING_FACTOR * MACHINE_EPS * (1 + max|a|) are rounding
ROUNDING_FACTOR: tp.Final = 64.0
QUIET_FIT_RESIDUAL: tp.Final = 0.05

# classical derivatives
DEFAULT_DIFF_STEP: tp.Final = 1e-5
DEFAULT_HIGHER_ORDER_DIFF_STEP: tp.Final = 1e-3
MAX_FD_ORDER: tp.Final = 2

# quadrature and grids
DEFAULT_GAUSS_ORDER: tp.Final = 16
DEFAULT_PANELS: tp.Final = 8
DEFAULT_GRID_N: tp.Final = 201

# curves
DEFAULT_WEIERSTRASS_TERMS: tp.Final = 25
DEFAULT_TAKAGI_TERMS: tp.Final = 40

# solvers
SECANT_MAX_ITER: tp.Final = 50
DEFAULT_SOLVE_TOL: tp.Final = 1e-12
DEFAULT_CONDITION_TOL: tp.Final = 1e-8

# output
CSV_SIGNIFICANT_DIGITS: tp.Final = 17
