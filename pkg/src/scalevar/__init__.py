from ._core import (
    Interval,
    Epsilon,
    EpsilonVector,
    FunctionHandle,
    as_handle,
)

from .scale import (
    delta_sigma,
    quantum_derivatives,
    box,
    box_conj,
    box_k,
    sigma_correction,
    classical_diff,
    box_handle,
)

from .bracket import (
    LadderConfig,
    BracketResult,
    bracket,
    bracket_array,
)

from .curves import (
    Curve,
    VariationCurve,
    HolderEstimate,
    corpus_curve,
    make_variation,
    min_beta,
    required_beta,
    estimate_holder,
    validate_domain,
)

from ._parser import parse
from ._expr import format_expr

from .lagrangian import (
    Binding,
    CurveBinding,
    ScaleDerivativeBinding,
    ArgVector,
    Lagrangian,
    eval_expr,
    diff_expr,
    partial,
)

from ._quadrature import QuadratureConfig, integrate

from .variational import (
    Functional,
    ResidualReport,
    MultiplierResult,
    arg_vector,
    evaluate_functional,
    first_variation,
    el_residual,
    el_residual_param,
    el_residual_higher2,
    isoperimetric_multiplier,
    constraint_value,
    solve_param,
    classical_el_residual,
    variation_spot_check,
)

from .problem import ProblemSpec, build_problem, parse_problem, load_problem

from .errors import (
    ScaleVarError,
    EvaluationRangeError,
    InsufficientDomainError,
    UnsupportedOrderError,
    ExprSyntaxError,
    UndeclaredVariableError,
    ExprEvaluationError,
    AdmissibilityError,
    ConditionViolationError,
    NonConvergenceError,
    HolderEstimationError,
    ProblemSpecError,
)

from . import constants as constants

from ._version import __version__
