"""Non-linear traces of Choquet and Sugeno type on matrices and on a
step-operator model of type II factors."""

from .choquet import WeightedPNorm, choquet_trace, triangle_ratio, weighted_p_norm
from .errors import (
    ConsistencyError,
    ConvergenceError,
    DomainError,
    HypothesisError,
    InputError,
    NLTraceError,
    SymmetryError,
    UndefinedRatioError,
)
from .fuzzy import MonotoneMeasure, choquet_integral, is_comonotone, sugeno_integral
from .report import Report
from .spectral import hermitian_eigenvalues, singular_values, weyl_check
from .stepops import (
    StepOperator,
    add,
    choquet_spectral,
    choquet_stieltjes,
    lambda_t,
    lorentz_norm,
    max_type_value,
    min_witness,
    partition_approx,
    rearrange,
    sugeno_trace_step,
)
from .sugeno import SugenoTrace, sugeno_extend, sugeno_metric, sugeno_trace
from .weights import (
    ContinuousWeight,
    DiscreteWeight,
    doubling_sup,
    evaluate,
    increments,
    is_concave,
    weight_from_json,
)

__version__ = "0.1.0"
