"""Exact asymptotic power series for sequences defined by difference,
product and ratio relations, with a high-precision verification harness."""

from asyseries.errors import (
    AsySeriesError,
    DegenerateConvergenceError,
    ExpansionOnlyError,
    InsufficientCoefficientsError,
    NormalizationError,
    PrecisionFloorError,
)
from asyseries.rational import (
    bernoulli,
    binomial,
    falling_factorial,
    format_rational,
    parse_rational,
)
from asyseries.series import (
    TruncatedSeries,
    binomial_series,
    evaluate,
    shift_backward,
    shift_forward,
)
from asyseries.recurrences import (
    CoeffStream,
    additive_expansion,
    exp_log_square_series,
    solve,
    solve_difference,
    solve_product,
    solve_ratio,
)
from asyseries.catalog import (
    SequenceSpec,
    beta_integral_spec,
    builtin_specs,
    custom_spec,
    euler_spec,
    napier_spec,
    wallis_spec,
)
from asyseries.numerics import (
    ErrorTable,
    convergence_order,
    error_table,
    estimate,
)

__version__ = "0.1.0"
