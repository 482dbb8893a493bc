"""Exact Hadamard/ene product calculus with a numerical contour cross-check.

Two independent engines:

* a symbolic one working in an exact constants field and the ring
  K[z^(+-1), log z], which evaluates the closed monodromy formulas for
  product singularities, and
* a numerical one that measures the same monodromies by deforming
  convolution contours and tracking branches, consulting no formula.

See README.md for a tour; the examples live under demos/.
"""

from .coeffs import ConstantSymbol, ExactCoeff, GaussianRational
from .continuation import (
    AnalyticElement,
    Arc,
    ContourSpec,
    Line,
    LogBranchElement,
    OracleReport,
    PolylogElement,
    RationalElement,
    SeriesElement,
    SumElement,
    build_traintrack,
    continue_along,
    crosscheck,
    ene_pincherle_eval,
    monodromy_numeric,
    pincherle_eval,
)
from .logpoly import BiLogPoly, BranchPoint, LogLaurentPoly, integrate_u, lp_eval
from .monodromy import (
    Divisor,
    FunctionSpec,
    GermPart,
    MonodromyResult,
    Singularity,
    divisor_ene,
    ene_monodromy_general,
    ene_monodromy_total,
    ene_symmetry_check,
    hadamard_monodromy_general,
    hadamard_monodromy_total,
    polylog_function_spec,
    polylog_monodromy,
    product_set,
)
from .series import (
    TruncatedSeries,
    ene,
    ene_exp,
    eval_series,
    exp_series,
    hadamard,
    koebe,
    log_series,
    poly_from_roots,
    polylog_series,
)

__version__ = "0.1.0"
