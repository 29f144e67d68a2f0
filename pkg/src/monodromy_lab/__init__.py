"""monodromy_lab: Hadamard products, numerical analytic continuation, and
local monodromy operators, with a CLI that verifies each closed identity
two-sidedly."""

from .continuation import (
    AnalyticElement,
    BranchTable,
    GermElement,
    RecurrenceRelation,
    StepPolicy,
    build_branch_table,
    continue_germ,
    integrability_check,
    recurrence_detect,
    sigma_k,
)
from .convolution import (
    HadamardProduct,
    PairDecomposition,
    bar_star,
    barstar_monodromy_residual,
    fundamental_formula_residual,
    hadamard_eval_contour,
    hadamard_product_element,
    iterated_formula_residual,
    morphism_residual,
    multi_factor_rhs,
    pair_decomposition,
)
from .germs import (
    CoeffSeries,
    Germ,
    germ_eval,
    hadamard_coeffs,
    load_coeffs,
    radius_estimate,
    recenter,
    save_coeffs,
)
from .harness import ExperimentConfig, Report, emit_report, run_experiment
from .numerics import (
    QuadratureConfig,
    circle_integral,
    complex_gamma,
    segment_integral_singular,
    unit_integral_singular,
)
from .paths import Path
from .zoo import (
    AlgebraicElement,
    AlgebroGeometricElement,
    Hypergeometric2F1,
    PolylogElement,
    PowerBranch,
    SumElement,
    delta_branch,
    elliptic_K_norm,
    euler_2F1,
    fractional_integral,
    hyp2f1,
    hyp2f1_delta,
    modular_delta_closed_form,
    polylog_delta_exact,
    polylog_eval,
    power_sigma_exact,
    vandermonde_recurrence,
)

__version__ = "0.1.0"
